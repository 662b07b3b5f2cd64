//! Residue arithmetic, factorization, and level admissibility.
//!
//! A *level* is a modulus n with n >= 5 and gcd(n, 6) = 1; every counting and
//! enumeration operation in this crate is defined over such levels. Moduli are
//! capped at [`MAX_MODULUS`] so that fourth-power counts evaluated in 128-bit
//! integers can never overflow.

use crate::error::{Error, Result};

/// Hard cap on moduli accepted by [`Modulus::new`]: 2^15.
pub const MAX_MODULUS: u64 = 1 << 15;

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A validated modulus in `1..=MAX_MODULUS`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        if n > MAX_MODULUS {
            return Err(Error::LevelTooLarge { n, cap: MAX_MODULUS });
        }
        Ok(Modulus(n as u32))
    }

    pub fn value(self) -> u64 {
        u64::from(self.0)
    }

    /// True when this modulus is an admissible level: n >= 5 and gcd(n, 6) = 1.
    pub fn is_valid_level(self) -> bool {
        is_valid_level(self.value())
    }

    pub fn factorize(self) -> Vec<PrimePower> {
        factorize(self.value())
    }

    pub fn residue(self, value: i64) -> Residue {
        Residue::new(value, self)
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of Z_n, stored normalized to `0..n`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    /// Build a residue, normalizing any signed representative into `0..n`.
    pub fn new(value: i64, modulus: Modulus) -> Self {
        let n = i64::from(modulus.0);
        let v = value.rem_euclid(n);
        Residue {
            value: v as u32,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        u64::from(self.value)
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value(), self.modulus.value()) == 1
    }

    /// Multiplicative inverse via the extended Euclidean algorithm, if a unit.
    pub fn inverse(self) -> Option<Residue> {
        let n = i64::from(self.modulus.0);
        let (mut r0, mut r1) = (n, i64::from(self.value));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(Residue::new(t0, self.modulus))
    }

    fn check_same_modulus(self, other: Residue) -> Modulus {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli in residue arithmetic: {} vs {}",
            self.modulus, other.modulus
        );
        self.modulus
    }
}

impl std::ops::Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        let m = self.check_same_modulus(rhs);
        let s = (self.value() + rhs.value()) % m.value();
        Residue {
            value: s as u32,
            modulus: m,
        }
    }
}

impl std::ops::Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        let m = self.check_same_modulus(rhs);
        let s = (self.value() + m.value() - rhs.value()) % m.value();
        Residue {
            value: s as u32,
            modulus: m,
        }
    }
}

impl std::ops::Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        let m = self.check_same_modulus(rhs);
        let p = (self.value() * rhs.value()) % m.value();
        Residue {
            value: p as u32,
            modulus: m,
        }
    }
}

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        let v = (self.modulus.value() - self.value()) % self.modulus.value();
        Residue {
            value: v as u32,
            modulus: self.modulus,
        }
    }
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// A prime power p^e with p prime and e >= 1.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PrimePower {
    p: u64,
    e: u32,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if e == 0 || !is_prime(p) {
            return Err(Error::BadPrime { p });
        }
        Ok(PrimePower { p, e })
    }

    pub fn prime(self) -> u64 {
        self.p
    }

    pub fn exponent(self) -> u32 {
        self.e
    }

    pub fn value(self) -> u64 {
        self.p.pow(self.e)
    }
}

impl std::fmt::Display for PrimePower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Factor a positive integer into prime powers, ascending by prime.
///
/// Trial division; the moduli in play are tiny. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<PrimePower> {
    assert!(n >= 1, "factorize requires a positive integer");
    let mut out = Vec::new();
    let mut rest = n;
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            out.push(PrimePower { p, e });
        }
    };
    let mut e = 0;
    while rest.is_multiple_of(2) {
        rest /= 2;
        e += 1;
    }
    push(2, e);
    let mut d = 3;
    while d * d <= rest {
        let mut e = 0;
        while rest.is_multiple_of(d) {
            rest /= d;
            e += 1;
        }
        push(d, e);
        d += 2;
    }
    if rest > 1 {
        push(rest, 1);
    }
    out
}

/// True when n is an admissible level: n >= 5 and gcd(n, 6) = 1.
pub fn is_valid_level(n: u64) -> bool {
    n >= 5 && gcd(n, 6) == 1
}

/// The admissible levels in `lo..=hi`, ascending.
pub fn valid_levels(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&n| is_valid_level(n))
}

/// Solve a system of congruences by the Chinese remainder theorem.
///
/// Each part pairs a residue with the prime power that is its modulus; the
/// primes must be pairwise distinct. Returns the unique residue modulo the
/// product of the parts.
pub fn crt_combine(parts: &[(Residue, PrimePower)]) -> Result<Residue> {
    for (r, pp) in parts {
        assert_eq!(
            r.modulus().value(),
            pp.value(),
            "crt part carries modulus {} but claims prime power {}",
            r.modulus(),
            pp
        );
    }
    for (i, (_, pp)) in parts.iter().enumerate() {
        if parts[i + 1..].iter().any(|(_, q)| q.prime() == pp.prime()) {
            return Err(Error::RepeatedPrime { p: pp.prime() });
        }
    }
    let product = parts
        .iter()
        .try_fold(1u64, |acc, (_, pp)| {
            acc.checked_mul(pp.value()).filter(|&m| m <= MAX_MODULUS)
        })
        .ok_or(Error::LevelTooLarge {
            n: parts.iter().map(|(_, pp)| pp.value()).product(),
            cap: MAX_MODULUS,
        })?;
    let modulus = Modulus::new(product)?;

    // Incremental combination: keep x valid modulo m, fold in one part at a time.
    let mut x = 0i64;
    let mut m = 1i64;
    for (r, pp) in parts {
        let mi = pp.value() as i64;
        let ri = r.value() as i64;
        let m_inv = Residue::new(m, Modulus::new(mi as u64)?)
            .inverse()
            .expect("distinct prime powers are coprime")
            .value() as i64;
        let delta = (ri - x).rem_euclid(mi);
        x += m * ((delta * m_inv).rem_euclid(mi));
        m *= mi;
    }
    Ok(Residue::new(x, modulus))
}
