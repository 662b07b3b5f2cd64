//! Closed-form counts: the size of the Beauville set, its partition into
//! symmetry classes, and the number of orbits under the 72-element symmetry
//! group, all computable without enumeration.
//!
//! Everything here is multiplicative over the prime factorization of the
//! level, so each quantity has a per-prime-power form taking `(p, e)`
//! directly. Those forms accept any admissible prime power up to 2^31, far
//! beyond the range where enumeration is feasible.

use crate::error::{Error, Result};
use crate::modular::{factorize, gcd, is_prime, is_valid_level};

/// Largest prime power `p^e` accepted by the per-prime-power formulas.
pub const MAX_PRIME_POWER: u64 = 1 << 31;

/// The orbit count of a level together with the summands it is assembled
/// from: the total matrix count and the three weighted fixed-point products.
///
/// The identity `theta1 + 4*theta2_prod + 6*theta3_prod + 12*theta4_prod =
/// 72 * theta` always holds, and the left side is always divisible by 72.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct ThetaBreakdown {
    /// The level n.
    pub n: u64,
    /// Number of Beauville matrices modulo n.
    pub theta1: u128,
    /// Fixed-matrix count shared by each of the four order-3 rotation-type
    /// symmetries (the class weighted by 4).
    pub theta2_prod: u128,
    /// Fixed-matrix count shared by each of the six inversion-type
    /// symmetries of order 2 (the class weighted by 6).
    pub theta3_prod: u128,
    /// Fixed-matrix count shared by each of the twelve order-6 symmetries
    /// (the class weighted by 12).
    pub theta4_prod: u128,
    /// Number of orbits of the 72-element symmetry group on the Beauville
    /// set, i.e. the number of isomorphism classes at this level.
    pub theta: u128,
}

impl ThetaBreakdown {
    /// The Burnside numerator `theta1 + 4*theta2 + 6*theta3 + 12*theta4`,
    /// always equal to `72 * theta`.
    pub fn weighted_sum(&self) -> u128 {
        self.theta1 + 4 * self.theta2_prod + 6 * self.theta3_prod + 12 * self.theta4_prod
    }
}

fn pow(p: u128, k: u32) -> u128 {
    p.checked_pow(k).expect("prime power exceeds u128 range")
}

fn check_prime_power(p: u64, e: u32) -> Result<()> {
    if e == 0 || !is_prime(p) || p < 5 {
        return Err(Error::BadPrime { p });
    }
    let value = (p as u128).checked_pow(e);
    match value {
        Some(v) if v <= MAX_PRIME_POWER as u128 => Ok(()),
        _ => Err(Error::LevelTooLarge {
            n: p.saturating_pow(e.min(10)),
            cap: MAX_PRIME_POWER,
        }),
    }
}

/// Number of Beauville matrices modulo `p^e`:
/// `p^(4e-4) * (p-1)(p-2)(p-3)(p-4)`.
pub fn theta1_prime_power(p: u64, e: u32) -> Result<u128> {
    check_prime_power(p, e)?;
    let p = p as u128;
    Ok(pow(p, 4 * e - 4) * (p - 1) * (p - 2) * (p - 3) * (p - 4))
}

/// Matrices modulo `p^e` fixed by any one order-3 rotation-type symmetry:
/// `p^(2e-2) * (p-1)(p-2)` when p = 3k-1, `p^(2e-2) * (p-1)(p-4)` when
/// p = 3k+1.
pub fn theta2(p: u64, e: u32) -> Result<u128> {
    check_prime_power(p, e)?;
    let q = p as u128;
    let scale = pow(q, 2 * e - 2);
    Ok(if p % 3 == 2 {
        scale * (q - 1) * (q - 2)
    } else {
        scale * (q - 1) * (q - 4)
    })
}

/// Matrices modulo `p^e` fixed by any one inversion-type symmetry of order
/// 2: `p^(2e-2) * (p-3)(p-5)`.
pub fn theta3(p: u64, e: u32) -> Result<u128> {
    check_prime_power(p, e)?;
    let q = p as u128;
    Ok(pow(q, 2 * e - 2) * (q - 3) * (q - 5))
}

/// Matrices modulo `p^e` fixed by any one order-6 symmetry: 0 when p = 3k-1
/// (no square root of -1/3 exists), 2 when p = 3k+1.
pub fn theta4(p: u64, e: u32) -> Result<u128> {
    check_prime_power(p, e)?;
    Ok(if p % 3 == 2 { 0 } else { 2 })
}

fn level_factors(n: u64) -> Result<Vec<(u64, u32)>> {
    if !is_valid_level(n) {
        return Err(Error::InvalidLevel {
            n,
            gcd: gcd(n, 6),
        });
    }
    Ok(factorize(n)
        .into_iter()
        .map(|pp| (pp.prime(), pp.exponent()))
        .collect())
}

/// Number of Beauville matrices modulo n, for an admissible level
/// (n >= 5, gcd(n, 6) = 1). Multiplicative over prime powers.
pub fn theta1(n: u64) -> Result<u128> {
    let mut total: u128 = 1;
    for (p, e) in level_factors(n)? {
        total *= theta1_prime_power(p, e)?;
    }
    Ok(total)
}

/// Orbit count and its Burnside summands for an admissible level. The
/// weighted sum is divided by the group order 72; the division is always
/// exact and the function panics if an internal inconsistency breaks that.
pub fn theta(n: u64) -> Result<ThetaBreakdown> {
    let factors = level_factors(n)?;
    let mut t1: u128 = 1;
    let mut t2: u128 = 1;
    let mut t3: u128 = 1;
    let mut t4: u128 = 1;
    for &(p, e) in &factors {
        t1 *= theta1_prime_power(p, e)?;
        t2 *= theta2(p, e)?;
        t3 *= theta3(p, e)?;
        t4 *= theta4(p, e)?;
    }
    let weighted = t1 + 4 * t2 + 6 * t3 + 12 * t4;
    assert_eq!(
        weighted % 72,
        0,
        "Burnside numerator {weighted} for level {n} is not divisible by 72"
    );
    Ok(ThetaBreakdown {
        n,
        theta1: t1,
        theta2_prod: t2,
        theta3_prod: t3,
        theta4_prod: t4,
        theta: weighted / 72,
    })
}

/// Orbit count at a prime power via a single explicit polynomial in p,
/// split on p mod 3:
///
/// * p = 3k-1:  `[p^4e - 10 p^(4e-1) + 35 p^(4e-2) - 50 p^(4e-3)
///   + 24 p^(4e-4) + 10 p^2e - 60 p^(2e-1) + 98 p^(2e-2)] / 72`
/// * p = 3k+1:  `[p^4e - 10 p^(4e-1) + 35 p^(4e-2) - 50 p^(4e-3)
///   + 24 p^(4e-4) + 10 p^2e - 68 p^(2e-1) + 106 p^(2e-2) + 24] / 72`
///
/// Agrees with `theta_breakdown_at_prime_power(p, e).theta` everywhere; the
/// expanded form exists so the two can be checked against each other.
pub fn theta_prime_power(p: u64, e: u32) -> Result<u128> {
    check_prime_power(p, e)?;
    let q = p as i128;
    let pk = |k: u32| q.checked_pow(k).expect("prime power exceeds i128 range");
    let quartic =
        pk(4 * e) - 10 * pk(4 * e - 1) + 35 * pk(4 * e - 2) - 50 * pk(4 * e - 3) + 24 * pk(4 * e - 4);
    let quadratic = if p % 3 == 2 {
        10 * pk(2 * e) - 60 * pk(2 * e - 1) + 98 * pk(2 * e - 2)
    } else {
        10 * pk(2 * e) - 68 * pk(2 * e - 1) + 106 * pk(2 * e - 2) + 24
    };
    let numerator = quartic + quadratic;
    assert!(
        numerator >= 0 && numerator % 72 == 0,
        "orbit-count numerator {numerator} for p = {p}, e = {e} must be a nonnegative multiple of 72"
    );
    Ok((numerator / 72) as u128)
}

/// Full Burnside breakdown at a prime power, assembled from the factored
/// per-class forms rather than the expanded polynomial.
pub fn theta_breakdown_at_prime_power(p: u64, e: u32) -> Result<ThetaBreakdown> {
    check_prime_power(p, e)?;
    let t1 = theta1_prime_power(p, e)?;
    let t2 = theta2(p, e)?;
    let t3 = theta3(p, e)?;
    let t4 = theta4(p, e)?;
    let weighted = t1 + 4 * t2 + 6 * t3 + 12 * t4;
    assert_eq!(
        weighted % 72,
        0,
        "Burnside numerator {weighted} for prime power {p}^{e} is not divisible by 72"
    );
    Ok(ThetaBreakdown {
        n: (p as u128).pow(e) as u64,
        theta1: t1,
        theta2_prod: t2,
        theta3_prod: t3,
        theta4_prod: t4,
        theta: weighted / 72,
    })
}

/// The pair `(72 * theta(n), n^4)`, whose quotient tends to 1 as n grows:
/// orbit counts are asymptotic to n^4 / 72.
pub fn asymptotic_ratio(n: u64) -> Result<(u128, u128)> {
    let breakdown = theta(n)?;
    Ok((72 * breakdown.theta, pow(n as u128, 4)))
}

/// Genus of the degree-n Fermat curve: `(n-1)(n-2)/2`.
pub fn fermat_genus(n: u64) -> u64 {
    assert!(n >= 1, "degree must be positive");
    let n = n as u128;
    ((n - 1) * n.saturating_sub(2) / 2) as u64
}
