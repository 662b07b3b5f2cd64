//! Internal per-level tables and raw `[u32; 4]` matrix kernels.
//!
//! The classifier and the brute-force oracle both sweep millions of matrices;
//! they share this plain-integer path so that the public `Mat2` type stays
//! ergonomic without taxing the hot loops. Entries are always normalized to
//! `0..n`, and matrices pack into a `u64` whose numeric order is exactly the
//! lexicographic order on (a, b, c, d).

use crate::error::{Error, Result};
use crate::modular::{gcd, is_valid_level, Modulus};
use crate::weyl::{Perm3, PERM_MATRICES};

pub(crate) struct LevelTables {
    pub n: u32,
    pub modulus: Modulus,
    /// Scaled reciprocal `floor(2^48 / n)` for division-free reduction.
    magic: u64,
    unit: Vec<bool>,
    /// Ascending list of units in `1..n`.
    pub units: Vec<u32>,
    /// Multiplicative inverse per unit, 0 elsewhere.
    pub inv: Vec<u32>,
    /// Representation matrix per permutation index.
    pub m: [[u32; 4]; 6],
    /// Representation matrix of the inverse permutation, per permutation index.
    pub m_inv: [[u32; 4]; 6],
}

impl LevelTables {
    pub fn new(n: u64) -> Result<LevelTables> {
        if !is_valid_level(n) {
            return Err(Error::InvalidLevel {
                n,
                gcd: gcd(n, 6),
            });
        }
        let modulus = Modulus::new(n)?;
        let n32 = n as u32;
        let mut unit = vec![false; n as usize];
        let mut inv = vec![0u32; n as usize];
        let mut units = Vec::new();
        for v in 1..n32 {
            let r = modulus.residue(i64::from(v));
            if let Some(i) = r.inverse() {
                unit[v as usize] = true;
                inv[v as usize] = i.value() as u32;
                units.push(v);
            }
        }
        let mut m = [[0u32; 4]; 6];
        let mut m_inv = [[0u32; 4]; 6];
        for p in Perm3::all() {
            let i = p.idx();
            m[i] = reduce(PERM_MATRICES[i], n32);
            m_inv[i] = reduce(PERM_MATRICES[p.inverse().idx()], n32);
        }
        Ok(LevelTables {
            n: n32,
            modulus,
            magic: (1u64 << 48) / n,
            unit,
            units,
            inv,
            m,
            m_inv,
        })
    }

    #[inline]
    pub fn is_unit(&self, v: u32) -> bool {
        self.unit[v as usize]
    }

    /// Reduce any `x < 2^31` modulo n by multiply-shift instead of hardware
    /// division. With n < 2^16 the estimated quotient is off by at most one,
    /// fixed by a single conditional subtraction.
    #[inline]
    pub fn rem(&self, x: u32) -> u32 {
        let q = ((u64::from(x) * self.magic) >> 48) as u32;
        let r = x - q * self.n;
        if r >= self.n {
            r - self.n
        } else {
            r
        }
    }
}

fn reduce(entries: [i64; 4], n: u32) -> [u32; 4] {
    entries.map(|e| e.rem_euclid(i64::from(n)) as u32)
}

#[inline]
pub(crate) fn add(x: u32, y: u32, n: u32) -> u32 {
    let s = x + y;
    if s >= n {
        s - n
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(x: u32, y: u32, n: u32) -> u32 {
    if x >= y {
        x - y
    } else {
        x + n - y
    }
}

#[inline]
pub(crate) fn mul(x: u32, y: u32, n: u32) -> u32 {
    ((u64::from(x) * u64::from(y)) % u64::from(n)) as u32
}

#[inline]
pub(crate) fn neg(x: u32, n: u32) -> u32 {
    if x == 0 {
        0
    } else {
        n - x
    }
}

/// Product of two reduced matrices. Entries stay below 2^15, so each output
/// entry's dot product fits a u32 and needs only one reduction.
#[inline]
pub(crate) fn mat_mul(t: &LevelTables, x: &[u32; 4], y: &[u32; 4]) -> [u32; 4] {
    [
        t.rem(x[0] * y[0] + x[1] * y[2]),
        t.rem(x[0] * y[1] + x[1] * y[3]),
        t.rem(x[2] * y[0] + x[3] * y[2]),
        t.rem(x[2] * y[1] + x[3] * y[3]),
    ]
}

#[inline]
pub(crate) fn det_raw(m: &[u32; 4], n: u32) -> u32 {
    sub(mul(m[0], m[3], n), mul(m[1], m[2], n), n)
}

pub(crate) fn inv_raw(t: &LevelTables, m: &[u32; 4]) -> Option<[u32; 4]> {
    let n = t.n;
    let det = det_raw(m, n);
    if !t.is_unit(det) {
        return None;
    }
    let di = t.inv[det as usize];
    Some([
        t.rem(m[3] * di),
        t.rem(neg(m[1], n) * di),
        t.rem(neg(m[2], n) * di),
        t.rem(m[0] * di),
    ])
}

/// Apply the group element with coordinates (tau1, tau2, swap) to a matrix
/// whose inverse has been precomputed.
pub(crate) fn act_raw(
    t: &LevelTables,
    tau1_idx: usize,
    tau2_idx: usize,
    swap: bool,
    m: &[u32; 4],
    m_inverse: &[u32; 4],
) -> [u32; 4] {
    // Permutation index 0 is the identity (its table entry is the identity
    // matrix), so either side of the product can be skipped outright.
    let base = if swap { m_inverse } else { m };
    let left = if tau2_idx == 0 {
        *base
    } else {
        mat_mul(t, &t.m[tau2_idx], base)
    };
    if tau1_idx == 0 {
        left
    } else {
        mat_mul(t, &left, &t.m_inv[tau1_idx])
    }
}

/// Pack a matrix into a u64 preserving lexicographic order on (a, b, c, d).
#[inline]
pub(crate) fn pack(m: &[u32; 4]) -> u64 {
    (u64::from(m[0]) << 48) | (u64::from(m[1]) << 32) | (u64::from(m[2]) << 16) | u64::from(m[3])
}

#[inline]
pub(crate) fn unpack(key: u64) -> [u32; 4] {
    [
        (key >> 48) as u32 & 0xffff,
        (key >> 32) as u32 & 0xffff,
        (key >> 16) as u32 & 0xffff,
        key as u32 & 0xffff,
    ]
}

/// All Beauville matrices with leading entry `a`, ascending in (b, c, d).
///
/// The loop carries the nine unit conditions plus the determinant condition:
/// b and a+b prune the second wheel, c and a-c the third, and the d wheel
/// checks d, c+d, b-d, a+b-c-d, and det(A).
pub(crate) fn matrices_with_leading(t: &LevelTables, a: u32) -> Vec<[u32; 4]> {
    let n = t.n;
    debug_assert!(t.is_unit(a));
    let mut out = Vec::new();
    for &b in &t.units {
        let apb = add(a, b, n);
        if !t.is_unit(apb) {
            continue;
        }
        for &c in &t.units {
            if !t.is_unit(sub(a, c, n)) {
                continue;
            }
            let bc = mul(b, c, n);
            for &d in &t.units {
                let cpd = add(c, d, n);
                if !t.is_unit(cpd)
                    || !t.is_unit(sub(b, d, n))
                    || !t.is_unit(sub(apb, cpd, n))
                    || !t.is_unit(sub(mul(a, d, n), bc, n))
                {
                    continue;
                }
                out.push([a, b, c, d]);
            }
        }
    }
    out
}
