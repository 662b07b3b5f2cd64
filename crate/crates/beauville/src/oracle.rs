//! Slow, definition-level recomputations used to cross-validate the fast
//! paths: literal generation/hyperbolicity/disjointness checks on triples,
//! the freeness reformulation, and a brute-force union-find orbit counter
//! that shares no logic with the Burnside accounting or the closed forms.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::{GeneratorTriple, Mat2};
use crate::modular::{gcd, is_valid_level, Modulus};
use crate::tables::{self, LevelTables};
use crate::weyl::{Perm3, WElement};

/// Largest level accepted by [`naive_orbit_count`]. The brute-force counter
/// materializes the whole Beauville set, so it is deliberately capped.
pub const MAX_ORACLE_LEVEL: u64 = 101;

/// The union of the cyclic subgroups generated by the three entries of a
/// triple — the set of group elements with a fixed point on the associated
/// curve.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaSet {
    modulus: Modulus,
    points: BTreeSet<(u64, u64)>,
}

impl SigmaSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: u64, y: u64) -> bool {
        self.points.contains(&(x, y))
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// True when the two sets share only the zero element.
    pub fn intersection_is_trivial(&self, other: &SigmaSet) -> bool {
        self.points
            .intersection(&other.points)
            .all(|&p| p == (0, 0))
    }
}

/// Compute the fixed-point set of a triple by walking each cyclic subgroup.
pub fn sigma_set(triple: &GeneratorTriple) -> SigmaSet {
    let mut points = BTreeSet::new();
    points.insert((0, 0));
    for v in triple.entries() {
        let mut current = v;
        while !current.is_zero() {
            points.insert((current.x().value(), current.y().value()));
            current = current + v;
        }
    }
    SigmaSet {
        modulus: triple.modulus(),
        points,
    }
}

/// Exact test of `1/o1 + 1/o2 + 1/o3 < 1` by cross-multiplication.
pub fn orders_are_hyperbolic(o1: u64, o2: u64, o3: u64) -> bool {
    assert!(o1 >= 1 && o2 >= 1 && o3 >= 1, "orders must be positive");
    let (a, b, c) = (o1 as u128, o2 as u128, o3 as u128);
    b * c + a * c + a * b < a * b * c
}

/// Whether the triple's entry orders put it in the hyperbolic range.
pub fn triple_is_hyperbolic(triple: &GeneratorTriple) -> bool {
    let [v1, v2, v3] = triple.entries();
    orders_are_hyperbolic(v1.order(), v2.order(), v3.order())
}

/// Whether the triple's entries generate the whole of Z_n x Z_n, decided by
/// literal additive closure from zero.
pub fn triple_generates(triple: &GeneratorTriple) -> bool {
    let n = triple.modulus().value() as usize;
    let generators: Vec<(usize, usize)> = triple
        .entries()
        .iter()
        .map(|v| (v.x().value() as usize, v.y().value() as usize))
        .collect();
    let mut seen = vec![false; n * n];
    seen[0] = true;
    let mut frontier = vec![(0usize, 0usize)];
    let mut count = 1usize;
    while let Some((x, y)) = frontier.pop() {
        for &(gx, gy) in &generators {
            let next = ((x + gx) % n, (y + gy) % n);
            let slot = next.0 * n + next.1;
            if !seen[slot] {
                seen[slot] = true;
                count += 1;
                frontier.push(next);
            }
        }
    }
    count == n * n
}

/// Literal membership test straight from the defining conditions: both
/// triples generate, both are hyperbolic, and their fixed-point sets meet
/// only in zero. Total on `Mat2`; agrees with
/// [`crate::matrix::is_beauville_matrix`] everywhere.
pub fn beauville_condition_check(m: &Mat2) -> bool {
    let pair = m.triples();
    triple_generates(&pair.first)
        && triple_generates(&pair.second)
        && triple_is_hyperbolic(&pair.first)
        && triple_is_hyperbolic(&pair.second)
        && sigma_set(&pair.first).intersection_is_trivial(&sigma_set(&pair.second))
}

/// Freeness reformulation of membership: the image of every nonzero element
/// of the three reference subgroups (the axes and the diagonal) must avoid
/// all three of them. Requires an invertible matrix; the matrix columns are
/// the images of the axis generators.
pub fn free_action_check(m: &Mat2) -> Result<bool> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix {
            det: m.det().value(),
            modulus: m.modulus().value(),
        });
    }
    let n = m.modulus().value();
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    for k in 1..n {
        let k = m.modulus().residue(k as i64);
        for (u, v) in [(a * k, c * k), (b * k, d * k), ((a + b) * k, (c + d) * k)] {
            if u.is_zero() || v.is_zero() || u == v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn symmetry_generators() -> [WElement; 5] {
    [
        WElement::new(Perm3::ROTATION, Perm3::IDENTITY, false),
        WElement::new(Perm3::IDENTITY, Perm3::ROTATION, false),
        WElement::new(Perm3::TRANSPOSITION, Perm3::IDENTITY, false),
        WElement::new(Perm3::IDENTITY, Perm3::TRANSPOSITION, false),
        WElement::new(Perm3::IDENTITY, Perm3::IDENTITY, true),
    ]
}

fn assert_generators_span() {
    let generators = symmetry_generators();
    let mut seen = [false; 72];
    seen[WElement::IDENTITY.index()] = true;
    let mut frontier = vec![WElement::IDENTITY];
    while let Some(w) = frontier.pop() {
        for &g in &generators {
            let next = g * w;
            if !seen[next.index()] {
                seen[next.index()] = true;
                frontier.push(next);
            }
        }
    }
    assert!(
        seen.iter().all(|&s| s),
        "the chosen generators must span the full symmetry group"
    );
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Count orbits by exhaustive union-find over the whole Beauville set,
/// joining each matrix to its image under five group generators. Shares no
/// counting logic with the Burnside or closed-form paths. Single-threaded
/// and capped at [`MAX_ORACLE_LEVEL`].
pub fn naive_orbit_count(n: u64) -> Result<u64> {
    if !is_valid_level(n) {
        return Err(Error::InvalidLevel {
            n,
            gcd: gcd(n, 6),
        });
    }
    if n > MAX_ORACLE_LEVEL {
        return Err(Error::BudgetExceeded {
            n,
            budget: MAX_ORACLE_LEVEL,
        });
    }
    assert_generators_span();

    let t = LevelTables::new(n)?;
    let mut keys: Vec<u64> = Vec::new();
    for &a in &t.units {
        for m in tables::matrices_with_leading(&t, a) {
            keys.push(tables::pack(&m));
        }
    }
    debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));

    // Index the sorted keys by their leading (a, b) pair so each lookup
    // searches one short, cache-resident slice instead of the whole list.
    let side = t.n as usize;
    let bucket_of = |key: u64| {
        let a = (key >> 48) as usize;
        let b = (key >> 32) as usize & 0xffff;
        a * side + b
    };
    let mut bucket_start = vec![0u32; side * side + 1];
    for &key in &keys {
        bucket_start[bucket_of(key) + 1] += 1;
    }
    for i in 0..side * side {
        bucket_start[i + 1] += bucket_start[i];
    }
    let locate = |key: u64| -> usize {
        let bucket = bucket_of(key);
        let lo = bucket_start[bucket] as usize;
        let hi = bucket_start[bucket + 1] as usize;
        lo + keys[lo..hi]
            .binary_search(&key)
            .expect("the symmetry action must preserve the Beauville set")
    };

    let generator_coords: Vec<(usize, usize, bool)> = symmetry_generators()
        .iter()
        .map(|g| (g.tau1.idx(), g.tau2.idx(), g.swap))
        .collect();

    let mut parent: Vec<u32> = (0..keys.len() as u32).collect();
    for (i, &key) in keys.iter().enumerate() {
        let m = tables::unpack(key);
        let inv = tables::inv_raw(&t, &m).expect("Beauville matrices are invertible");
        let mut root = find(&mut parent, i as u32);
        for &(i1, i2, swap) in &generator_coords {
            let image = tables::act_raw(&t, i1, i2, swap, &m, &inv);
            let j = locate(tables::pack(&image));
            let other = find(&mut parent, j as u32);
            if root != other {
                let (lo, hi) = (root.min(other), root.max(other));
                parent[hi as usize] = lo;
                root = lo;
            }
        }
    }
    let count = (0..parent.len() as u32)
        .filter(|&i| find(&mut parent, i) == i)
        .count() as u64;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{is_beauville_matrix, triples_of, Vec2};

    fn mat(n: u64, entries: [i64; 4]) -> Mat2 {
        Mat2::from_integers(Modulus::new(n).unwrap(), entries)
    }

    #[test]
    fn sigma_set_sizes() {
        // A generating triple contributes three order-n subgroups meeting
        // only in zero: 3(n-1) + 1 points.
        let pair = triples_of(&mat(5, [1, 3, 2, 4]));
        assert_eq!(sigma_set(&pair.first).len(), 13);
        assert_eq!(sigma_set(&pair.second).len(), 13);

        // A degenerate triple confined to the x-axis covers only that axis.
        let m = Modulus::new(5).unwrap();
        let axis = GeneratorTriple::new(
            Vec2::from_integers(m, 1, 0),
            Vec2::from_integers(m, 4, 0),
            Vec2::from_integers(m, 0, 0),
        );
        assert_eq!(sigma_set(&axis).len(), 5);
        assert!(sigma_set(&axis).contains(3, 0));
        assert!(!sigma_set(&axis).contains(0, 1));
    }

    #[test]
    fn hyperbolicity_cases() {
        assert!(!orders_are_hyperbolic(2, 3, 6));
        assert!(!orders_are_hyperbolic(2, 2, 2));
        assert!(!orders_are_hyperbolic(3, 3, 3));
        assert!(orders_are_hyperbolic(2, 3, 7));
        assert!(orders_are_hyperbolic(5, 5, 5));
    }

    #[test]
    fn condition_check_examples() {
        assert!(beauville_condition_check(&mat(5, [1, 3, 2, 4])));
        assert!(beauville_condition_check(&mat(5, [1, 2, 3, 4])));
        // The identity's second triple coincides with the first.
        assert!(!beauville_condition_check(&mat(5, [1, 0, 0, 1])));
        // Singular: second triple cannot generate.
        assert!(!beauville_condition_check(&mat(5, [1, 1, 2, 2])));
    }

    #[test]
    fn free_action_examples() {
        assert_eq!(free_action_check(&mat(5, [1, 3, 2, 4])), Ok(true));
        assert_eq!(free_action_check(&mat(5, [1, 0, 0, 1])), Ok(false));
        assert_eq!(
            free_action_check(&mat(5, [1, 2, 2, 4])),
            Err(Error::SingularMatrix { det: 0, modulus: 5 })
        );
    }

    #[test]
    fn membership_oracles_agree_on_all_invertible_matrices() {
        for n in [5u64, 7] {
            let modulus = Modulus::new(n).unwrap();
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    for c in 0..n as i64 {
                        for d in 0..n as i64 {
                            let m = Mat2::from_integers(modulus, [a, b, c, d]);
                            let literal = beauville_condition_check(&m);
                            if m.is_invertible() {
                                let fast = is_beauville_matrix(&m);
                                let free = free_action_check(&m).unwrap();
                                assert_eq!(fast, literal, "{m}");
                                assert_eq!(fast, free, "{m}");
                            } else {
                                assert!(!literal, "{m}");
                                assert!(!is_beauville_matrix(&m), "{m}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn naive_counts() {
        assert_eq!(naive_orbit_count(5).unwrap(), 1);
        assert_eq!(naive_orbit_count(7).unwrap(), 7);
        assert_eq!(naive_orbit_count(35).unwrap(), 132);
    }

    #[test]
    fn naive_count_rejections() {
        assert_eq!(
            naive_orbit_count(9),
            Err(Error::InvalidLevel { n: 9, gcd: 3 })
        );
        assert_eq!(
            naive_orbit_count(103),
            Err(Error::BudgetExceeded { n: 103, budget: 101 })
        );
        assert!(naive_orbit_count(1).is_err());
    }
}
