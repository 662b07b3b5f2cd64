//! Classification of the Beauville set into orbits of the 72-element
//! symmetry group: canonical representatives, orbit sizes, stabilizer
//! subgroups, and Burnside accounting, all from one enumeration sweep.
//!
//! The sweep never stores the full Beauville set. Matrices are generated in
//! lexicographic order, sharded by leading entry; each matrix is compared
//! against its own 72 images, and an orbit is recorded exactly when the
//! matrix is the lexicographic minimum of its orbit. Shard results are
//! merged in leading-entry order, so the output is deterministic and the
//! representative list is globally sorted regardless of thread count.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::BeauvilleMatrix;
use crate::tables::{self, LevelTables};
use crate::weyl::{self, act, ConjClassId, WElement, CLASS_SIZES};

/// Isomorphism type of an orbit stabilizer. Only the cyclic groups of order
/// 1, 2, 3, 6 and the symmetric group on three points can occur.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StabilizerType {
    Trivial,
    Z2,
    Z3,
    Z6,
    S3,
}

impl StabilizerType {
    pub fn all() -> [StabilizerType; 5] {
        [
            StabilizerType::Trivial,
            StabilizerType::Z2,
            StabilizerType::Z3,
            StabilizerType::Z6,
            StabilizerType::S3,
        ]
    }

    pub fn label(self) -> &'static str {
        match self {
            StabilizerType::Trivial => "TRIVIAL",
            StabilizerType::Z2 => "Z2",
            StabilizerType::Z3 => "Z3",
            StabilizerType::Z6 => "Z6",
            StabilizerType::S3 => "S3",
        }
    }

    pub fn order(self) -> u32 {
        match self {
            StabilizerType::Trivial => 1,
            StabilizerType::Z2 => 2,
            StabilizerType::Z3 => 3,
            StabilizerType::Z6 | StabilizerType::S3 => 6,
        }
    }
}

impl std::fmt::Display for StabilizerType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One orbit of the symmetry group on the Beauville set.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct OrbitClass {
    /// Lexicographically smallest matrix in the orbit.
    pub representative: BeauvilleMatrix,
    /// Number of matrices in the orbit; always 72 / |stabilizer|.
    pub orbit_size: u32,
    /// Isomorphism type of the stabilizer of the representative.
    pub stabilizer: StabilizerType,
}

/// Complete classification of a level: every orbit, the per-class
/// fixed-matrix counts, and the totals they must reconcile to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationReport {
    /// The level n.
    pub n: u64,
    /// Number of Beauville matrices modulo n.
    pub total_matrices: u64,
    /// All orbits, sorted by representative.
    pub orbit_classes: Vec<OrbitClass>,
    /// For each of the nine conjugacy classes of the symmetry group, the
    /// number of matrices fixed by any one element of that class.
    pub burnside_breakdown: [u64; 9],
    /// Number of orbits; equals the Burnside average and the length of
    /// `orbit_classes`.
    pub theta: u64,
}

impl ClassificationReport {
    /// How many orbits carry each stabilizer type.
    pub fn stabilizer_histogram(&self) -> BTreeMap<StabilizerType, u64> {
        let mut histogram = BTreeMap::new();
        for class in &self.orbit_classes {
            *histogram.entry(class.stabilizer).or_insert(0) += 1;
        }
        histogram
    }
}

fn classify_stabilizer(members: &[WElement]) -> StabilizerType {
    match members.len() {
        1 => StabilizerType::Trivial,
        2 => StabilizerType::Z2,
        3 => StabilizerType::Z3,
        6 => {
            let commutative = members
                .iter()
                .all(|&x| members.iter().all(|&y| x * y == y * x));
            if commutative {
                StabilizerType::Z6
            } else {
                StabilizerType::S3
            }
        }
        k => panic!("stabilizer order {k} cannot occur at an admissible level"),
    }
}

fn stabilizer_type_from_mask(mask: u128) -> StabilizerType {
    let members: Vec<WElement> = (0..72)
        .filter(|&i| mask >> i & 1 == 1)
        .map(WElement::from_index)
        .collect();
    classify_stabilizer(&members)
}

struct RawClass {
    key: u64,
    orbit_size: u32,
    stab: u128,
}

struct Shard {
    count: u64,
    fix: [u64; 9],
    classes: Vec<RawClass>,
}

fn classify_shard(t: &LevelTables, a: u32) -> Shard {
    let mats = tables::matrices_with_leading(t, a);
    let mut shard = Shard {
        count: mats.len() as u64,
        fix: [0; 9],
        classes: Vec::new(),
    };
    for m in &mats {
        let inv = tables::inv_raw(t, m).expect("Beauville matrices are invertible");
        let mut left = [[[0u32; 4]; 6]; 2];
        for (t2, m_t2) in t.m.iter().enumerate() {
            left[0][t2] = tables::mat_mul(t, m_t2, m);
            left[1][t2] = tables::mat_mul(t, m_t2, &inv);
        }
        let self_key = tables::pack(m);
        let mut min_key = u64::MAX;
        let mut stab = 0u128;
        for t1 in 0..6 {
            for t2 in 0..6 {
                for (swap, lefts) in left.iter().enumerate() {
                    let image = tables::mat_mul(t, &lefts[t2], &t.m_inv[t1]);
                    let key = tables::pack(&image);
                    min_key = min_key.min(key);
                    if key == self_key {
                        let index = (t1 * 6 + t2) * 2 + swap;
                        stab |= 1 << index;
                        shard.fix[weyl::class_slot(index)] += 1;
                    }
                }
            }
        }
        if self_key == min_key {
            let order = stab.count_ones();
            shard.classes.push(RawClass {
                key: self_key,
                orbit_size: 72 / order,
                stab,
            });
        }
    }
    shard
}

/// Classify every orbit at the given level.
///
/// Work is sharded by leading entry and may run on multiple threads; the
/// result is identical for every thread count. Internal consistency is
/// enforced by panicking assertions: the per-class fixed totals must be
/// constant on conjugacy classes, the Burnside average must be an integer
/// equal to the number of emitted orbits, and orbit sizes must sum to the
/// total matrix count.
pub fn orbits(n: u64) -> Result<ClassificationReport> {
    let t = LevelTables::new(n)?;
    let shards: Vec<Shard> = t
        .units
        .par_iter()
        .map(|&a| classify_shard(&t, a))
        .collect();

    let mut total = 0u64;
    let mut fix = [0u64; 9];
    let mut orbit_classes = Vec::new();
    for shard in shards {
        total += shard.count;
        for (acc, f) in fix.iter_mut().zip(shard.fix) {
            *acc += f;
        }
        for raw in shard.classes {
            orbit_classes.push(OrbitClass {
                representative: BeauvilleMatrix::from_raw_unchecked(
                    t.modulus,
                    tables::unpack(raw.key),
                ),
                orbit_size: raw.orbit_size,
                stabilizer: stabilizer_type_from_mask(raw.stab),
            });
        }
    }

    let mut burnside_breakdown = [0u64; 9];
    for i in 0..9 {
        let size = u64::from(CLASS_SIZES[i]);
        assert_eq!(
            fix[i] % size,
            0,
            "fixed-matrix totals must be constant on conjugacy classes"
        );
        burnside_breakdown[i] = fix[i] / size;
    }
    let weighted: u64 = fix.iter().sum();
    assert_eq!(weighted % 72, 0, "Burnside average must be an integer");
    let theta = weighted / 72;
    assert_eq!(
        theta as usize,
        orbit_classes.len(),
        "orbit emission must agree with the Burnside count"
    );
    assert_eq!(
        orbit_classes
            .iter()
            .map(|c| u64::from(c.orbit_size))
            .sum::<u64>(),
        total,
        "orbit sizes must partition the Beauville set"
    );
    assert_eq!(burnside_breakdown[0], total, "the identity fixes everything");

    Ok(ClassificationReport {
        n: u64::from(t.n),
        total_matrices: total,
        orbit_classes,
        burnside_breakdown,
        theta,
    })
}

/// Lexicographically smallest matrix in the orbit of `m`.
pub fn canonical_rep(m: &BeauvilleMatrix) -> BeauvilleMatrix {
    let mut best = *m.mat();
    for w in WElement::elements() {
        let image = act(w, m.mat()).expect("the action is total on invertible matrices");
        if image < best {
            best = image;
        }
    }
    BeauvilleMatrix::new(best).expect("the action preserves the Beauville set")
}

/// Whether two Beauville matrices lie in the same orbit, i.e. define
/// isomorphic structures. Errors when the moduli differ.
pub fn are_isomorphic(a: &BeauvilleMatrix, b: &BeauvilleMatrix) -> Result<bool> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch {
            left: a.modulus().value(),
            right: b.modulus().value(),
        });
    }
    Ok(WElement::elements().any(|w| {
        act(w, a.mat()).expect("the action is total on invertible matrices") == *b.mat()
    }))
}

/// All symmetry-group elements fixing `m`, in index order.
pub fn stabilizer(m: &BeauvilleMatrix) -> Vec<WElement> {
    WElement::elements()
        .filter(|&w| {
            act(w, m.mat()).expect("the action is total on invertible matrices") == *m.mat()
        })
        .collect()
}

/// Isomorphism type of the stabilizer of `m`.
pub fn stabilizer_type(m: &BeauvilleMatrix) -> StabilizerType {
    classify_stabilizer(&stabilizer(m))
}

/// Number of Beauville matrices modulo n fixed by the symmetry `w`.
pub fn fixed_count(w: WElement, n: u64) -> Result<u64> {
    let t = LevelTables::new(n)?;
    let (i1, i2) = (w.tau1.idx(), w.tau2.idx());
    let mut count = 0u64;
    for &a in &t.units {
        for m in tables::matrices_with_leading(&t, a) {
            let image = if w.swap {
                let inv = tables::inv_raw(&t, &m).expect("Beauville matrices are invertible");
                tables::act_raw(&t, i1, i2, true, &m, &inv)
            } else {
                tables::act_raw(&t, i1, i2, false, &m, &m)
            };
            if image == m {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Orbit count via the Burnside average over the nine conjugacy-class
/// representatives — an enumeration-based check on the classification that
/// never forms orbits.
pub fn burnside_orbit_count(n: u64) -> Result<u64> {
    let t = LevelTables::new(n)?;
    let reps: Vec<(usize, usize, bool)> = ConjClassId::all()
        .iter()
        .map(|id| {
            let rep = id.representative();
            (rep.tau1.idx(), rep.tau2.idx(), rep.swap)
        })
        .collect();
    let mut fixed = [0u64; 9];
    for &a in &t.units {
        for m in tables::matrices_with_leading(&t, a) {
            let inv = tables::inv_raw(&t, &m).expect("Beauville matrices are invertible");
            for (slot, &(i1, i2, swap)) in reps.iter().enumerate() {
                if tables::act_raw(&t, i1, i2, swap, &m, &inv) == m {
                    fixed[slot] += 1;
                }
            }
        }
    }
    let weighted: u64 = (0..9)
        .map(|i| u64::from(CLASS_SIZES[i]) * fixed[i])
        .sum();
    assert_eq!(weighted % 72, 0, "Burnside average must be an integer");
    Ok(weighted / 72)
}

/// Number of orbits under the 36-element subgroup that never exchanges the
/// two triples. Refines the full classification: swapped-pair orbits split.
pub fn orbits_unswapped(n: u64) -> Result<u64> {
    let t = LevelTables::new(n)?;
    let count = t
        .units
        .par_iter()
        .map(|&a| {
            let mut reps = 0u64;
            for m in tables::matrices_with_leading(&t, a) {
                let self_key = tables::pack(&m);
                let mut min_key = u64::MAX;
                for t2 in 0..6 {
                    let left = tables::mat_mul(&t, &t.m[t2], &m);
                    for t1 in 0..6 {
                        let image = tables::mat_mul(&t, &left, &t.m_inv[t1]);
                        min_key = min_key.min(tables::pack(&image));
                    }
                }
                if min_key == self_key {
                    reps += 1;
                }
            }
            reps
        })
        .sum();
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat2;
    use crate::modular::Modulus;
    use crate::weyl::Perm3;

    fn member(n: u64, entries: [i64; 4]) -> BeauvilleMatrix {
        BeauvilleMatrix::new(Mat2::from_integers(Modulus::new(n).unwrap(), entries)).unwrap()
    }

    #[test]
    fn smallest_level_has_one_orbit() {
        let report = orbits(5).unwrap();
        assert_eq!(report.n, 5);
        assert_eq!(report.total_matrices, 24);
        assert_eq!(report.theta, 1);
        assert_eq!(report.burnside_breakdown, [24, 0, 0, 0, 12, 0, 0, 0, 0]);
        assert_eq!(report.orbit_classes.len(), 1);
        let class = report.orbit_classes[0];
        assert_eq!(class.representative.entries(), [1, 1, 2, 4]);
        assert_eq!(class.orbit_size, 24);
        assert_eq!(class.stabilizer, StabilizerType::Z3);
    }

    #[test]
    fn level_seven_classification() {
        let report = orbits(7).unwrap();
        assert_eq!(report.total_matrices, 360);
        assert_eq!(report.theta, 7);
        assert_eq!(report.burnside_breakdown, [360, 0, 0, 0, 18, 0, 8, 0, 2]);
        let histogram = report.stabilizer_histogram();
        assert_eq!(histogram[&StabilizerType::Trivial], 4);
        assert_eq!(histogram[&StabilizerType::Z2], 1);
        assert_eq!(histogram[&StabilizerType::Z3], 1);
        assert_eq!(histogram[&StabilizerType::Z6], 1);
        let sizes: u64 = report
            .orbit_classes
            .iter()
            .map(|c| u64::from(c.orbit_size))
            .sum();
        assert_eq!(sizes, 360);
    }

    #[test]
    fn representatives_are_sorted_and_canonical() {
        for n in [5u64, 7, 11] {
            let report = orbits(n).unwrap();
            let reps: Vec<_> = report
                .orbit_classes
                .iter()
                .map(|c| c.representative)
                .collect();
            let mut sorted = reps.clone();
            sorted.sort();
            assert_eq!(reps, sorted, "level {n}");
            for rep in &reps {
                assert_eq!(canonical_rep(rep), *rep, "level {n}");
            }
        }
        assert_eq!(orbits(11).unwrap().theta, 79);
    }

    #[test]
    fn fixed_counts_by_class_representative() {
        let reps = ConjClassId::all();
        assert_eq!(fixed_count(reps[1].representative(), 7).unwrap(), 0);
        assert_eq!(fixed_count(reps[4].representative(), 7).unwrap(), 18);
        assert_eq!(fixed_count(reps[6].representative(), 7).unwrap(), 8);
        assert_eq!(fixed_count(reps[8].representative(), 7).unwrap(), 2);
    }

    #[test]
    fn fixed_count_is_a_class_function() {
        let report = orbits(5).unwrap();
        for w in WElement::elements() {
            let slot = (crate::weyl::conjugacy_class_of(w).number() - 1) as usize;
            assert_eq!(
                fixed_count(w, 5).unwrap(),
                report.burnside_breakdown[slot],
                "element {w}"
            );
        }
    }

    #[test]
    fn stabilizer_examples() {
        let a = member(5, [1, 3, 2, 4]);
        let stab = stabilizer(&a);
        assert_eq!(stab.len(), 3);
        assert_eq!(stabilizer_type(&a), StabilizerType::Z3);
        assert!(stab.contains(&WElement::IDENTITY));

        // a = 2, b = -2a, c = d = -a, with -3 a^2 = 1 mod 13: order-6 stabilizer.
        let z6 = member(13, [2, 9, 11, 11]);
        assert_eq!(stabilizer_type(&z6), StabilizerType::Z6);
        assert_eq!(stabilizer(&z6).len(), 6);
    }

    #[test]
    fn isomorphism_and_canonical_reps() {
        let a = member(5, [1, 3, 2, 4]);
        assert_eq!(canonical_rep(&a).entries(), [1, 1, 2, 4]);

        let rotated = WElement::new(Perm3::IDENTITY, Perm3::ROTATION, false);
        let image = act(rotated, a.mat()).unwrap();
        let image = BeauvilleMatrix::new(image).unwrap();
        assert!(are_isomorphic(&a, &image).unwrap());

        let report = orbits(7).unwrap();
        let first = report.orbit_classes[0].representative;
        let second = report.orbit_classes[1].representative;
        assert!(!are_isomorphic(&first, &second).unwrap());
        assert!(are_isomorphic(&first, &first).unwrap());

        let other = member(7, [1, 1, 2, 4]);
        assert_eq!(
            are_isomorphic(&a, &other),
            Err(Error::ModulusMismatch { left: 5, right: 7 })
        );
    }

    #[test]
    fn subgroup_orbits_refine_the_full_classification() {
        assert_eq!(orbits_unswapped(5).unwrap(), 2);
        assert_eq!(orbits_unswapped(7).unwrap(), 12);
        // Never fewer sub-orbits than full orbits, never more than double.
        for n in [5u64, 7, 11] {
            let full = orbits(n).unwrap().theta;
            let sub = orbits_unswapped(n).unwrap();
            assert!(sub >= full && sub <= 2 * full, "level {n}");
        }
    }

    #[test]
    fn burnside_counts_match_classification() {
        for n in [5u64, 7, 11, 13] {
            assert_eq!(
                burnside_orbit_count(n).unwrap(),
                orbits(n).unwrap().theta,
                "level {n}"
            );
        }
        assert_eq!(burnside_orbit_count(13).unwrap(), 178);
    }

    #[test]
    fn stabilizer_constraints_by_level() {
        // Levels divisible by 5 admit only trivial and order-3 stabilizers;
        // levels with a prime factor p = 3k-1 admit no order-6 stabilizer.
        for n in [5u64, 25, 35] {
            for class in orbits(n).unwrap().orbit_classes {
                assert!(
                    matches!(
                        class.stabilizer,
                        StabilizerType::Trivial | StabilizerType::Z3
                    ),
                    "level {n}: found {}",
                    class.stabilizer
                );
            }
        }
        for class in orbits(11).unwrap().orbit_classes {
            assert_ne!(class.stabilizer, StabilizerType::Z6, "level 11");
        }
    }

    #[test]
    fn rejects_bad_levels() {
        assert!(matches!(
            orbits(9),
            Err(Error::InvalidLevel { n: 9, gcd: 3 })
        ));
        assert!(orbits_unswapped(15).is_err());
        assert!(burnside_orbit_count(4).is_err());
        assert!(fixed_count(WElement::IDENTITY, 6).is_err());
    }
}
