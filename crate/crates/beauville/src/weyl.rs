//! The symmetry group of Beauville matrices: the order-72 wreath product
//! (S3 x S3) ⋊ Z2, acting on 2x2 matrices over Z_n.
//!
//! An element is a pair of permutations of three points together with a swap
//! flag; the swap flag composes with matrix inversion when acting. The action
//! goes through a fixed monomorphism from S3 into GL2(Z_n), anchored at the
//! two generators [`Perm3::ROTATION`] and [`Perm3::TRANSPOSITION`]. Any other
//! consistent labeling of S3 would induce the same orbit structure; the choice
//! here is pinned, not configurable.

use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::modular::Modulus;

/// A permutation of the three points {1, 2, 3}, stored as images 0-indexed.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm3 {
    images: [u8; 3],
}

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3 { images: [0, 1, 2] };
    /// The 3-cycle sending 1 -> 3 -> 2 -> 1.
    pub const ROTATION: Perm3 = Perm3 { images: [2, 0, 1] };
    /// The transposition exchanging 1 and 2.
    pub const TRANSPOSITION: Perm3 = Perm3 { images: [1, 0, 2] };

    /// All six permutations, ascending in lexicographic image order.
    pub fn all() -> [Perm3; 6] {
        [
            Perm3 { images: [0, 1, 2] },
            Perm3 { images: [0, 2, 1] },
            Perm3 { images: [1, 0, 2] },
            Perm3 { images: [1, 2, 0] },
            Perm3 { images: [2, 0, 1] },
            Perm3 { images: [2, 1, 0] },
        ]
    }

    pub fn from_images(images: [u8; 3]) -> Option<Perm3> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm3 { images })
    }

    pub fn apply(self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm3) -> Perm3 {
        Perm3 {
            images: [
                self.images[other.images[0] as usize],
                self.images[other.images[1] as usize],
                self.images[other.images[2] as usize],
            ],
        }
    }

    pub fn inverse(self) -> Perm3 {
        let mut images = [0u8; 3];
        for (point, &image) in self.images.iter().enumerate() {
            images[image as usize] = point as u8;
        }
        Perm3 { images }
    }

    pub fn is_identity(self) -> bool {
        self == Perm3::IDENTITY
    }

    pub fn order(self) -> u32 {
        let mut p = self;
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Position of this permutation in [`Perm3::all`].
    pub(crate) fn idx(self) -> usize {
        let [a, b, _] = self.images;
        match (a, b) {
            (0, 1) => 0,
            (0, 2) => 1,
            (1, 0) => 2,
            (1, 2) => 3,
            (2, 0) => 4,
            (2, 1) => 5,
            _ => unreachable!("invalid permutation images"),
        }
    }

    pub(crate) fn from_idx(idx: usize) -> Perm3 {
        Perm3::all()[idx]
    }
}

impl std::fmt::Display for Perm3 {
    /// Cycle notation on the points 1..=3, e.g. `(1 3 2)`; `id` when trivial.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut seen = [false; 3];
        for start in 0..3 {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            loop {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                seen[p] = true;
                first = false;
                p = self.apply(p);
                if p == start {
                    break;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Integer matrices (entries in {-1, 0, 1}, row-major) representing each
/// permutation of [`Perm3::all`] in GL2, anchored at
/// ROTATION -> (-1 1; -1 0) and TRANSPOSITION -> (0 1; 1 0).
/// The unit test below rebuilds the table from the generators.
pub(crate) const PERM_MATRICES: [[i64; 4]; 6] = [
    [1, 0, 0, 1],    // id
    [1, -1, 0, -1],  // (2 3)
    [0, 1, 1, 0],    // (1 2)
    [0, -1, 1, -1],  // (1 2 3)
    [-1, 1, -1, 0],  // (1 3 2)
    [-1, 0, -1, 1],  // (1 3)
];

/// An element of the order-72 symmetry group: a pair of permutations plus a
/// swap flag. With `swap` unset the element acts by `A -> M2 A M1^{-1}`; with
/// it set, by `A -> M2 A^{-1} M1^{-1}`, where `Mi` represents `taui`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WElement {
    pub tau1: Perm3,
    pub tau2: Perm3,
    pub swap: bool,
}

impl WElement {
    pub const IDENTITY: WElement = WElement {
        tau1: Perm3::IDENTITY,
        tau2: Perm3::IDENTITY,
        swap: false,
    };

    /// The pure swap element: acts by matrix inversion alone.
    pub const SWAP: WElement = WElement {
        tau1: Perm3::IDENTITY,
        tau2: Perm3::IDENTITY,
        swap: true,
    };

    pub fn new(tau1: Perm3, tau2: Perm3, swap: bool) -> WElement {
        WElement { tau1, tau2, swap }
    }

    /// All 72 elements, in a fixed order.
    pub fn elements() -> impl Iterator<Item = WElement> {
        (0..72).map(WElement::from_index)
    }

    pub(crate) fn index(self) -> usize {
        (self.tau1.idx() * 6 + self.tau2.idx()) * 2 + usize::from(self.swap)
    }

    pub(crate) fn from_index(index: usize) -> WElement {
        debug_assert!(index < 72);
        WElement {
            tau1: Perm3::from_idx(index / 12),
            tau2: Perm3::from_idx((index / 2) % 6),
            swap: index % 2 == 1,
        }
    }

    pub fn inverse(self) -> WElement {
        if self.swap {
            WElement::new(self.tau2.inverse(), self.tau1.inverse(), true)
        } else {
            WElement::new(self.tau1.inverse(), self.tau2.inverse(), false)
        }
    }

    pub fn order(self) -> u32 {
        let mut p = self;
        let mut k = 1;
        while p != WElement::IDENTITY {
            p = w_mul(p, self);
            k += 1;
        }
        k
    }
}

impl std::fmt::Display for WElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.tau1, self.tau2)?;
        if self.swap {
            write!(f, "·J")?;
        }
        Ok(())
    }
}

/// Group law: a swap on the left exchanges the two permutation coordinates of
/// the right factor and toggles its swap flag.
pub fn w_mul(x: WElement, y: WElement) -> WElement {
    if x.swap {
        WElement::new(x.tau1.compose(y.tau2), x.tau2.compose(y.tau1), !y.swap)
    } else {
        WElement::new(x.tau1.compose(y.tau1), x.tau2.compose(y.tau2), y.swap)
    }
}

impl std::ops::Mul for WElement {
    type Output = WElement;
    fn mul(self, rhs: WElement) -> WElement {
        w_mul(self, rhs)
    }
}

/// One of the nine conjugacy classes of the symmetry group, numbered 1..=9.
///
/// The numbering is fixed by (swap flag, element order, whether some
/// coordinate permutation is trivial): classes 1-6 are swap-free with
/// signatures (order 1), (2, one trivial), (2, none trivial), (3, one
/// trivial), (3, none trivial), (6); classes 7-9 carry the swap flag and have
/// orders 2, 4, 6.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ConjClassId(u8);

pub const CLASS_SIZES: [u32; 9] = [1, 6, 9, 4, 4, 12, 6, 18, 12];
pub const CLASS_ORDERS: [u32; 9] = [1, 2, 2, 3, 3, 6, 2, 4, 6];

impl ConjClassId {
    pub fn all() -> [ConjClassId; 9] {
        std::array::from_fn(|i| ConjClassId(i as u8 + 1))
    }

    pub fn from_number(number: u8) -> Option<ConjClassId> {
        (1..=9).contains(&number).then_some(ConjClassId(number))
    }

    /// Class number in 1..=9.
    pub fn number(self) -> u8 {
        self.0
    }

    /// Common order of the elements of this class.
    pub fn element_order(self) -> u32 {
        CLASS_ORDERS[self.0 as usize - 1]
    }

    pub fn size(self) -> u32 {
        CLASS_SIZES[self.0 as usize - 1]
    }

    pub fn representative(self) -> WElement {
        CLASS_REPS[self.0 as usize - 1]
    }
}

impl std::fmt::Display for ConjClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C{}", self.0)
    }
}

/// Fixed representatives, one per class, in class order.
const CLASS_REPS: [WElement; 9] = {
    const ID: Perm3 = Perm3::IDENTITY;
    const R: Perm3 = Perm3::ROTATION;
    const T: Perm3 = Perm3::TRANSPOSITION;
    // (2 3) = ROTATION ∘ TRANSPOSITION.
    const RT: Perm3 = Perm3 { images: [0, 2, 1] };
    [
        WElement { tau1: ID, tau2: ID, swap: false },
        WElement { tau1: ID, tau2: T, swap: false },
        WElement { tau1: T, tau2: T, swap: false },
        WElement { tau1: ID, tau2: R, swap: false },
        WElement { tau1: R, tau2: R, swap: false },
        WElement { tau1: T, tau2: R, swap: false },
        WElement { tau1: ID, tau2: ID, swap: true },
        WElement { tau1: ID, tau2: T, swap: true },
        WElement { tau1: T, tau2: RT, swap: true },
    ]
};

struct WeylTable {
    class_of: [u8; 72],
}

/// Conjugacy classes computed by closing each element under conjugation by
/// the whole group, then matched to the fixed numbering by signature.
static WEYL_TABLE: LazyLock<WeylTable> = LazyLock::new(|| {
    let elements: Vec<WElement> = WElement::elements().collect();
    let mut class_of = [0u8; 72];
    let mut sizes = [0u32; 9];
    for &w in &elements {
        if class_of[w.index()] != 0 {
            continue;
        }
        let mut members = Vec::new();
        for &g in &elements {
            let conj = w_mul(w_mul(g, w), g.inverse());
            if !members.contains(&conj) {
                members.push(conj);
            }
        }
        let order = w.order();
        let any_trivial = members
            .iter()
            .any(|m| m.tau1.is_identity() || m.tau2.is_identity());
        let number = match (w.swap, order, any_trivial) {
            (false, 1, _) => 1,
            (false, 2, true) => 2,
            (false, 2, false) => 3,
            (false, 3, true) => 4,
            (false, 3, false) => 5,
            (false, 6, _) => 6,
            (true, 2, _) => 7,
            (true, 4, _) => 8,
            (true, 6, _) => 9,
            other => panic!("impossible conjugacy signature {other:?}"),
        };
        for m in &members {
            assert_eq!(class_of[m.index()], 0, "conjugacy classes must not overlap");
            class_of[m.index()] = number;
        }
        sizes[number as usize - 1] = members.len() as u32;
    }
    assert_eq!(sizes, CLASS_SIZES, "computed class sizes disagree");
    for (i, rep) in CLASS_REPS.iter().enumerate() {
        assert_eq!(class_of[rep.index()] as usize, i + 1);
        assert_eq!(rep.order(), CLASS_ORDERS[i]);
    }
    WeylTable { class_of }
});

pub fn conjugacy_class_of(w: WElement) -> ConjClassId {
    ConjClassId(WEYL_TABLE.class_of[w.index()])
}

/// Zero-based conjugacy-class slot of the element with the given index,
/// for accumulation into per-class arrays.
pub(crate) fn class_slot(index: usize) -> usize {
    (WEYL_TABLE.class_of[index] - 1) as usize
}

/// The matrix representing `tau` in GL2(Z_n).
///
/// This is the unique homomorphic extension of the anchored generator images;
/// it is injective for every admissible level since the six integer matrices
/// differ entrywise by at most 2.
pub fn m_rep(tau: Perm3, modulus: Modulus) -> Result<Mat2> {
    if !modulus.is_valid_level() {
        return Err(Error::InvalidLevel {
            n: modulus.value(),
            gcd: crate::modular::gcd(modulus.value(), 6),
        });
    }
    Ok(perm_matrix(tau, modulus))
}

fn perm_matrix(tau: Perm3, modulus: Modulus) -> Mat2 {
    Mat2::from_integers(modulus, PERM_MATRICES[tau.idx()])
}

/// Apply a symmetry-group element to a matrix: `M2 · A^{±1} · M1^{-1}`.
///
/// Elements with the swap flag invert the matrix first, so they are only
/// defined on invertible input.
pub fn act(w: WElement, a: &Mat2) -> Result<Mat2> {
    let base = if w.swap { a.invert()? } else { *a };
    let modulus = a.modulus();
    let left = perm_matrix(w.tau2, modulus);
    let right = perm_matrix(w.tau1.inverse(), modulus);
    Ok(left * base * right)
}
