//! 2x2 matrices over Z_n, Beauville membership, and ordered enumeration.
//!
//! A matrix A = (a b; c d) is a *Beauville matrix* when the nine quantities
//! a, b, c, d, a+b, c+d, a-c, b-d, a+b-c-d are all units and A is invertible.
//! The unit conditions alone do not force invertibility — (1 1; 2 2) mod 5
//! satisfies all nine yet is singular — so the determinant condition is
//! checked explicitly and is load-bearing.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modular::{Modulus, Residue};
use crate::tables::{self, LevelTables};

/// A 2x2 matrix over Z_n, row-major (a b; c d), all entries sharing one
/// modulus. Ordering is lexicographic on (a, b, c, d).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mat2 {
    a: Residue,
    b: Residue,
    c: Residue,
    d: Residue,
}

impl Mat2 {
    pub fn from_residues(a: Residue, b: Residue, c: Residue, d: Residue) -> Result<Mat2> {
        for other in [b, c, d] {
            if other.modulus() != a.modulus() {
                return Err(Error::ModulusMismatch {
                    left: a.modulus().value(),
                    right: other.modulus().value(),
                });
            }
        }
        Ok(Mat2 { a, b, c, d })
    }

    /// Build from signed integer entries, normalizing each into `0..n`.
    pub fn from_integers(modulus: Modulus, entries: [i64; 4]) -> Mat2 {
        let [a, b, c, d] = entries.map(|e| modulus.residue(e));
        Mat2 { a, b, c, d }
    }

    pub fn identity(modulus: Modulus) -> Mat2 {
        Mat2::from_integers(modulus, [1, 0, 0, 1])
    }

    pub fn modulus(&self) -> Modulus {
        self.a.modulus()
    }

    pub fn a(&self) -> Residue {
        self.a
    }

    pub fn b(&self) -> Residue {
        self.b
    }

    pub fn c(&self) -> Residue {
        self.c
    }

    pub fn d(&self) -> Residue {
        self.d
    }

    /// Entries as plain integers in `0..n`, row-major.
    pub fn entries(&self) -> [u64; 4] {
        [
            self.a.value(),
            self.b.value(),
            self.c.value(),
            self.d.value(),
        ]
    }

    pub fn det(&self) -> Residue {
        self.a * self.d - self.b * self.c
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// Inverse via the adjugate, when the determinant is a unit.
    pub fn invert(&self) -> Result<Mat2> {
        let det = self.det();
        let det_inv = det.inverse().ok_or(Error::SingularMatrix {
            det: det.value(),
            modulus: self.modulus().value(),
        })?;
        Ok(Mat2 {
            a: self.d * det_inv,
            b: -self.b * det_inv,
            c: -self.c * det_inv,
            d: self.a * det_inv,
        })
    }

    /// The two generator triples attached to this matrix: the reference
    /// triple ((1,0), (0,1), (-1,-1)) and its image under A, column-wise.
    pub fn triples(&self) -> TriplePair {
        triples_of(self)
    }

    pub fn is_beauville(&self) -> bool {
        is_beauville_matrix(self)
    }

    pub(crate) fn from_raw(modulus: Modulus, raw: [u32; 4]) -> Mat2 {
        Mat2::from_integers(modulus, raw.map(i64::from))
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl std::fmt::Display for Mat2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = self.entries();
        write!(f, "({a} {b}; {c} {d}) mod {}", self.modulus())
    }
}

/// The nine unit conditions, without the determinant check.
///
/// Necessary but not sufficient for membership: singular matrices such as
/// (1 1; 2 2) mod 5 pass all nine.
pub fn satisfies_unit_conditions(m: &Mat2) -> bool {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    [
        a,
        b,
        c,
        d,
        a + b,
        c + d,
        a - c,
        b - d,
        (a + b) - (c + d),
    ]
    .into_iter()
    .all(Residue::is_unit)
}

/// Membership test: the nine unit conditions plus an invertible determinant.
pub fn is_beauville_matrix(m: &Mat2) -> bool {
    satisfies_unit_conditions(m) && m.is_invertible()
}

/// A matrix verified to lie in the Beauville set over an admissible level.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BeauvilleMatrix(Mat2);

impl BeauvilleMatrix {
    pub fn new(m: Mat2) -> Result<BeauvilleMatrix> {
        let n = m.modulus().value();
        if !m.modulus().is_valid_level() {
            return Err(Error::InvalidLevel {
                n,
                gcd: crate::modular::gcd(n, 6),
            });
        }
        if !is_beauville_matrix(&m) {
            return Err(Error::NotBeauville { modulus: n });
        }
        Ok(BeauvilleMatrix(m))
    }

    pub fn mat(&self) -> &Mat2 {
        &self.0
    }

    pub fn into_mat(self) -> Mat2 {
        self.0
    }

    pub(crate) fn from_raw_unchecked(modulus: Modulus, raw: [u32; 4]) -> BeauvilleMatrix {
        let m = Mat2::from_raw(modulus, raw);
        debug_assert!(is_beauville_matrix(&m));
        BeauvilleMatrix(m)
    }
}

impl std::ops::Deref for BeauvilleMatrix {
    type Target = Mat2;
    fn deref(&self) -> &Mat2 {
        &self.0
    }
}

impl TryFrom<Mat2> for BeauvilleMatrix {
    type Error = Error;
    fn try_from(m: Mat2) -> Result<BeauvilleMatrix> {
        BeauvilleMatrix::new(m)
    }
}

impl std::fmt::Display for BeauvilleMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of the group Z_n x Z_n.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vec2 {
    x: Residue,
    y: Residue,
}

impl Vec2 {
    pub fn new(x: Residue, y: Residue) -> Result<Vec2> {
        if x.modulus() != y.modulus() {
            return Err(Error::ModulusMismatch {
                left: x.modulus().value(),
                right: y.modulus().value(),
            });
        }
        Ok(Vec2 { x, y })
    }

    pub fn from_integers(modulus: Modulus, x: i64, y: i64) -> Vec2 {
        Vec2 {
            x: modulus.residue(x),
            y: modulus.residue(y),
        }
    }

    pub fn x(&self) -> Residue {
        self.x
    }

    pub fn y(&self) -> Residue {
        self.y
    }

    pub fn modulus(&self) -> Modulus {
        self.x.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Additive order: n / gcd(n, x, y).
    pub fn order(&self) -> u64 {
        let n = self.modulus().value();
        n / crate::modular::gcd(n, crate::modular::gcd(self.x.value(), self.y.value()))
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2 {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl std::fmt::Display for Vec2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x.value(), self.y.value())
    }
}

/// An ordered triple in Z_n x Z_n whose entries sum to zero.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct GeneratorTriple {
    entries: [Vec2; 3],
}

impl GeneratorTriple {
    pub fn new(first: Vec2, second: Vec2, third: Vec2) -> GeneratorTriple {
        assert_eq!(first.modulus(), second.modulus());
        assert_eq!(first.modulus(), third.modulus());
        assert!(
            (first + second + third).is_zero(),
            "triple entries must sum to zero"
        );
        GeneratorTriple {
            entries: [first, second, third],
        }
    }

    pub fn entries(&self) -> [Vec2; 3] {
        self.entries
    }

    pub fn modulus(&self) -> Modulus {
        self.entries[0].modulus()
    }
}

/// The pair of triples carried by a matrix.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct TriplePair {
    pub first: GeneratorTriple,
    pub second: GeneratorTriple,
}

/// The reference triple ((1,0), (0,1), (-1,-1)) together with its image under
/// the matrix: ((a,c), (b,d), (-a-b, -c-d)). Total on `Mat2`; membership in
/// the Beauville set is not required.
pub fn triples_of(m: &Mat2) -> TriplePair {
    let modulus = m.modulus();
    let e1 = Vec2::from_integers(modulus, 1, 0);
    let e2 = Vec2::from_integers(modulus, 0, 1);
    let first = GeneratorTriple::new(e1, e2, -(e1 + e2));
    let col1 = Vec2 { x: m.a, y: m.c };
    let col2 = Vec2 { x: m.b, y: m.d };
    let second = GeneratorTriple::new(col1, col2, -(col1 + col2));
    TriplePair { first, second }
}

/// Lazily yields every Beauville matrix modulo n in lexicographic (a, b, c, d)
/// order. The stream is deterministic: the same level always produces the
/// same sequence.
pub fn enumerate_beauville(n: u64) -> Result<BeauvilleStream> {
    let tables = Arc::new(LevelTables::new(n)?);
    Ok(BeauvilleStream {
        tables,
        a_pos: 0,
        chunk: Vec::new().into_iter(),
    })
}

pub struct BeauvilleStream {
    tables: Arc<LevelTables>,
    a_pos: usize,
    chunk: std::vec::IntoIter<[u32; 4]>,
}

impl Iterator for BeauvilleStream {
    type Item = BeauvilleMatrix;

    fn next(&mut self) -> Option<BeauvilleMatrix> {
        loop {
            if let Some(raw) = self.chunk.next() {
                return Some(BeauvilleMatrix::from_raw_unchecked(
                    self.tables.modulus,
                    raw,
                ));
            }
            let &a = self.tables.units.get(self.a_pos)?;
            self.a_pos += 1;
            self.chunk = tables::matrices_with_leading(&self.tables, a).into_iter();
        }
    }
}
