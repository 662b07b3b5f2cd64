//! Enumeration, counting, and classification of unmixed Beauville
//! structures on the group Z_n x Z_n for admissible levels
//! (n >= 5, gcd(n, 6) = 1).
//!
//! The crate has three layers that compute the same quantities by
//! independent means, so each can validate the others:
//!
//! * [`formulas`] — closed-form counts (matrix totals, orbit counts, and
//!   the Burnside summands they decompose into), multiplicative over prime
//!   powers and usable far beyond enumeration range.
//! * [`matrix`] + [`classifier`] — explicit enumeration of the Beauville
//!   set and its classification into orbits of the 72-element symmetry
//!   group, with stabilizers.
//! * [`oracle`] — slow, definition-level recomputations (brute-force
//!   union-find orbit counting, literal generation and freeness checks)
//!   used to cross-validate the fast paths.
//!
//! Supporting modules: [`modular`] (residue arithmetic, levels, CRT) and
//! [`weyl`] (the symmetry group of order 72 and its action on matrices).

pub mod classifier;
pub mod error;
pub mod formulas;
pub mod matrix;
pub mod modular;
pub mod oracle;
mod tables;
pub mod weyl;

pub use classifier::{orbits, ClassificationReport, OrbitClass, StabilizerType};
pub use error::{Error, Result};
pub use formulas::{theta, theta1, ThetaBreakdown};
pub use matrix::{enumerate_beauville, is_beauville_matrix, BeauvilleMatrix, Mat2};
pub use modular::{is_valid_level, valid_levels, Modulus, Residue};
pub use oracle::naive_orbit_count;
pub use weyl::{act, ConjClassId, Perm3, WElement};
