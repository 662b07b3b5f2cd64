use thiserror::Error;

/// Errors surfaced by the fallible operations of this crate.
///
/// Violations of internal mathematical invariants (a Burnside sum that is not
/// divisible by the group order, an orbit size that does not divide 72) are
/// bugs, not inputs, and panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {n} is not admissible: need n >= 5 and gcd(n, 6) = 1, but gcd({n}, 6) = {gcd}")]
    InvalidLevel { n: u64, gcd: u64 },

    #[error("modulus {n} exceeds the closed-form cap {cap}")]
    LevelTooLarge { n: u64, cap: u64 },

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("matrix is singular modulo {modulus}: determinant {det} is not a unit")]
    SingularMatrix { det: u64, modulus: u64 },

    #[error("matrix fails the Beauville unit conditions modulo {modulus}")]
    NotBeauville { modulus: u64 },

    #[error("mixed moduli: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("prime {p} appears more than once in the input")]
    RepeatedPrime { p: u64 },

    #[error("{p} is not a prime admissible here (need a prime p >= 5)")]
    BadPrime { p: u64 },

    #[error("level {n} exceeds the enumeration budget {budget}")]
    BudgetExceeded { n: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
