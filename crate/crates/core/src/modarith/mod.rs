//! Exact arithmetic in 𝔽_λ and dense polynomial algebra over it, including
//! the Frobenius-power and distinct-degree-count kernels used by the fiber
//! scanner.

mod ddf;
mod field;
mod poly;
mod quotient;

pub use ddf::{distinct_degree_counts, frobenius_power};
pub use field::{is_prime_u64, PrimeField, MODULUS_LIMIT};
pub use poly::FPoly;
pub use quotient::QuotientRing;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} outside the supported range (2, 2^62)")]
    ModulusOutOfRange(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("Frobenius power and factor degree must be positive")]
    ZeroFrobeniusPower,
    #[error("degree-{degree} gcd has degree {found}, not a multiple of {degree}; input is not squarefree")]
    Inconsistent { degree: usize, found: usize },
}
