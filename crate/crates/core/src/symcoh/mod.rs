//! Degree-two integral cohomology of the symmetric product SᵈΣ, exactly.
//!
//! Classes are written in the basis `η` (image of a point of Σ) and
//! `Λ²H₁(Σ)`, where `θ = Σᵢ aᵢ ∧ a_{i+g}`. All arithmetic is over
//! arbitrary-precision rationals.

mod checks;
mod class;
mod exterior;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use checks::{
    c1_tangent, exact_level, kahler_class, kahler_class_at, ke_check, legendre_certificate, metaplectic_check, pair_d1,
    prequantum_class_check, prequantum_class_check_at, weil_check, KeReport, LegendreCertificate, MetaplecticReport,
    Mod2Certificate, PrequantumReport, WeilReport,
};
pub use class::H2Class;
pub use exterior::ExteriorForm;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymcohError {
    #[error("Bradlow bound violated: level {level} below degree {degree}")]
    BradlowViolation { level: BigRational, degree: u32 },
    #[error("not prequantizable: level τV/4π = {level} has fractional part {fractional_part}")]
    NotPrequantizable { level: f64, fractional_part: f64 },
    #[error("class identity failed: {lhs} != {rhs}")]
    IdentityFailure { lhs: String, rhs: String },
    #[error("operation needs degree context 1, class lives on S^{0}Σ")]
    WrongDegreeContext(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
