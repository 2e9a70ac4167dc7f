//! Chern-class test for projectively flat connections on the bundle of
//! quantizations over the Picard torus. Classes live in `Q[Θ]/(Θ³)`; only the
//! coefficients of `Θ` and `Θ²` are stored.

mod oracle;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::hilbert::binomial;

pub use oracle::{chern_root_oracle, OracleRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("exterior power {d} out of range for rank {rank}")]
    DegreeOutOfRange { d: u64, rank: BigUint },
}

/// `c₁ = c1_theta·Θ`, `c₂ = c2_theta2·Θ²` for a bundle of the given rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernPair {
    pub c1_theta: BigRational,
    pub c2_theta2: BigRational,
    pub rank: BigUint,
}

pub(crate) fn binom_q(n: u64, k: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(binomial(n, k)))
}

impl ChernPair {
    /// Direct image of the Poincaré bundle of degree `k + g − 1`:
    /// rank `k`, `c₁ = −Θ`, `c₂ = ½Θ²`.
    pub fn poincare_pushforward(k: u64) -> Self {
        Self {
            c1_theta: -BigRational::one(),
            c2_theta2: BigRational::new(1.into(), 2.into()),
            rank: BigUint::from(k),
        }
    }

    /// `(r̃ − 1)c₁² − 2r̃c₂` as a multiple of `Θ²`; zero for projectively
    /// flat bundles.
    pub fn flatness_defect(&self) -> BigRational {
        let r = BigRational::from_integer(BigInt::from(self.rank.clone()));
        (&r - BigRational::one()) * &self.c1_theta * &self.c1_theta
            - BigRational::from_integer(2.into()) * r * &self.c2_theta2
    }
}

/// Chern data of `ΛᵈE` from that of `E`.
pub fn chern_exterior_power(e: &ChernPair, d: u64) -> Result<ChernPair, ObstructError> {
    let r = e
        .rank
        .to_u64()
        .filter(|&r| d >= 1 && d <= r)
        .ok_or_else(|| ObstructError::DegreeOutOfRange {
            d,
            rank: e.rank.clone(),
        })?;
    if d == 1 {
        return Ok(e.clone());
    }
    let a = binom_q(r - 1, d - 1);
    let b = binom_q(r - 2, d - 1);
    let half = BigRational::new(1.into(), 2.into());
    Ok(ChernPair {
        c1_theta: &a * &e.c1_theta,
        c2_theta2: b * &e.c2_theta2 + half * (&a * &a - &a) * &e.c1_theta * &e.c1_theta,
        rank: binomial(r, d),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub genus: u64,
    pub level: u64,
    pub degree: u64,
    pub bundle: ChernPair,
    /// `(r̃ − 1) c₁(ΛᵈE)²`, coefficient of `Θ²`.
    pub lhs: BigRational,
    /// `2 r̃ c₂(ΛᵈE)`.
    pub rhs: BigRational,
    pub obstruction: BigRational,
    pub flat_possible: bool,
    /// Both sides rewritten in binomials of `k` and `d` only, evaluated
    /// separately as a cross-check.
    pub closed_lhs: BigRational,
    pub closed_rhs: BigRational,
    /// `flat_possible` agrees with `k = d`.
    pub matches_closed_form: bool,
}

pub fn proj_flat_test(g: u64, k: u64, d: u64) -> Result<ObstructionReport, ObstructError> {
    if g <= 1 {
        return Err(ObstructError::HypothesisViolation(format!(
            "g > 1 required, got g = {g}"
        )));
    }
    if k < g {
        return Err(ObstructError::HypothesisViolation(format!(
            "k > g − 1 required, got k = {k}, g = {g}"
        )));
    }
    if d == 0 || k < d {
        return Err(ObstructError::HypothesisViolation(format!(
            "k ≥ d > 0 required, got k = {k}, d = {d}"
        )));
    }
    let bundle = chern_exterior_power(&ChernPair::poincare_pushforward(k), d)?;
    let rt = BigRational::from_integer(BigInt::from(bundle.rank.clone()));
    let lhs = (&rt - BigRational::one()) * &bundle.c1_theta * &bundle.c1_theta;
    let rhs = BigRational::from_integer(2.into()) * &rt * &bundle.c2_theta2;
    let obstruction = &lhs - &rhs;

    let ckd = binom_q(k, d);
    let c = binom_q(k - 1, d - 1);
    let ratio = BigRational::new(BigInt::from(d - 1), BigInt::from(k - 1));
    let closed_lhs = (&ckd - BigRational::one()) * &c * &c;
    let closed_rhs = &ckd * (&c * &c - ratio * &c);

    let flat_possible = obstruction.is_zero();
    Ok(ObstructionReport {
        genus: g,
        level: k,
        degree: d,
        bundle,
        lhs,
        rhs,
        obstruction,
        flat_possible,
        closed_lhs,
        closed_rhs,
        matches_closed_form: flat_possible == (k == d),
    })
}
