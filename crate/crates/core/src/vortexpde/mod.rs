//! Abelian vortices on a flat torus via the scalar reduction
//! `u = log(|φ|²/τ)`, which turns the vortex equations into
//!
//! `Δu = τ(e^u − 1) + 4π Σ nᵢ δ_{zᵢ}`.
//!
//! The delta sources are absorbed analytically by `u_s = 4π Σ nᵢ G(·, zᵢ)`,
//! leaving the smooth equation `Δv = τ(e^{u_s + v} − 1) + 4πd/V` for the
//! regular part `v`.

mod params;
mod solver;

use thiserror::Error;

use crate::geometry::GeometryError;

pub use params::{DivisorSpec, QuantizationSpec};
pub use solver::{
    observables_report, singular_part, solve_vortex, solve_vortex_with, ObservablesReport, SingularPart, SolveOptions,
    VortexSolution,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VortexError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("Bradlow bound violated: tau*V = {tau_volume} must exceed 4*pi*d = {bound}")]
    BradlowViolation { tau_volume: f64, bound: f64 },
    #[error("divisor has degree {found}, parameters ask for {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("parameter volume {volume} does not match torus area {area}")]
    AreaMismatch { volume: f64, area: f64 },
    #[error("Newton iteration failed after {} steps, last residual {:e}", .history.len().saturating_sub(1), .history.last().copied().unwrap_or(f64::NAN))]
    NewtonDivergence {
        /// Max-norm residual at every accepted iterate, starting with the initial guess.
        history: Vec<f64>,
        /// Regular part `v` at the last iterate.
        last_iterate: Vec<f64>,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
