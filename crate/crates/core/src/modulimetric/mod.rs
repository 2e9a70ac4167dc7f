//! L² Kähler geometry of the vortex moduli space on a flat torus.
//!
//! A tangent vector moving the divisor point `p` by `e` is stored through
//! the gauge-invariant ratio `ψ = φ̇/φ`,
//!
//! `ψ = ½ δu_s + ½ δv − i Im(e S(· − p)) + iρ`,  `δu_s = −2 Re(e S) − 4π δ(offset)`,
//!
//! with `S = 4π∂_z G`, `δv` the moduli derivative of the regular part and `ρ`
//! the Coulomb-gauge phase solving `(Δ − |φ|²)ρ = −|φ|² Im(eS)`. The
//! connection part follows from the linearised holomorphicity condition:
//!
//! `Ȧ = (2π Im e / V, −2π Re e / V) + ½(∂ᵧδv, −∂ₓδv) + ∇ρ`.
//!
//! The metric is `g = (1/2π) ∫ (Ȧ·Ȧ′ + Re φ̇ conj φ̇′)` and `ω(t, t′) = g(Jt, t′)`
//! with `J(Ȧ, φ̇) = (∗Ȧ, iφ̇)`.

mod routes;
mod tangent;

use num_complex::Complex64;
use thiserror::Error;

use crate::vortexpde::{DivisorSpec, VortexError};

pub use routes::{
    chart_directions, moduli_curvature, omega_deformation, omega_fiberint, solve_stencil, volume_d1, MetricOptions,
    MetricSample, Route, Stencil,
};
pub use tangent::{apply_j, l2_pairing, omega, tangent_by_fd, ModuliTangent, METRIC_NORMALIZATION};

/// Moves divisor point `point` by the complex displacement `e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartDirection {
    pub point: usize,
    pub e: Complex64,
}

impl ChartDirection {
    pub fn new(point: usize, e: Complex64) -> Self {
        Self { point, e }
    }

    pub fn apply(&self, spec: &crate::geometry::TorusSpec, divisor: &DivisorSpec, h: f64) -> DivisorSpec {
        divisor.moved(spec, self.point, self.e * h)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModuliError {
    #[error("stencil residuals inconsistent: min {min:e}, max {max:e}")]
    StencilInconsistent { min: f64, max: f64 },
    #[error("tangent vectors live over different background solutions")]
    BackgroundMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Vortex(#[from] VortexError),
}
