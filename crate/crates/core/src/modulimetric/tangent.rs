use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::{ChartDirection, ModuliError};
use crate::geometry::{GreenFunction, ScalarField, Spectral};
use crate::vortexpde::VortexSolution;

/// Prefactor of the L² pairing in these field conventions. With it the d = 1
/// moduli volume is τV/2, matching the Kähler class pairing.
pub const METRIC_NORMALIZATION: f64 = 1.0 / (2.0 * PI);

const COULOMB_TOL: f64 = 1e-12;
const COULOMB_MAX_ITER: usize = 400;

/// Tangent vector to the moduli space at a background solution, in Coulomb
/// gauge.
#[derive(Clone, Debug)]
pub struct ModuliTangent {
    pub direction: ChartDirection,
    /// `(Ȧₓ, Ȧᵧ)`.
    pub a_dot: (ScalarField, ScalarField),
    /// `(Re, Im)` of `ψ|φ|`.
    pub phi_dot_density: (ScalarField, ScalarField),
    /// Coulomb phase `ρ`.
    pub phase: ScalarField,
    background: Arc<VortexSolution>,
}

impl ModuliTangent {
    pub fn background(&self) -> &Arc<VortexSolution> {
        &self.background
    }

    /// Max-norm of `div Ȧ − Im(conj φ · φ̇)`, relative to the size of either term.
    pub fn coulomb_defect(&self, spectral: &Spectral) -> f64 {
        let div = spectral
            .dx_values(self.a_dot.0.values())
            .iter()
            .zip(spectral.dy_values(self.a_dot.1.values()))
            .map(|(a, b)| a + b)
            .collect::<Vec<_>>();
        let source: Vec<f64> = self
            .background
            .higgs_density
            .values()
            .iter()
            .zip(self.phi_dot_density.1.values())
            .map(|(w, d)| w.sqrt() * d)
            .collect();
        let scale = div.iter().chain(&source).fold(0.0_f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        div.iter().zip(&source).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())) / scale
    }
}

/// `e·S(z − p)` on the grid; zero where the pole sits exactly on a node.
pub(crate) fn kernel_values(background: &VortexSolution, dir: &ChartDirection) -> Vec<Complex64> {
    let spec = background.spec();
    let pole = background.divisor.points()[dir.point];
    let g = GreenFunction::new(spec, pole);
    spec.grid_points()
        .into_iter()
        .map(|z| {
            let s = g.s_kernel(z) * dir.e;
            if s.re.is_finite() && s.im.is_finite() {
                s
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect()
}

/// Coulomb phase `ρ` at a background for the given direction.
pub(crate) fn coulomb_phase(
    spectral: &Spectral,
    background: &VortexSolution,
    es: &[Complex64],
) -> Result<Vec<f64>, ModuliError> {
    let w = background.higgs_density.values();
    let rhs: Vec<f64> = w.iter().zip(es).map(|(wk, s)| wk * s.im).collect();
    let sol = spectral.solve_screened(w, &rhs, COULOMB_TOL, COULOMB_MAX_ITER);
    if sol.relative_residual > 1e-10 {
        return Err(ModuliError::InvalidParameter(format!(
            "Coulomb gauge solve stalled at relative residual {:e}",
            sol.relative_residual
        )));
    }
    Ok(sol.x)
}

pub(crate) fn check_residuals(solutions: &[&VortexSolution], tol: f64) -> Result<(), ModuliError> {
    let min = solutions.iter().map(|s| s.residual_norm).fold(f64::INFINITY, f64::min);
    let max = solutions.iter().map(|s| s.residual_norm).fold(0.0, f64::max);
    if max > 10.0 * min.max(tol) {
        return Err(ModuliError::StencilInconsistent { min, max });
    }
    Ok(())
}

/// Central-difference tangent from the solutions at `m ± h·e`.
pub fn tangent_by_fd(
    spectral: &Spectral,
    center: &Arc<VortexSolution>,
    plus: &VortexSolution,
    minus: &VortexSolution,
    direction: ChartDirection,
    h: f64,
) -> Result<ModuliTangent, ModuliError> {
    let spec = spectral.spec();
    if !(h > 0.0) {
        return Err(ModuliError::InvalidParameter(format!(
            "stencil step must be positive, got {h}"
        )));
    }
    if direction.point >= center.divisor.points().len() {
        return Err(ModuliError::InvalidParameter(format!(
            "no divisor point {}",
            direction.point
        )));
    }
    if center.divisor.multiplicities()[direction.point] != 1 {
        return Err(ModuliError::InvalidParameter(
            "moving a point of multiplicity > 1".into(),
        ));
    }
    check_residuals(&[center, plus, minus], center.tol)?;

    let area = spec.area();
    let w = center.higgs_density.values();
    let es = kernel_values(center, &direction);
    let dv: Vec<f64> = plus
        .regular
        .values()
        .iter()
        .zip(minus.regular.values())
        .map(|(a, b)| (a - b) / (2.0 * h))
        .collect();
    // The Green's function normalisation is a grid mean, which moves with
    // the pole on the scale of one cell; differencing it with the same
    // stencil as v cancels that motion exactly in ∂h = ∂u_s + ∂v.
    let pole = center.divisor.points()[direction.point];
    let offset_rate = (GreenFunction::new(spec, pole + direction.e * h).offset()
        - GreenFunction::new(spec, pole - direction.e * h).offset())
        / (2.0 * h);
    let dus: Vec<f64> = es.iter().map(|s| -2.0 * s.re - 4.0 * PI * offset_rate).collect();
    let rho = coulomb_phase(spectral, center, &es)?;

    let mut re = Vec::with_capacity(w.len());
    let mut im = Vec::with_capacity(w.len());
    for k in 0..w.len() {
        let amp = w[k].sqrt();
        re.push(amp * 0.5 * (dus[k] + dv[k]));
        im.push(amp * (rho[k] - es[k].im));
    }
    let (dvx, dvy) = spectral.gradient_values(&dv);
    let (rx, ry) = spectral.gradient_values(&rho);
    let cx = 2.0 * PI * direction.e.im / area;
    let cy = -2.0 * PI * direction.e.re / area;
    let ax: Vec<f64> = (0..w.len()).map(|k| cx + 0.5 * dvy[k] + rx[k]).collect();
    let ay: Vec<f64> = (0..w.len()).map(|k| cy - 0.5 * dvx[k] + ry[k]).collect();

    let field = |v: Vec<f64>| ScalarField::new(spec, v).map_err(|e| ModuliError::Vortex(e.into()));
    Ok(ModuliTangent {
        direction,
        a_dot: (field(ax)?, field(ay)?),
        phi_dot_density: (field(re)?, field(im)?),
        phase: field(rho)?,
        background: Arc::clone(center),
    })
}

fn same_background(a: &ModuliTangent, b: &ModuliTangent) -> bool {
    Arc::ptr_eq(&a.background, &b.background)
        || (a.background.divisor == b.background.divisor
            && a.background.quantization == b.background.quantization
            && a.background.spec() == b.background.spec())
}

/// `g(t₁, t₂) = (1/2π) ∫ (Ȧ₁·Ȧ₂ + Re φ̇₁ conj φ̇₂) dA`.
pub fn l2_pairing(t1: &ModuliTangent, t2: &ModuliTangent) -> Result<f64, ModuliError> {
    if !same_background(t1, t2) {
        return Err(ModuliError::BackgroundMismatch);
    }
    let spec = t1.background.spec();
    let dot = |a: &ScalarField, b: &ScalarField| a.values().iter().zip(b.values()).map(|(x, y)| x * y).sum::<f64>();
    let total = dot(&t1.a_dot.0, &t2.a_dot.0)
        + dot(&t1.a_dot.1, &t2.a_dot.1)
        + dot(&t1.phi_dot_density.0, &t2.phi_dot_density.0)
        + dot(&t1.phi_dot_density.1, &t2.phi_dot_density.1);
    Ok(METRIC_NORMALIZATION * total * spec.cell_weight())
}

/// `J(Ȧ, φ̇) = (∗Ȧ, iφ̇)` with `∗(αₓ, αᵧ) = (−αᵧ, αₓ)`.
pub fn apply_j(t: &ModuliTangent) -> ModuliTangent {
    let mut out = t.clone();
    out.a_dot = (t.a_dot.1.scaled(-1.0), t.a_dot.0.clone());
    out.phi_dot_density = (t.phi_dot_density.1.scaled(-1.0), t.phi_dot_density.0.clone());
    out.direction.e = t.direction.e * Complex64::i();
    out
}

/// `ω(t₁, t₂) = g(Jt₁, t₂)`.
pub fn omega(t1: &ModuliTangent, t2: &ModuliTangent) -> Result<f64, ModuliError> {
    l2_pairing(&apply_j(t1), t2)
}
