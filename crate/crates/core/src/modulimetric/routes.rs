use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::tangent::{check_residuals, coulomb_phase, kernel_values};
use super::{omega, tangent_by_fd, ChartDirection, ModuliError, ModuliTangent};
use crate::geometry::{ScalarField, Spectral, TorusSpec};
use crate::vortexpde::{solve_vortex_with, DivisorSpec, QuantizationSpec, SolveOptions, VortexSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Deformation,
    Fiberint,
}

impl Route {
    pub fn tag(&self) -> &'static str {
        match self {
            Route::Deformation => "deformation",
            Route::Fiberint => "fiberint",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MetricOptions {
    /// Moduli stencil step; `1e-3` of the fundamental-domain diameter when absent.
    pub step: Option<f64>,
    pub tol: f64,
    /// Combine steps `h` and `h/2` as `(4ω(h/2) − ω(h))/3`.
    pub richardson: bool,
}

impl Default for MetricOptions {
    fn default() -> Self {
        Self {
            step: None,
            tol: 1e-10,
            richardson: false,
        }
    }
}

impl MetricOptions {
    pub fn resolved_step(&self, spec: &TorusSpec) -> f64 {
        self.step.unwrap_or(1e-3 * spec.diameter())
    }
}

/// ω over the real chart directions at one moduli point; exactly
/// antisymmetric as stored.
#[derive(Clone, Debug)]
pub struct MetricSample {
    pub moduli_point: DivisorSpec,
    pub directions: Vec<ChartDirection>,
    pub omega: Vec<Vec<f64>>,
    pub route: Route,
}

impl MetricSample {
    pub fn component(&self, a: usize, b: usize) -> f64 {
        self.omega[a][b]
    }

    /// Largest absolute component.
    pub fn scale(&self) -> f64 {
        self.omega.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Max componentwise difference to another sample, relative to the
    /// larger of the two scales.
    pub fn relative_distance(&self, other: &MetricSample) -> f64 {
        let diff = self
            .omega
            .iter()
            .flatten()
            .zip(other.omega.iter().flatten())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        diff / self.scale().max(other.scale())
    }
}

/// Real chart `(Re pᵢ, Im pᵢ)` for each point of a reduced divisor.
pub fn chart_directions(divisor: &DivisorSpec) -> Result<Vec<ChartDirection>, ModuliError> {
    if divisor.multiplicities().iter().any(|&n| n != 1) {
        return Err(ModuliError::InvalidParameter(
            "moduli chart needs a divisor of distinct points".into(),
        ));
    }
    Ok((0..divisor.points().len())
        .flat_map(|i| {
            [
                ChartDirection::new(i, Complex64::new(1.0, 0.0)),
                ChartDirection::new(i, Complex64::i()),
            ]
        })
        .collect())
}

/// Solutions at the moduli point and at `m ± h·e` for every direction.
#[derive(Clone, Debug)]
pub struct Stencil {
    pub center: Arc<VortexSolution>,
    pub step: f64,
    pub directions: Vec<ChartDirection>,
    pub plus: Vec<Arc<VortexSolution>>,
    pub minus: Vec<Arc<VortexSolution>>,
}

pub fn solve_stencil(
    spectral: &Spectral,
    q: &QuantizationSpec,
    divisor: &DivisorSpec,
    directions: &[ChartDirection],
    step: f64,
    tol: f64,
) -> Result<Stencil, ModuliError> {
    if !(step > 0.0) {
        return Err(ModuliError::InvalidParameter(format!(
            "stencil step must be positive, got {step}"
        )));
    }
    let spec = spectral.spec();
    let opts = SolveOptions {
        tol,
        ..SolveOptions::default()
    };
    let center = Arc::new(solve_vortex_with(spectral, q, divisor, &opts)?);
    let warm = SolveOptions {
        initial: Some(center.regular.clone()),
        ..opts
    };
    let jobs: Vec<(usize, f64)> = (0..directions.len()).flat_map(|k| [(k, step), (k, -step)]).collect();
    let solved: Vec<Arc<VortexSolution>> = jobs
        .par_iter()
        .map(|&(k, h)| {
            let moved = directions[k].apply(spec, divisor, h);
            solve_vortex_with(spectral, q, &moved, &warm).map(Arc::new)
        })
        .collect::<Result<_, _>>()?;
    let all: Vec<&VortexSolution> = std::iter::once(center.as_ref())
        .chain(solved.iter().map(|s| s.as_ref()))
        .collect();
    check_residuals(&all, tol)?;
    let plus = solved.iter().step_by(2).cloned().collect();
    let minus = solved.iter().skip(1).step_by(2).cloned().collect();
    Ok(Stencil {
        center,
        step,
        directions: directions.to_vec(),
        plus,
        minus,
    })
}

impl Stencil {
    pub fn tangents(&self, spectral: &Spectral) -> Result<Vec<ModuliTangent>, ModuliError> {
        (0..self.directions.len())
            .map(|k| {
                tangent_by_fd(
                    spectral,
                    &self.center,
                    &self.plus[k],
                    &self.minus[k],
                    self.directions[k],
                    self.step,
                )
            })
            .collect()
    }
}

fn antisymmetric(
    n: usize,
    mut f: impl FnMut(usize, usize) -> Result<f64, ModuliError>,
) -> Result<Vec<Vec<f64>>, ModuliError> {
    let mut m = vec![vec![0.0; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let x = f(a, b)?;
            m[a][b] = x;
            m[b][a] = -x;
        }
    }
    Ok(m)
}

fn deformation_matrix(spectral: &Spectral, stencil: &Stencil) -> Result<Vec<Vec<f64>>, ModuliError> {
    let t = stencil.tangents(spectral)?;
    antisymmetric(t.len(), |a, b| omega(&t[a], &t[b]))
}

/// Moduli–moduli component `F_ab` of the universal curvature on the grid,
/// from differencing the Coulomb phase across the stencil:
/// `F_ab = ∂_b ρ_a − ∂_a ρ_b + (2π/V) Im(conj(e_a) e_b)`, the last term only
/// when both directions move the same point.
pub fn moduli_curvature(
    spectral: &Spectral,
    stencil: &Stencil,
    a: usize,
    b: usize,
) -> Result<ScalarField, ModuliError> {
    let spec = spectral.spec();
    let n = stencil.directions.len();
    if a >= n || b >= n {
        return Err(ModuliError::InvalidParameter(format!(
            "direction index out of range ({a}, {b}) for {n}"
        )));
    }
    let (da, db) = (&stencil.directions[a], &stencil.directions[b]);
    let frame = if da.point == db.point {
        2.0 * PI / spec.area() * (da.e.conj() * db.e).im
    } else {
        0.0
    };
    // ρ_p at m ± h e_q
    let phase_at = |p: usize, qd: usize| -> Result<(Vec<f64>, Vec<f64>), ModuliError> {
        let at = |bg: &VortexSolution| coulomb_phase(spectral, bg, &kernel_values(bg, &stencil.directions[p]));
        Ok((at(&stencil.plus[qd])?, at(&stencil.minus[qd])?))
    };
    let (rab_p, rab_m) = phase_at(a, b)?;
    let (rba_p, rba_m) = phase_at(b, a)?;
    let two_h = 2.0 * stencil.step;
    let values = (0..spec.len())
        .map(|k| frame + (rab_p[k] - rab_m[k]) / two_h - (rba_p[k] - rba_m[k]) / two_h)
        .collect();
    ScalarField::new(spec, values).map_err(|e| ModuliError::Vortex(e.into()))
}

/// `ω_pq = −(1/4π) ∫ [−τF_pq + 2F_pq F_xy − 2(F_px F_qy − F_py F_qx)] dA`, the
/// Σ-fiber integral of `τ ω_Σ ∧ F + F ∧ F` for the universal curvature. The
/// mixed components are the Coulomb-gauge `Ȧ` and `F_xy = −½Δv + 2πd/V`.
fn fiberint_matrix(spectral: &Spectral, stencil: &Stencil) -> Result<Vec<Vec<f64>>, ModuliError> {
    let spec = spectral.spec();
    let center = &stencil.center;
    let q = &center.quantization;
    let n = stencil.directions.len();
    let tangents = stencil.tangents(spectral)?;

    let lap_v = spectral.laplacian_values(center.regular.values());
    let flux_density = 2.0 * PI * q.degree as f64 / spec.area();
    let fxy: Vec<f64> = lap_v.iter().map(|l| -0.5 * l + flux_density).collect();

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let curvatures: Vec<ScalarField> = pairs
        .par_iter()
        .map(|&(a, b)| moduli_curvature(spectral, stencil, a, b))
        .collect::<Result<_, _>>()?;

    let weight = spec.cell_weight();
    let mut next = curvatures.iter();
    antisymmetric(n, |a, b| {
        let fab = next.next().expect("one curvature per pair").values();
        let (ta, tb) = (&tangents[a], &tangents[b]);
        let (ax_a, ay_a) = (ta.a_dot.0.values(), ta.a_dot.1.values());
        let (ax_b, ay_b) = (tb.a_dot.0.values(), tb.a_dot.1.values());
        let mut acc = 0.0;
        for k in 0..spec.len() {
            let mixed = ax_a[k] * ay_b[k] - ay_a[k] * ax_b[k];
            acc += -q.tau * fab[k] + 2.0 * fab[k] * fxy[k] - 2.0 * mixed;
        }
        Ok(-acc * weight / (4.0 * PI))
    })
}

fn sample(
    spectral: &Spectral,
    q: &QuantizationSpec,
    divisor: &DivisorSpec,
    opts: &MetricOptions,
    route: Route,
) -> Result<MetricSample, ModuliError> {
    let directions = chart_directions(divisor)?;
    let h = opts.resolved_step(spectral.spec());
    let matrix = |step: f64| -> Result<Vec<Vec<f64>>, ModuliError> {
        let stencil = solve_stencil(spectral, q, divisor, &directions, step, opts.tol)?;
        match route {
            Route::Deformation => deformation_matrix(spectral, &stencil),
            Route::Fiberint => fiberint_matrix(spectral, &stencil),
        }
    };
    let mut omega = matrix(h)?;
    if opts.richardson {
        let fine = matrix(0.5 * h)?;
        for (row, frow) in omega.iter_mut().zip(&fine) {
            for (x, f) in row.iter_mut().zip(frow) {
                *x = (4.0 * f - *x) / 3.0;
            }
        }
    }
    Ok(MetricSample {
        moduli_point: divisor.clone(),
        directions,
        omega,
        route,
    })
}

/// ω from tangent vectors and the L² pairing.
pub fn omega_deformation(
    spectral: &Spectral,
    q: &QuantizationSpec,
    divisor: &DivisorSpec,
    opts: &MetricOptions,
) -> Result<MetricSample, ModuliError> {
    sample(spectral, q, divisor, opts, Route::Deformation)
}

/// ω by fiber integration of the universal curvature.
pub fn omega_fiberint(
    spectral: &Spectral,
    q: &QuantizationSpec,
    divisor: &DivisorSpec,
    opts: &MetricOptions,
) -> Result<MetricSample, ModuliError> {
    sample(spectral, q, divisor, opts, Route::Fiberint)
}

/// Total symplectic volume of the one-vortex moduli space (the torus itself)
/// by midpoint quadrature of `ω(∂ₓ, ∂ᵧ)` over an `m × m` grid of vortex
/// positions. Returns the volume and the per-point densities.
pub fn volume_d1(
    spec: &TorusSpec,
    q: &QuantizationSpec,
    m: usize,
    opts: &MetricOptions,
) -> Result<(f64, Vec<(Complex64, f64)>), ModuliError> {
    if q.degree != 1 || q.genus != 1 {
        return Err(ModuliError::InvalidParameter(format!(
            "volume_d1 needs g = 1, d = 1, got g = {}, d = {}",
            q.genus, q.degree
        )));
    }
    if m < 4 {
        return Err(ModuliError::InvalidParameter(format!(
            "moduli grid must be at least 4x4, got {m}"
        )));
    }
    let spectral = Spectral::new(spec);
    let points: Vec<Complex64> = (0..m * m)
        .map(|k| spec.to_physical(((k % m) as f64 + 0.5) / m as f64, ((k / m) as f64 + 0.5) / m as f64))
        .collect();
    let density: Vec<(Complex64, f64)> = points
        .par_iter()
        .map(|&p| {
            let div = DivisorSpec::simple(spec, &[p])?;
            let s = omega_deformation(&spectral, q, &div, opts)?;
            Ok((p, s.component(0, 1)))
        })
        .collect::<Result<_, ModuliError>>()?;
    let volume = density.iter().map(|(_, w)| w).sum::<f64>() * spec.area() / (m * m) as f64;
    Ok((volume, density))
}
