use std::f64::consts::PI;

use num_complex::Complex64;

use super::{DivisorSpec, QuantizationSpec, VortexError};
use crate::geometry::{GreenFunction, ScalarField, Spectral, TorusSpec};

/// `u_s = 4π Σ nᵢ G(·, zᵢ)` as a pointwise function.
#[derive(Clone, Debug)]
pub struct SingularPart {
    spec: TorusSpec,
    terms: Vec<(GreenFunction, f64)>,
}

impl SingularPart {
    pub fn new(spec: &TorusSpec, divisor: &DivisorSpec) -> Self {
        let terms = divisor
            .iter()
            .map(|(z, n)| (GreenFunction::new(spec, z), n as f64))
            .collect();
        Self {
            spec: spec.clone(),
            terms,
        }
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        self.terms.iter().map(|(g, n)| 4.0 * PI * n * g.eval(z)).sum()
    }

    /// `Σ nᵢ S(z − zᵢ)`; equals `∂_z u_s`.
    pub fn kernel_sum(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|(g, n)| g.s_kernel(z) * *n).sum()
    }

    pub fn greens(&self) -> impl Iterator<Item = (&GreenFunction, f64)> {
        self.terms.iter().map(|(g, n)| (g, *n))
    }

    pub fn field(&self) -> ScalarField {
        ScalarField::from_fn(&self.spec, |z| self.eval(z))
    }
}

pub fn singular_part(spec: &TorusSpec, divisor: &DivisorSpec) -> ScalarField {
    SingularPart::new(spec, divisor).field()
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Starting regular part; `v = 0` when absent.
    pub initial: Option<ScalarField>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 100,
            initial: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VortexSolution {
    pub quantization: QuantizationSpec,
    pub divisor: DivisorSpec,
    pub singular: ScalarField,
    pub regular: ScalarField,
    pub u: ScalarField,
    pub residual_norm: f64,
    pub residual_history: Vec<f64>,
    /// Tolerance the solve was run with.
    pub tol: f64,
    pub higgs_density: ScalarField,
    pub curvature_density: ScalarField,
    pub flux: f64,
    pub higgs_l2: f64,
}

impl VortexSolution {
    pub fn spec(&self) -> &TorusSpec {
        self.u.spec()
    }

    pub fn iterations(&self) -> usize {
        self.residual_history.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObservablesReport {
    pub flux: f64,
    pub higgs_l2: f64,
    pub higgs_min: f64,
    pub higgs_max: f64,
    pub residual_norm: f64,
}

pub fn observables_report(sol: &VortexSolution) -> ObservablesReport {
    ObservablesReport {
        flux: sol.flux,
        higgs_l2: sol.higgs_l2,
        higgs_min: sol.higgs_density.min(),
        higgs_max: sol.higgs_density.max(),
        residual_norm: sol.residual_norm,
    }
}

pub fn solve_vortex(
    spec: &TorusSpec,
    q: &QuantizationSpec,
    divisor: &DivisorSpec,
    tol: f64,
) -> Result<VortexSolution, VortexError> {
    let opts = SolveOptions {
        tol,
        ..SolveOptions::default()
    };
    solve_vortex_with(&Spectral::new(spec), q, divisor, &opts)
}

const MAX_HALVINGS: usize = 40;

/// Damped Newton on `F(v) = Δv − τ(e^{u_s+v} − 1) − 4πd/V`. Each step solves
/// `(−Δ + τe^u) δ = F` by preconditioned conjugate gradients; the step is
/// halved until the max-norm residual does not increase.
pub fn solve_vortex_with(
    spectral: &Spectral,
    q: &QuantizationSpec,
    divisor: &DivisorSpec,
    opts: &SolveOptions,
) -> Result<VortexSolution, VortexError> {
    let spec = spectral.spec();
    if !(opts.tol > 0.0) {
        return Err(VortexError::InvalidParameter(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    if divisor.degree() != q.degree {
        return Err(VortexError::DegreeMismatch {
            expected: q.degree,
            found: divisor.degree(),
        });
    }
    if (q.volume - spec.area()).abs() > 1e-12 * spec.area() {
        return Err(VortexError::AreaMismatch {
            volume: q.volume,
            area: spec.area(),
        });
    }
    q.check_bradlow()?;

    let tau = q.tau;
    let source = 4.0 * PI * q.degree as f64 / q.volume;
    let us = singular_part(spec, divisor);
    let us_vals = us.values();
    let residual = |v: &[f64]| -> (Vec<f64>, Vec<f64>, f64) {
        let lap = spectral.laplacian_values(v);
        let w: Vec<f64> = us_vals.iter().zip(v).map(|(a, b)| tau * (a + b).exp()).collect();
        let f: Vec<f64> = lap.iter().zip(&w).map(|(l, wk)| l - wk + tau - source).collect();
        let norm = f.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        (f, w, norm)
    };

    let mut v = match &opts.initial {
        Some(init) if init.spec() == spec => init.values().to_vec(),
        Some(_) => {
            return Err(VortexError::InvalidParameter(
                "initial guess lives on a different grid".into(),
            ))
        }
        None => vec![0.0; spec.len()],
    };
    let (mut f, mut w, mut norm) = residual(&v);
    let mut history = vec![norm];
    while norm > opts.tol {
        if history.len() > opts.max_iter || !norm.is_finite() {
            return Err(VortexError::NewtonDivergence {
                history,
                last_iterate: v,
            });
        }
        let step = spectral.solve_screened(&w, &f, 1e-13, 500).x;
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let trial: Vec<f64> = v.iter().zip(&step).map(|(a, d)| a + alpha * d).collect();
            let (tf, tw, tn) = residual(&trial);
            if tn <= norm {
                accepted = Some((trial, tf, tw, tn));
                break;
            }
            alpha *= 0.5;
        }
        match accepted {
            Some((nv, nf, nw, nn)) => {
                // stalled at round-off level
                if nn == norm {
                    history.push(nn);
                    return Err(VortexError::NewtonDivergence {
                        history,
                        last_iterate: nv,
                    });
                }
                v = nv;
                f = nf;
                w = nw;
                norm = nn;
                history.push(norm);
            }
            None => {
                return Err(VortexError::NewtonDivergence {
                    history,
                    last_iterate: v,
                })
            }
        }
    }

    let regular = ScalarField::new(spec, v)?;
    let u = us.zip_map(&regular, |a, b| a + b);
    let higgs_density = u.map(|x| tau * x.exp());
    let curvature_density = higgs_density.map(|h| 0.5 * (tau - h));
    let flux = curvature_density.integral();
    let higgs_l2 = higgs_density.integral();
    Ok(VortexSolution {
        quantization: q.clone(),
        divisor: divisor.clone(),
        singular: us,
        regular,
        u,
        residual_norm: norm,
        residual_history: history,
        tol: opts.tol,
        higgs_density,
        curvature_density,
        flux,
        higgs_l2,
    })
}
