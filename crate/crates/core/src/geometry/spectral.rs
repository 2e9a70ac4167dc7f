use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{ScalarField, TorusSpec};

/// Fourier-space operators on the grid of one torus.
///
/// The Laplacian symbol is `-|K|²` for every retained mode. On Nyquist rows
/// and columns the symbol is averaged over the aliased representatives so
/// that the operator stays real and self-adjoint on non-rectangular lattices.
/// First derivatives drop the Nyquist modes.
pub struct Spectral {
    spec: TorusSpec,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    neg_laplacian: Vec<f64>,
    dx: Vec<f64>,
    dy: Vec<f64>,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral")
            .field("spec", &self.spec)
            .finish_non_exhaustive()
    }
}

fn wave_index(m: usize, n: usize) -> i64 {
    if m < n / 2 {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

impl Spectral {
    pub fn new(spec: &TorusSpec) -> Self {
        let n = spec.resolution();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let half = (n / 2) as i64;
        let mut neg_laplacian = vec![0.0; n * n];
        let mut dx = vec![0.0; n * n];
        let mut dy = vec![0.0; n * n];
        for j in 0..n {
            let k2 = wave_index(j, n);
            for i in 0..n {
                let k1 = wave_index(i, n);
                let reps1: &[i64] = if k1 == -half { &[-1, 1] } else { &[1] };
                let reps2: &[i64] = if k2 == -half { &[-1, 1] } else { &[1] };
                let mut acc = 0.0;
                for &s1 in reps1 {
                    for &s2 in reps2 {
                        let a = if k1 == -half { (s1 * half) as f64 } else { k1 as f64 };
                        let b = if k2 == -half { (s2 * half) as f64 } else { k2 as f64 };
                        acc += spec.mode_eigenvalue(a, b);
                    }
                }
                let idx = j * n + i;
                neg_laplacian[idx] = acc / (reps1.len() * reps2.len()) as f64;
                if k1 != -half && k2 != -half {
                    let (kx, ky) = spec.wave_vector(k1 as f64, k2 as f64);
                    dx[idx] = kx;
                    dy[idx] = ky;
                }
            }
        }
        Self {
            spec: spec.clone(),
            forward,
            inverse,
            neg_laplacian,
            dx,
            dy,
        }
    }

    pub fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    /// Symbol of `-Δ` in FFT storage order (index `j·N + i`).
    pub fn neg_laplacian_symbol(&self) -> &[f64] {
        &self.neg_laplacian
    }

    fn transform(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let n = self.spec.resolution();
        for row in data.chunks_exact_mut(n) {
            plan.process(row);
        }
        let mut column = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n {
                column[j] = data[j * n + i];
            }
            plan.process(&mut column);
            for j in 0..n {
                data[j * n + i] = column[j];
            }
        }
    }

    /// Forward transform of real grid values (unnormalised).
    pub fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.transform(&mut data, &self.forward);
        data
    }

    /// Inverse transform, normalised, keeping the real part.
    pub fn inverse_real(&self, mut coeffs: Vec<Complex64>) -> Vec<f64> {
        self.transform(&mut coeffs, &self.inverse);
        let norm = 1.0 / self.spec.len() as f64;
        coeffs.iter().map(|c| c.re * norm).collect()
    }

    fn apply_symbol(&self, values: &[f64], symbol: impl Fn(usize, Complex64) -> Complex64) -> Vec<f64> {
        let mut coeffs = self.forward(values);
        for (idx, c) in coeffs.iter_mut().enumerate() {
            *c = symbol(idx, *c);
        }
        self.inverse_real(coeffs)
    }

    pub fn laplacian_values(&self, values: &[f64]) -> Vec<f64> {
        // the constant mode is annihilated anyway; removing it first keeps
        // transform round-off proportional to the fluctuation only
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let centred: Vec<f64> = values.iter().map(|v| v - mean).collect();
        self.apply_symbol(&centred, |idx, c| c * (-self.neg_laplacian[idx]))
    }

    pub fn laplacian(&self, field: &ScalarField) -> ScalarField {
        ScalarField::from_values_unchecked(&self.spec, self.laplacian_values(field.values()))
    }

    pub fn dx_values(&self, values: &[f64]) -> Vec<f64> {
        self.apply_symbol(values, |idx, c| c * Complex64::new(0.0, self.dx[idx]))
    }

    pub fn dy_values(&self, values: &[f64]) -> Vec<f64> {
        self.apply_symbol(values, |idx, c| c * Complex64::new(0.0, self.dy[idx]))
    }

    /// Gradient `(∂ₓf, ∂ᵧf)` in physical coordinates, sharing one forward FFT.
    pub fn gradient_values(&self, values: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let coeffs = self.forward(values);
        let gx = coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| c * Complex64::new(0.0, self.dx[idx]))
            .collect();
        let gy = coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| c * Complex64::new(0.0, self.dy[idx]))
            .collect();
        (self.inverse_real(gx), self.inverse_real(gy))
    }

    /// Zero-mean solution of `(-Δ + shift) f = rhs`; for `shift == 0` the
    /// constant mode is set to zero.
    pub fn solve_shifted(&self, rhs: &[f64], shift: f64) -> Vec<f64> {
        self.apply_symbol(rhs, |idx, c| {
            let d = self.neg_laplacian[idx] + shift;
            if d == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                c / d
            }
        })
    }

    /// Applies `-Δ + weight` pointwise-multiplied.
    pub fn apply_screened(&self, weight: &[f64], x: &[f64]) -> Vec<f64> {
        let lap = self.laplacian_values(x);
        lap.iter().zip(weight).zip(x).map(|((l, w), v)| -l + w * v).collect()
    }

    /// Solves `(-Δ + weight) x = rhs` for a nonnegative, not identically zero
    /// weight by conjugate gradients preconditioned with `(-Δ + mean(weight))⁻¹`.
    pub fn solve_screened(&self, weight: &[f64], rhs: &[f64], rel_tol: f64, max_iter: usize) -> ScreenedSolve {
        let shift = weight.iter().sum::<f64>() / weight.len() as f64;
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let rhs_norm = dot(rhs, rhs).sqrt();
        let mut x = vec![0.0; rhs.len()];
        if rhs_norm == 0.0 {
            return ScreenedSolve {
                x,
                iterations: 0,
                relative_residual: 0.0,
            };
        }
        let mut r = rhs.to_vec();
        let mut z = self.solve_shifted(&r, shift);
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut rel = 1.0;
        let mut iterations = 0;
        while iterations < max_iter {
            iterations += 1;
            let ap = self.apply_screened(weight, &p);
            let alpha = rz / dot(&p, &ap);
            for k in 0..x.len() {
                x[k] += alpha * p[k];
                r[k] -= alpha * ap[k];
            }
            rel = dot(&r, &r).sqrt() / rhs_norm;
            if rel <= rel_tol {
                break;
            }
            z = self.solve_shifted(&r, shift);
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for k in 0..p.len() {
                p[k] = z[k] + beta * p[k];
            }
        }
        ScreenedSolve {
            x,
            iterations,
            relative_residual: rel,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScreenedSolve {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub relative_residual: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cosine_mode_is_an_eigenfunction() {
        let t = TorusSpec::new(Complex64::new(0.25, 1.1), 1.7, 32).unwrap();
        let sp = Spectral::new(&t);
        let f = ScalarField::from_lattice_fn(&t, |a, b| (2.0 * PI * (2.0 * a - 3.0 * b)).cos());
        let lam = t.mode_eigenvalue(2.0, -3.0);
        let lap = sp.laplacian(&f);
        let defect = lap.zip_map(&f, |l, v| l + lam * v).max_abs();
        assert!(defect < 1e-9 * lam, "{defect}");
    }

    #[test]
    fn shifted_solve_inverts_operator() {
        let t = TorusSpec::square(2.0, 32).unwrap();
        let sp = Spectral::new(&t);
        let rhs = ScalarField::from_lattice_fn(&t, |a, b| (2.0 * PI * a).sin() * (4.0 * PI * b).cos());
        let x = sp.solve_shifted(rhs.values(), 3.0);
        let back: Vec<f64> = sp.apply_screened(&vec![3.0; t.len()], &x);
        let err = back
            .iter()
            .zip(rhs.values())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(err < 1e-12, "{err}");
    }
}
