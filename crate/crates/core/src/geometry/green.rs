use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ScalarField, Spectral, TorusSpec};

/// Odd Jacobi theta function `θ₁(x | ϖ)` with nome `q = e^{iπϖ}`.
#[derive(Clone, Debug)]
pub struct JacobiTheta {
    /// `(-1)^n q^{(n+½)²}` paired with the frequency `2n+1`.
    terms: Vec<(Complex64, f64)>,
}

impl JacobiTheta {
    pub fn new(modulus: Complex64) -> Self {
        let mut terms = Vec::new();
        for n in 0..64 {
            let e = (n as f64 + 0.5).powi(2);
            let coef = (Complex64::i() * PI * modulus * e).exp() * if n % 2 == 0 { 1.0 } else { -1.0 };
            // |q|^{(n+½)²} against sin growth e^{(2n+1)πb/2} on the centred cell
            let bound = (-PI * modulus.im * (e - (n as f64 + 0.5))).exp();
            terms.push((coef, 2.0 * n as f64 + 1.0));
            if n > 2 && bound < 1e-18 {
                break;
            }
        }
        Self { terms }
    }

    /// `(θ₁(x), θ₁'(x))`.
    pub fn eval_with_derivative(&self, x: Complex64) -> (Complex64, Complex64) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        for &(coef, freq) in &self.terms {
            value += coef * (x * freq).sin();
            deriv += coef * freq * (x * freq).cos();
        }
        (value * 2.0, deriv * 2.0)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.eval_with_derivative(x).0
    }
}

const LOG_FLOOR: f64 = -708.0;

/// Green's function of the flat-torus Laplacian, `Δ G(·, p) = δ_p − 1/V`,
/// in closed form
///
/// `G(z) = (1/2π) [ log|θ₁(πw | ϖ)| − π (Im w)² / Im ϖ ] − c`,  `w = (z − p)/s`,
///
/// with `c` fixed so the grid quadrature mean vanishes.
#[derive(Clone, Debug)]
pub struct GreenFunction {
    spec: TorusSpec,
    pole: Complex64,
    theta: JacobiTheta,
    offset: f64,
}

impl GreenFunction {
    pub fn new(spec: &TorusSpec, pole: Complex64) -> Self {
        let mut g = Self {
            spec: spec.clone(),
            pole: spec.reduce(pole),
            theta: JacobiTheta::new(spec.modulus()),
            offset: 0.0,
        };
        let raw = spec.grid_points().into_iter().map(|z| g.eval(z)).sum::<f64>();
        g.offset = raw / spec.len() as f64;
        g
    }

    pub fn pole(&self) -> Complex64 {
        self.pole
    }

    /// Constant subtracted from the closed form to make the grid mean zero.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Lattice-normalised displacement from the pole, centred so that both
    /// lattice coordinates lie in `[-½, ½]`.
    fn centred(&self, z: Complex64) -> Complex64 {
        let (xi1, xi2) = self.spec.to_lattice(z - self.pole);
        let (xi1, xi2) = (xi1 - xi1.round(), xi2 - xi2.round());
        Complex64::new(xi1, 0.0) + self.spec.modulus() * xi2
    }

    /// Value at an arbitrary physical point (mean-corrected).
    pub fn eval(&self, z: Complex64) -> f64 {
        let w = self.centred(z);
        let b = self.spec.modulus().im;
        let log_theta = self.theta.eval(w * PI).norm().ln().max(LOG_FLOOR);
        (log_theta - PI * w.im * w.im / b) / (2.0 * PI) - self.offset
    }

    /// `S(z) = 4π ∂_z G(z)`, which behaves like `1/(z − p)` at the pole and
    /// satisfies `∂_z̄ S = −π/V` elsewhere.
    pub fn s_kernel(&self, z: Complex64) -> Complex64 {
        let w = self.centred(z);
        let s = self.spec.scale();
        let b = self.spec.modulus().im;
        let (th, dth) = self.theta.eval_with_derivative(w * PI);
        dth / th * (PI / s) + Complex64::new(0.0, 2.0 * PI * w.im / (b * s))
    }

    /// Physical gradient `(∂ₓG, ∂ᵧG)`.
    pub fn gradient(&self, z: Complex64) -> (f64, f64) {
        let dz = self.s_kernel(z) / (4.0 * PI);
        (2.0 * dz.re, -2.0 * dz.im)
    }

    pub fn field(&self) -> ScalarField {
        ScalarField::from_fn(&self.spec, |z| self.eval(z))
    }
}

/// Zero-mean Green's function with pole `pole`, sampled on the grid.
pub fn green_function(spec: &TorusSpec, pole: Complex64) -> ScalarField {
    GreenFunction::new(spec, pole).field()
}

/// Truncated Fourier series of the same Green's function, obtained by
/// inverting the grid Laplacian on `δ_p − 1/V`. Converges slowly near the
/// pole; kept as a cross-check of the closed form.
pub fn green_function_fourier(spec: &TorusSpec, pole: Complex64) -> ScalarField {
    let spectral = Spectral::new(spec);
    let n = spec.resolution();
    let (p1, p2) = spec.to_lattice(pole);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n * n];
    let symbol = spectral.neg_laplacian_symbol();
    for j in 0..n {
        let k2 = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
        for i in 0..n {
            let k1 = if i < n / 2 { i as f64 } else { i as f64 - n as f64 };
            let idx = j * n + i;
            if idx == 0 {
                continue;
            }
            // Grid samples at cell centres carry a half-cell phase.
            let phase = 2.0 * PI * (k1 * (0.5 / n as f64 - p1) + k2 * (0.5 / n as f64 - p2));
            let delta_hat = Complex64::from_polar(n as f64 * n as f64 / spec.area(), phase);
            coeffs[idx] = -delta_hat / symbol[idx];
        }
    }
    ScalarField::from_values_unchecked(spec, spectral.inverse_real(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_and_symmetric() {
        let t = TorusSpec::new(Complex64::new(0.3, 0.9), 1.4, 32).unwrap();
        let (p1, p2) = t.periods();
        let (a, b) = (t.to_physical(0.2, 0.7), t.to_physical(0.55, 0.1));
        let ga = GreenFunction::new(&t, a);
        let gb = GreenFunction::new(&t, b);
        assert!((ga.eval(b) - ga.eval(b + p1 - p2)).abs() < 1e-10);
        assert!((ga.eval(b) + ga.offset() - gb.eval(a) - gb.offset()).abs() < 1e-12);
    }

    #[test]
    fn grid_mean_is_zero() {
        let t = TorusSpec::square(1.0, 32).unwrap();
        let g = green_function(&t, t.to_physical(0.31, 0.62));
        assert!(g.mean().abs() < 1e-12);
    }
}
