//! Flat tori, grid functions and harmonic analysis on them.
//!
//! Sign convention used throughout the crate: `Δ` is the Laplace–Beltrami
//! operator with nonpositive spectrum, so `Δ cos(2πx) = −4π² cos(2πx)` on the
//! unit square torus.

mod field;
mod green;
mod spectral;
mod torus;

use num_complex::Complex64;
use thiserror::Error;

pub use field::ScalarField;
pub use green::{green_function, green_function_fourier, GreenFunction, JacobiTheta};
pub use spectral::{ScreenedSolve, Spectral};
pub use torus::TorusSpec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("torus modulus must have positive imaginary part, got {0}")]
    InvalidModulus(Complex64),
    #[error("torus area must be positive and finite, got {0}")]
    InvalidArea(f64),
    #[error("grid resolution must be a power of two >= 32, got {0}")]
    InvalidResolution(usize),
    #[error("field has {found} samples, grid needs {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("field sample {index} is not finite")]
    NonFinite { index: usize },
    #[error("right-hand side has mean {mean:e} (max norm {max_norm:e}); Poisson problem is not solvable")]
    NonZeroMean { mean: f64, max_norm: f64 },
}

pub fn build_torus(modulus: Complex64, area: f64, resolution: usize) -> Result<TorusSpec, GeometryError> {
    TorusSpec::new(modulus, area, resolution)
}

/// Zero-mean solution of `Δ f = rhs`.
pub fn solve_poisson(spec: &TorusSpec, rhs: &ScalarField) -> Result<ScalarField, GeometryError> {
    solve_poisson_with(&Spectral::new(spec), rhs)
}

pub fn solve_poisson_with(spectral: &Spectral, rhs: &ScalarField) -> Result<ScalarField, GeometryError> {
    let mean = rhs.mean();
    let max_norm = rhs.max_abs();
    if mean.abs() > 1e-12 * max_norm {
        return Err(GeometryError::NonZeroMean { mean, max_norm });
    }
    let neg = spectral.solve_shifted(rhs.values(), 0.0);
    Ok(ScalarField::from_values_unchecked(
        spectral.spec(),
        neg.into_iter().map(|v| -v).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn square(n: usize) -> TorusSpec {
        build_torus(Complex64::new(0.0, 1.0), 1.0, n).unwrap()
    }

    #[test]
    fn build_torus_validates_input() {
        let t = square(128);
        assert_eq!(t.resolution(), 128);
        assert_eq!(t.cell_weight() * (t.len() as f64), 1.0);
        let rect = build_torus(Complex64::new(0.0, 2.0), 1.0, 64).unwrap();
        let (p1, p2) = rect.periods();
        assert!((p2.norm() / p1.norm() - 2.0).abs() < 1e-14);
        assert!(matches!(
            build_torus(Complex64::new(0.5, 0.0), 1.0, 64),
            Err(GeometryError::InvalidModulus(_))
        ));
        assert!(matches!(
            build_torus(Complex64::new(0.0, 1.0), 1.0, 48),
            Err(GeometryError::InvalidResolution(48))
        ));
        assert!(matches!(
            build_torus(Complex64::new(0.0, 1.0), 1.0, 16),
            Err(GeometryError::InvalidResolution(16))
        ));
    }

    #[test]
    fn quadrature_weights_sum_to_area() {
        for &(m, v) in &[((0.3, 1.7), 2.5), ((0.5, 0.866), 0.1), ((0.0, 1.0), 7.0)] {
            let t = build_torus(Complex64::new(m.0, m.1), v, 64).unwrap();
            assert_eq!(ScalarField::constant(&t, 1.0).integral(), v);
        }
    }

    #[test]
    fn poisson_cosine_eigenfunction() {
        let t = square(128);
        let rhs = ScalarField::from_lattice_fn(&t, |x, _| -4.0 * PI * PI * (2.0 * PI * x).cos());
        let f = solve_poisson(&t, &rhs).unwrap();
        let exact = ScalarField::from_lattice_fn(&t, |x, _| (2.0 * PI * x).cos());
        let err = f.zip_map(&exact, |a, b| a - b).max_abs();
        assert!(err < 1e-12, "err {err}");
    }

    #[test]
    fn poisson_zero_and_constant() {
        let t = square(64);
        let f = solve_poisson(&t, &ScalarField::zeros(&t)).unwrap();
        assert_eq!(f.max_abs(), 0.0);
        assert!(matches!(
            solve_poisson(&t, &ScalarField::constant(&t, 1.0)),
            Err(GeometryError::NonZeroMean { .. })
        ));
    }

    #[test]
    fn laplacian_symbol_matches_mode_eigenvalues_on_sheared_torus() {
        let t = build_torus(Complex64::new(0.5, 3f64.sqrt() / 2.0), 1.3, 64).unwrap();
        let sp = Spectral::new(&t);
        for &(k1, k2) in &[(1.0, 0.0), (0.0, 1.0), (3.0, -2.0), (-5.0, 7.0)] {
            let mode = ScalarField::from_lattice_fn(&t, |a, b| (2.0 * PI * (k1 * a + k2 * b)).cos());
            let lap = sp.laplacian(&mode);
            let lam = t.mode_eigenvalue(k1, k2);
            let defect = lap.zip_map(&mode, |l, m| l + lam * m).max_abs() / lam;
            assert!(defect < 1e-11, "mode ({k1},{k2}) defect {defect}");
        }
    }

    #[test]
    fn gradient_of_plane_wave() {
        let t = build_torus(Complex64::new(0.2, 1.1), 1.0, 64).unwrap();
        let sp = Spectral::new(&t);
        let (k1, k2) = (2.0, -1.0);
        let (kx, ky) = t.wave_vector(k1, k2);
        let f = ScalarField::from_lattice_fn(&t, |a, b| (2.0 * PI * (k1 * a + k2 * b)).sin());
        let (gx, gy) = sp.gradient_values(f.values());
        let c = ScalarField::from_lattice_fn(&t, |a, b| (2.0 * PI * (k1 * a + k2 * b)).cos());
        for idx in 0..t.len() {
            assert!((gx[idx] - kx * c.values()[idx]).abs() < 1e-10);
            assert!((gy[idx] - ky * c.values()[idx]).abs() < 1e-10);
        }
    }
}
