use num_complex::Complex64;
use std::f64::consts::PI;

use super::GeometryError;

/// A flat torus `C / s(Z + ϖZ)` rescaled so that its area is `area`, together
/// with an `N×N` cell-centred grid in lattice coordinates.
///
/// Points of the torus are written either as physical complex positions `z`
/// or as lattice coordinates `(ξ₁, ξ₂) ∈ [0,1)²` with `z = s(ξ₁ + ϖ ξ₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSpec {
    modulus: Complex64,
    area: f64,
    resolution: usize,
    scale: f64,
}

impl TorusSpec {
    pub fn new(modulus: Complex64, area: f64, resolution: usize) -> Result<Self, GeometryError> {
        if !(modulus.im > 0.0) || !modulus.re.is_finite() || !modulus.im.is_finite() {
            return Err(GeometryError::InvalidModulus(modulus));
        }
        if !(area > 0.0) || !area.is_finite() {
            return Err(GeometryError::InvalidArea(area));
        }
        if resolution < 32 || !resolution.is_power_of_two() {
            return Err(GeometryError::InvalidResolution(resolution));
        }
        Ok(Self {
            modulus,
            area,
            resolution,
            scale: (area / modulus.im).sqrt(),
        })
    }

    /// Square torus of the given area.
    pub fn square(area: f64, resolution: usize) -> Result<Self, GeometryError> {
        Self::new(Complex64::new(0.0, 1.0), area, resolution)
    }

    pub fn modulus(&self) -> Complex64 {
        self.modulus
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Length of the first period; the lattice is `scale · (Z + ϖZ)`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Same torus and modulus at a different grid resolution.
    pub fn with_resolution(&self, resolution: usize) -> Result<Self, GeometryError> {
        Self::new(self.modulus, self.area, resolution)
    }

    pub fn len(&self) -> usize {
        self.resolution * self.resolution
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight of a single cell. `N` is a power of two so
    /// `N² · weight == area` holds exactly in floating point.
    pub fn cell_weight(&self) -> f64 {
        self.area / (self.len() as f64)
    }

    pub fn periods(&self) -> (Complex64, Complex64) {
        (Complex64::new(self.scale, 0.0), self.modulus * self.scale)
    }

    /// Physical position of a lattice coordinate pair.
    pub fn to_physical(&self, xi1: f64, xi2: f64) -> Complex64 {
        (Complex64::new(xi1, 0.0) + self.modulus * xi2) * self.scale
    }

    /// Lattice coordinates of a physical position (not reduced).
    pub fn to_lattice(&self, z: Complex64) -> (f64, f64) {
        let w = z / self.scale;
        let xi2 = w.im / self.modulus.im;
        let xi1 = w.re - self.modulus.re * xi2;
        (xi1, xi2)
    }

    /// Representative of `z` in the fundamental parallelogram `[0,1)²`.
    pub fn reduce(&self, z: Complex64) -> Complex64 {
        let (xi1, xi2) = self.to_lattice(z);
        self.to_physical(xi1.rem_euclid(1.0), xi2.rem_euclid(1.0))
    }

    /// Representative of `z` closest to the origin among the nine lattice
    /// translates of its parallelogram representative.
    pub fn reduce_centered(&self, z: Complex64) -> Complex64 {
        let (xi1, xi2) = self.to_lattice(z);
        let base = self.to_physical(xi1 - xi1.round(), xi2 - xi2.round());
        let (p1, p2) = self.periods();
        let mut best = base;
        for a in -1..=1 {
            for b in -1..=1 {
                let cand = base + p1 * (a as f64) + p2 * (b as f64);
                if cand.norm_sqr() < best.norm_sqr() {
                    best = cand;
                }
            }
        }
        best
    }

    /// Geodesic distance on the torus.
    pub fn distance(&self, a: Complex64, b: Complex64) -> f64 {
        self.reduce_centered(a - b).norm()
    }

    /// Longest diagonal of the fundamental parallelogram.
    pub fn diameter(&self) -> f64 {
        let (p1, p2) = self.periods();
        (p1 + p2).norm().max((p2 - p1).norm())
    }

    /// Lattice coordinates of the centre of cell `(i, j)`; `i` indexes ξ₁.
    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        let n = self.resolution as f64;
        ((i as f64 + 0.5) / n, (j as f64 + 0.5) / n)
    }

    /// Physical positions of every grid point in row-major `(j, i)` order,
    /// i.e. index `j * N + i`.
    pub fn grid_points(&self) -> Vec<Complex64> {
        let n = self.resolution;
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                let (a, b) = self.cell_center(i, j);
                out.push(self.to_physical(a, b));
            }
        }
        out
    }

    /// Physical wave vector `K` of the Fourier mode `exp(2πi(k₁ξ₁ + k₂ξ₂))`.
    pub fn wave_vector(&self, k1: f64, k2: f64) -> (f64, f64) {
        let s = self.scale;
        let (a, b) = (self.modulus.re, self.modulus.im);
        (2.0 * PI * k1 / s, 2.0 * PI * (k2 - a * k1) / (s * b))
    }

    /// Eigenvalue of `-Δ` on the mode `(k₁, k₂)`: `4π² |k₂ − k₁ϖ|² / (V Im ϖ)`.
    pub fn mode_eigenvalue(&self, k1: f64, k2: f64) -> f64 {
        let (kx, ky) = self.wave_vector(k1, k2);
        kx * kx + ky * ky
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sheared() -> TorusSpec {
        TorusSpec::new(Complex64::new(0.3, 1.2), 2.5, 32).unwrap()
    }

    #[test]
    fn periods_span_the_area() {
        let t = sheared();
        let (p1, p2) = t.periods();
        assert!(((p1.conj() * p2).im - t.area()).abs() < 1e-12);
        assert!((t.cell_weight() * t.len() as f64 - t.area()).abs() < 1e-12);
    }

    #[test]
    fn lattice_round_trip_and_reduction() {
        let t = sheared();
        let z = t.to_physical(1.7, -0.4);
        let (a, b) = t.to_lattice(z);
        assert!((a - 1.7).abs() < 1e-12 && (b + 0.4).abs() < 1e-12);
        let r = t.reduce(z);
        assert!((r - t.to_physical(0.7, 0.6)).norm() < 1e-12);
        let (p1, p2) = t.periods();
        assert!(t.distance(z, z + p1 - 2.0 * p2) < 1e-12);
        let w = Complex64::new(0.1, 0.05);
        assert!((t.distance(z, z + w) - w.norm()).abs() < 1e-12);
    }
}
