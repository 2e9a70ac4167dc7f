use std::f64::consts::PI;

use num_complex::Complex64;

use super::VortexError;
use crate::geometry::TorusSpec;

/// Global physical and topological data: genus `g`, vortex number `d`,
/// symmetry-breaking scale `τ` and surface area `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantizationSpec {
    pub genus: u32,
    pub degree: u32,
    pub tau: f64,
    pub volume: f64,
}

impl QuantizationSpec {
    pub fn new(genus: u32, degree: u32, tau: f64, volume: f64) -> Result<Self, VortexError> {
        if degree == 0 {
            return Err(VortexError::InvalidParameter("degree must be positive".into()));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(VortexError::InvalidParameter(format!(
                "tau must be positive, got {tau}"
            )));
        }
        if !(volume > 0.0 && volume.is_finite()) {
            return Err(VortexError::InvalidParameter(format!(
                "volume must be positive, got {volume}"
            )));
        }
        Ok(Self {
            genus,
            degree,
            tau,
            volume,
        })
    }

    /// Parameters fixed through the level: `τ = 4πk / V`.
    pub fn from_level(genus: u32, degree: u32, level: f64, volume: f64) -> Result<Self, VortexError> {
        Self::new(genus, degree, 4.0 * PI * level / volume, volume)
    }

    /// `k = τV / 4π`, recomputed from `(τ, V)` on every call.
    pub fn level(&self) -> f64 {
        self.tau * self.volume / (4.0 * PI)
    }

    /// `τV − 4πd`; positive exactly in the regime where d-vortices exist
    /// with nonvanishing Higgs field.
    pub fn bradlow_excess(&self) -> f64 {
        self.tau * self.volume - 4.0 * PI * self.degree as f64
    }

    pub fn check_bradlow(&self) -> Result<(), VortexError> {
        if self.bradlow_excess() > 0.0 {
            Ok(())
        } else {
            Err(VortexError::BradlowViolation {
                tau_volume: self.tau * self.volume,
                bound: 4.0 * PI * self.degree as f64,
            })
        }
    }
}

/// Effective divisor on a torus: distinct points with positive multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorSpec {
    points: Vec<Complex64>,
    multiplicities: Vec<u32>,
}

const MERGE_DISTANCE: f64 = 1e-12;

impl DivisorSpec {
    /// Reduces points to the fundamental parallelogram and merges coincident
    /// points by adding multiplicities.
    pub fn new(spec: &TorusSpec, entries: &[(Complex64, u32)]) -> Result<Self, VortexError> {
        let mut points: Vec<Complex64> = Vec::new();
        let mut multiplicities: Vec<u32> = Vec::new();
        for &(z, n) in entries {
            if n == 0 {
                return Err(VortexError::InvalidParameter("multiplicities must be positive".into()));
            }
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(VortexError::InvalidParameter(format!(
                    "divisor point {z} is not finite"
                )));
            }
            let z = spec.reduce(z);
            match points.iter().position(|&p| spec.distance(p, z) < MERGE_DISTANCE) {
                Some(k) => multiplicities[k] += n,
                None => {
                    points.push(z);
                    multiplicities.push(n);
                }
            }
        }
        if points.is_empty() {
            return Err(VortexError::InvalidParameter("divisor must be nonempty".into()));
        }
        Ok(Self { points, multiplicities })
    }

    /// Divisor of simple points.
    pub fn simple(spec: &TorusSpec, points: &[Complex64]) -> Result<Self, VortexError> {
        let entries: Vec<_> = points.iter().map(|&z| (z, 1)).collect();
        Self::new(spec, &entries)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn degree(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Complex64, u32)> + '_ {
        self.points.iter().copied().zip(self.multiplicities.iter().copied())
    }

    /// Same divisor with point `index` displaced by `delta`.
    pub fn moved(&self, spec: &TorusSpec, index: usize, delta: Complex64) -> Self {
        let mut out = self.clone();
        out.points[index] = spec.reduce(out.points[index] + delta);
        out
    }

    /// Same divisor with every point displaced by `delta`.
    pub fn translated(&self, spec: &TorusSpec, delta: Complex64) -> Self {
        let mut out = self.clone();
        for p in &mut out.points {
            *p = spec.reduce(*p + delta);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_round_trip_and_bradlow_strictness() {
        let q = QuantizationSpec::from_level(1, 2, 3.0, 2.0).unwrap();
        assert!((q.level() - 3.0).abs() < 1e-14);
        assert!(q.check_bradlow().is_ok());
        let at = QuantizationSpec::from_level(1, 3, 3.0, 2.0).unwrap();
        assert!(matches!(at.check_bradlow(), Err(VortexError::BradlowViolation { .. })));
        assert!(QuantizationSpec::new(1, 0, 1.0, 1.0).is_err());
        assert!(QuantizationSpec::new(1, 1, f64::INFINITY, 1.0).is_err());
        assert!(QuantizationSpec::new(1, 1, 1.0, -1.0).is_err());
    }

    #[test]
    fn divisor_merges_lattice_equivalent_points() {
        let t = TorusSpec::square(1.0, 32).unwrap();
        let p = Complex64::new(0.2, 0.3);
        let div = DivisorSpec::new(
            &t,
            &[
                (p, 1),
                (p + Complex64::new(1.0, -1.0), 2),
                (Complex64::new(0.7, 0.1), 1),
            ],
        )
        .unwrap();
        assert_eq!(div.points().len(), 2);
        assert_eq!(div.degree(), 4);
        assert!(div.iter().any(|(z, m)| (z - p).norm() < 1e-12 && m == 3));
        assert!(DivisorSpec::simple(&t, &[]).is_err());
        assert!(DivisorSpec::new(&t, &[(p, 0)]).is_err());
    }
}
