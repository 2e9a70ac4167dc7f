use super::{GeometryError, TorusSpec};

/// Real samples at the cell centres of a torus grid, stored row-major with
/// index `j·N + i` where `i` runs along the first period.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    spec: TorusSpec,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(spec: &TorusSpec, values: Vec<f64>) -> Result<Self, GeometryError> {
        if values.len() != spec.len() {
            return Err(GeometryError::ShapeMismatch {
                expected: spec.len(),
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite { index });
        }
        Ok(Self {
            spec: spec.clone(),
            values,
        })
    }

    pub(crate) fn from_values_unchecked(spec: &TorusSpec, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), spec.len());
        Self {
            spec: spec.clone(),
            values,
        }
    }

    pub fn zeros(spec: &TorusSpec) -> Self {
        Self::from_values_unchecked(spec, vec![0.0; spec.len()])
    }

    pub fn constant(spec: &TorusSpec, value: f64) -> Self {
        Self::from_values_unchecked(spec, vec![value; spec.len()])
    }

    /// Samples `f` at every grid point, given its physical position.
    pub fn from_fn(spec: &TorusSpec, f: impl Fn(num_complex::Complex64) -> f64) -> Self {
        let values = spec.grid_points().into_iter().map(f).collect();
        Self::from_values_unchecked(spec, values)
    }

    /// Samples `f` at every grid point, given its lattice coordinates.
    pub fn from_lattice_fn(spec: &TorusSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = spec.resolution();
        let mut values = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                let (a, b) = spec.cell_center(i, j);
                values.push(f(a, b));
            }
        }
        Self::from_values_unchecked(spec, values)
    }

    pub fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.spec.resolution() + i]
    }

    /// Quadrature `∫ f dA` with equal cell weights.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spec.cell_weight()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_values_unchecked(&self.spec, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        debug_assert_eq!(self.values.len(), other.values.len());
        Self::from_values_unchecked(
            &self.spec,
            self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        )
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|v| v * factor)
    }

    /// Subtracts the grid mean so that the quadrature integral vanishes.
    pub fn without_mean(&self) -> Self {
        let mean = self.mean();
        self.map(|v| v - mean)
    }

    /// Cyclic shift of the grid by whole cells: `out(i, j) = self(i - di, j - dj)`.
    pub fn shifted(&self, di: isize, dj: isize) -> Self {
        let n = self.spec.resolution() as isize;
        let mut values = vec![0.0; self.values.len()];
        for j in 0..n {
            for i in 0..n {
                let si = (i - di).rem_euclid(n);
                let sj = (j - dj).rem_euclid(n);
                values[(j * n + i) as usize] = self.values[(sj * n + si) as usize];
            }
        }
        Self::from_values_unchecked(&self.spec, values)
    }

    /// Cell-centre values with their physical coordinates, for CSV export.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.spec
            .grid_points()
            .into_iter()
            .zip(self.values.iter())
            .map(|(z, &v)| (z.re, z.im, v))
    }
}
