use std::f64::consts::PI;

use rayon::prelude::*;

use crate::geometry::{Spectral, TorusSpec};

/// Positive definite form `q(m, n) = α m² + 2β mn + γ n²` on `Z²`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct QuadForm {
    alpha: f64,
    beta: f64,
    gamma: f64,
    /// `q(m, n) ≥ min_eig · (m² + n²)`.
    min_eig: f64,
}

impl QuadForm {
    fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        let tr = alpha + gamma;
        let det = alpha * gamma - beta * beta;
        let disc = ((alpha - gamma) * (alpha - gamma) + 4.0 * beta * beta).sqrt();
        Self {
            alpha,
            beta,
            gamma,
            min_eig: 2.0 * det / (tr + disc),
        }
    }

    /// `−Δ` on the mode `exp(2πi(k₁ξ₁ + k₂ξ₂))`: `4π²|k₂ − k₁ϖ|² / (V Im ϖ)`.
    pub fn eigenvalues(spec: &TorusSpec) -> Self {
        let (a, b) = (spec.modulus().re, spec.modulus().im);
        let c = 4.0 * PI * PI / (spec.area() * b);
        Self::new(c * (a * a + b * b), -c * a, c)
    }

    /// `|γ|²` for the period `γ = s(m + nϖ)`.
    pub fn periods(spec: &TorusSpec) -> Self {
        let (a, b) = (spec.modulus().re, spec.modulus().im);
        let s2 = spec.scale() * spec.scale();
        Self::new(s2, s2 * a, s2 * (a * a + b * b))
    }

    pub fn eval(&self, m: i64, n: i64) -> f64 {
        let (m, n) = (m as f64, n as f64);
        self.alpha * m * m + 2.0 * self.beta * m * n + self.gamma * n * n
    }

    pub fn min_eig(&self) -> f64 {
        self.min_eig
    }

    /// Smallest nonzero value, searched inside the guaranteed box.
    pub fn minimum(&self) -> f64 {
        let bound = self.alpha.min(self.gamma);
        let k = (bound / self.min_eig).sqrt().ceil() as i64;
        let mut best = f64::INFINITY;
        for m in -k..=k {
            for n in -k..=k {
                if (m, n) != (0, 0) {
                    best = best.min(self.eval(m, n));
                }
            }
        }
        best
    }

    /// Shell radius beyond which every value exceeds `threshold`.
    pub fn shells_above(&self, threshold: f64) -> i64 {
        (threshold / self.min_eig).sqrt().ceil() as i64
    }

    /// `Σ f(q(m, n))` over `0 < max(|m|, |n|) ≤ k`, rows summed in parallel
    /// and combined in a fixed order.
    pub fn box_sum<F>(&self, k: i64, f: F) -> f64
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let rows: Vec<f64> = (-k..=k)
            .into_par_iter()
            .map(|m| {
                let mut acc = 0.0;
                for n in -k..=k {
                    if (m, n) != (0, 0) {
                        acc += f(self.eval(m, n));
                    }
                }
                acc
            })
            .collect();
        rows.iter().sum()
    }

    /// Rigorous bound on `Σ f` over the shells `r > k`, for `f` nonnegative
    /// and decreasing: shell `r` has `8r` points, all with `q ≥ min_eig · r²`.
    pub fn shell_tail<F>(&self, k: i64, f_bound: F) -> f64
    where
        F: Fn(f64) -> f64,
    {
        let mut total = 0.0;
        let mut r = k + 1;
        loop {
            let term = 8.0 * r as f64 * f_bound(self.min_eig * (r * r) as f64);
            total += term;
            if term <= 1e-40 * total.max(1e-300) || r > k + 100_000 {
                break;
            }
            r += 1;
        }
        total
    }
}

/// A distinct eigenvalue of `−Δ` and the number of modes carrying it.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenLevel {
    pub eigenvalue: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub levels: Vec<EigenLevel>,
    /// Modes below the grid Nyquist bound that were checked against the
    /// grid Laplacian.
    pub modes_checked: usize,
    /// Largest `|−Δ_h f − λ f|_∞ / (λ |f|_∞)` among the checked modes.
    pub max_grid_defect: f64,
}

impl Spectrum {
    pub fn mode_count(&self) -> usize {
        self.levels.iter().map(|l| l.multiplicity).sum()
    }
}

/// Positive eigenvalues of `−Δ` up to `cutoff`, grouped with multiplicities
/// and verified against the grid Laplacian of `spec`.
pub fn dual_lattice_eigenvalues(spec: &TorusSpec, cutoff: f64) -> Spectrum {
    let form = QuadForm::eigenvalues(spec);
    let k = form.shells_above(cutoff);
    let mut modes = Vec::new();
    for m in -k..=k {
        for n in -k..=k {
            let lam = form.eval(m, n);
            if (m, n) != (0, 0) && lam <= cutoff {
                modes.push((lam, m, n));
            }
        }
    }
    modes.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));

    let mut levels: Vec<EigenLevel> = Vec::new();
    for &(lam, _, _) in &modes {
        match levels.last_mut() {
            Some(last) if (lam - last.eigenvalue).abs() <= 1e-12 * lam => last.multiplicity += 1,
            _ => levels.push(EigenLevel {
                eigenvalue: lam,
                multiplicity: 1,
            }),
        }
    }

    let n = spec.resolution() as i64;
    let checked: Vec<_> = modes
        .iter()
        .filter(|&&(_, m, k2)| m.abs() < n / 2 && k2.abs() < n / 2)
        .collect();
    let spectral = Spectral::new(spec);
    let max_grid_defect = checked
        .par_iter()
        .map(|&&(lam, k1, k2)| {
            let res = spec.resolution();
            let values: Vec<f64> = (0..res * res)
                .map(|idx| {
                    let (xi1, xi2) = spec.cell_center(idx % res, idx / res);
                    (2.0 * PI * (k1 as f64 * xi1 + k2 as f64 * xi2)).cos()
                })
                .collect();
            let lap = spectral.laplacian_values(&values);
            let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            lap.iter()
                .zip(&values)
                .fold(0.0_f64, |m, (l, v)| m.max((l + lam * v).abs()))
                / (lam * scale)
        })
        .reduce(|| 0.0, f64::max);

    Spectrum {
        levels,
        modes_checked: checked.len(),
        max_grid_defect,
    }
}

/// Partial lattice sum of `λ^{−t}` with an explicit tail bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedSum {
    pub value: f64,
    pub tail_bound: f64,
    pub shells: i64,
}

/// `Σ' λ^{−t}` over the shells `max(|k₁|, |k₂|) ≤ shells`, `t > 1`. The tail
/// bound compares shell `r` with `∫ r^{1−2t}`.
pub fn certified_lattice_sum(spec: &TorusSpec, t: f64, shells: i64) -> CertifiedSum {
    assert!(t > 1.0, "lattice sum converges only for t > 1");
    let form = QuadForm::eigenvalues(spec);
    let value = form.box_sum(shells, |lam| lam.powf(-t));
    let k = shells as f64;
    let tail_bound = 8.0 * form.min_eig().powf(-t) * k.powf(2.0 - 2.0 * t) / (2.0 * t - 2.0);
    CertifiedSum {
        value,
        tail_bound,
        shells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn forms_on_square_torus() {
        let spec = TorusSpec::square(1.0, 32).unwrap();
        let e = QuadForm::eigenvalues(&spec);
        assert!((e.eval(1, 0) - 4.0 * PI * PI).abs() < 1e-12);
        assert!((e.min_eig() - 4.0 * PI * PI).abs() < 1e-9);
        let p = QuadForm::periods(&spec);
        assert!((p.minimum() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn min_eig_bounds_sheared_form() {
        let spec = TorusSpec::new(Complex64::new(0.4, 0.7), 2.0, 32).unwrap();
        for form in [QuadForm::eigenvalues(&spec), QuadForm::periods(&spec)] {
            for m in -6..=6i64 {
                for n in -6..=6i64 {
                    assert!(form.eval(m, n) >= form.min_eig() * (m * m + n * n) as f64 * (1.0 - 1e-12));
                }
            }
        }
    }
}
