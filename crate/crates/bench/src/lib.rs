//! Benchmark fixtures shared by the criterion targets.

use num_complex::Complex64;
use vortexq::geometry::{build_torus, TorusSpec};
use vortexq::vortexpde::QuantizationSpec;

pub use vortexq;

/// Unit-area torus of modulus `re + i·im` at resolution `n`.
pub fn torus(re: f64, im: f64, n: usize) -> TorusSpec {
    build_torus(Complex64::new(re, im), 1.0, n).expect("valid torus")
}

/// Genus one, unit area, integer level `k`.
pub fn level(d: u32, k: f64) -> QuantizationSpec {
    QuantizationSpec::from_level(1, d, k, 1.0).expect("valid parameters")
}
