//! Dimensions of the quantum Hilbert spaces `H⁰(SᵈΣ, 𝓛)` and their
//! fermionic basis labels. Everything is integer arithmetic.

mod states;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use states::{canonical_label, permutation_sign, wedge_states, WedgeStates};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("Bradlow bound requires k > d ≥ 1, got k = {k}, d = {d}")]
    BradlowViolation { k: u64, d: u64 },
    #[error("h¹ = {h1} is not admissible for g = {g}, k = {k}: {reason}")]
    InvalidJump { g: u64, k: u64, h1: u64, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// `C(n, k)` by the multiplicative formula, cancelling common factors at
/// every step.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        let den = BigUint::from(i);
        let g = acc.gcd(&den);
        let den = den / &g;
        acc /= &g;
        // den divides the next factor once the accumulated part is removed
        acc *= BigUint::from(n - k + i) / den;
    }
    acc
}

/// Degrees of the line bundles entering the quantization data at level `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleLedger {
    pub deg_q: i64,
    /// Degree of `K^{1/2}`.
    pub deg_spin: i64,
    pub deg_m: i64,
    /// Degree of `Q ⊗ K^{1/2}`.
    pub deg_qk: i64,
}

impl BundleLedger {
    pub fn new(g: u64, k: u64) -> Self {
        let (g, k) = (g as i64, k as i64);
        Self {
            deg_q: k,
            deg_spin: g - 1,
            deg_m: k - g + 1,
            deg_qk: k + g - 1,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.deg_qk == self.deg_q + self.deg_spin && self.deg_m == self.deg_q - self.deg_spin
    }
}

/// Largest `h¹` that can occur at `(g, k)`: Clifford's bound on the Serre dual
/// of `Q ⊗ K^{1/2}`, a bundle of degree `g − 1 − k`.
pub fn max_h1(g: u64, k: u64) -> u64 {
    if k + 1 > g {
        0
    } else {
        (g - 1 - k) / 2 + 1
    }
}

/// `h⁰(Q ⊗ K^{1/2}) = k + h¹`.
pub fn spinor_h0(g: u64, k: u64, h1: u64) -> Result<u64, HilbertError> {
    if k == 0 {
        return Err(HilbertError::InvalidParameter("level k must be at least 1".into()));
    }
    let bound = max_h1(g, k);
    if h1 > bound {
        let reason = if bound == 0 {
            "h¹ vanishes whenever k > g − 1".to_string()
        } else {
            format!("Clifford's bound gives h¹ ≤ {bound}")
        };
        return Err(HilbertError::InvalidJump { g, k, h1, reason });
    }
    Ok(k + h1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub genus: u64,
    pub degree: u64,
    pub level: u64,
    pub h0: u64,
    pub h1: u64,
    pub dim: BigUint,
    pub generic_dim: BigUint,
    pub jumped: bool,
    pub bundles: BundleLedger,
}

/// `dim H⁰(SᵈΣ, 𝓛_M) = C(k + h¹, d)`.
pub fn hilbert_dim(g: u64, d: u64, k: u64, h1: u64) -> Result<DimensionReport, HilbertError> {
    if d == 0 || k <= d {
        return Err(HilbertError::BradlowViolation { k, d });
    }
    let h0 = spinor_h0(g, k, h1)?;
    Ok(DimensionReport {
        genus: g,
        degree: d,
        level: k,
        h0,
        h1,
        dim: binomial(h0, d),
        generic_dim: binomial(k, d),
        jumped: h1 > 0,
        bundles: BundleLedger::new(g, k),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpStratum {
    pub genus: u64,
    pub level: u64,
    /// `k ≤ g − 1`: special bundles `Q ⊗ K^{1/2}` exist.
    pub jumps_possible: bool,
    /// `k + g − 1 = 2g − 2`: the only jump is `h¹ = 1`, at `Q = K^{1/2}`.
    pub unique_top_jump: bool,
    pub max_h1: u64,
}

pub fn jump_stratum(g: u64, k: u64) -> JumpStratum {
    JumpStratum {
        genus: g,
        level: k,
        jumps_possible: k < g,
        unique_top_jump: k + 1 == g,
        max_h1: max_h1(g, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_table() {
        let mut row = vec![1u64];
        for n in 0..30u64 {
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(binomial(n, k as u64), BigUint::from(c));
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn binomial_large_is_exact() {
        // C(100, 50) = 100891344545564193334812497256
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn ledger_consistency() {
        for g in 0..10 {
            for k in 1..20 {
                assert!(BundleLedger::new(g, k).is_consistent());
            }
        }
    }
}
