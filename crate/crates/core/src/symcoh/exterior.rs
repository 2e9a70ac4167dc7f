use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Element of the exterior algebra on `dim ≤ 64` generators; basis
/// monomials are bitmasks of increasing indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorForm {
    dim: usize,
    terms: BTreeMap<u64, BigRational>,
}

/// Sign of moving the generators of `b` past those of `a`.
fn merge_sign(a: u64, b: u64) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

impl ExteriorForm {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 64, "at most 64 generators");
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        let mut f = Self::zero(dim);
        f.terms.insert(0, BigRational::one());
        f
    }

    /// Adds `c · e_{i₁} ∧ … ∧ e_{iₙ}` for arbitrary index order.
    pub fn add_term(&mut self, indices: &[usize], c: BigRational) {
        let mut mask = 0u64;
        let mut negative = false;
        for &i in indices {
            assert!(i < self.dim, "generator index out of range");
            let bit = 1u64 << i;
            if mask & bit != 0 {
                return;
            }
            negative ^= merge_sign(mask, bit);
            mask |= bit;
        }
        let c = if negative { -c } else { c };
        self.accumulate(mask, c);
    }

    fn accumulate(&mut self, mask: u64, c: BigRational) {
        let entry = self.terms.entry(mask).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `e_{i₁} ∧ … ∧ e_{iₙ}` with increasing indices.
    pub fn coefficient(&self, indices: &[usize]) -> BigRational {
        let mask = indices.iter().fold(0u64, |m, &i| m | (1 << i));
        self.terms.get(&mask).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "forms over different generator sets");
        let mut out = Self::zero(self.dim);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca * cb;
                out.accumulate(a | b, if merge_sign(a, b) { -c } else { c });
            }
        }
        out
    }

    pub fn power(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.dim), |acc, _| acc.wedge(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn anticommutation() {
        let mut a = ExteriorForm::zero(3);
        a.add_term(&[0], r(1));
        let mut b = ExteriorForm::zero(3);
        b.add_term(&[2], r(1));
        assert_eq!(a.wedge(&b).coefficient(&[0, 2]), r(1));
        assert_eq!(b.wedge(&a).coefficient(&[0, 2]), r(-1));
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn reordered_indices_pick_up_sign() {
        let mut f = ExteriorForm::zero(4);
        f.add_term(&[3, 1, 0], r(2));
        assert_eq!(f.coefficient(&[0, 1, 3]), r(-2));
    }
}
