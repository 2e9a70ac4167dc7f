use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{binom_q, chern_exterior_power, ChernPair};

/// Comparison of the closed formulas with a brute-force Chern-root expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRecord {
    pub rank: u64,
    pub degree: u64,
    pub exterior_rank: u64,
    pub c1_equal: bool,
    pub c2_equal: bool,
}

impl OracleRecord {
    pub fn equal(&self) -> bool {
        self.c1_equal && self.c2_equal
    }
}

/// Expands `e₁` and `e₂` of the `C(r, d)` root sums `x_{i₁} + … + x_{i_d}` as
/// polynomials in formal roots `x₁, …, x_r` and compares them with
/// `chern_exterior_power` applied to `c₁ = e₁(x)`, `c₂ = e₂(x)`.
///
/// # Panics
/// If `r > 8` or `d` is outside `1..=r`.
pub fn chern_root_oracle(r: u64, d: u64) -> OracleRecord {
    assert!(r <= 8, "root expansion limited to r ≤ 8");
    assert!(d >= 1 && d <= r, "need 1 ≤ d ≤ r");
    let n = r as usize;
    let sums: Vec<Vec<i64>> = (0..n)
        .combinations(d as usize)
        .map(|s| {
            let mut v = vec![0i64; n];
            for i in s {
                v[i] = 1;
            }
            v
        })
        .collect();

    let mut lin = vec![0i64; n];
    for y in &sums {
        for i in 0..n {
            lin[i] += y[i];
        }
    }
    // coefficients of x_i x_j, i ≤ j
    let mut quad = vec![vec![0i64; n]; n];
    for (a, b) in (0..sums.len()).tuple_combinations() {
        for i in 0..n {
            for j in 0..n {
                let c = sums[a][i] * sums[b][j];
                if c != 0 {
                    quad[i.min(j)][i.max(j)] += c;
                }
            }
        }
    }

    // Closed formula in the same monomial basis. The formula only sees
    // (c₁, c₂) through coefficients; apply it to the basis pairs
    // (c₁, c₂) = (1, 0) and (0, 1) and expand c₁ = e₁(x), c₂ = e₂(x).
    let unit = |c1: i64, c2: i64| ChernPair {
        c1_theta: BigRational::from_integer(c1.into()),
        c2_theta2: BigRational::from_integer(c2.into()),
        rank: r.into(),
    };
    let from_c1 = chern_exterior_power(&unit(1, 0), d).expect("degree in range");
    let from_c2 = chern_exterior_power(&unit(0, 1), d).expect("degree in range");
    let a = binom_q(r - 1, d - 1);
    let c1_equal = from_c1.c1_theta == a && lin.iter().all(|&c| BigRational::from_integer(c.into()) == a);

    // c₂(ΛᵈE) = β·e₂(x) + γ·e₁(x)²
    let beta = from_c2.c2_theta2.clone();
    let gamma = from_c1.c2_theta2.clone();
    let mut c2_equal = from_c2.c1_theta.is_zero();
    for i in 0..n {
        for j in i..n {
            let expected = if i == j {
                gamma.clone()
            } else {
                &beta + &gamma * BigRational::from_integer(2.into())
            };
            c2_equal &= BigRational::from_integer(BigInt::from(quad[i][j])) == expected;
        }
    }

    OracleRecord {
        rank: r,
        degree: d,
        exterior_rank: sums.len() as u64,
        c1_equal: c1_equal && from_c1.rank.to_u64() == Some(sums.len() as u64),
        c2_equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_power_is_the_determinant() {
        // Λʳ E = det E has rank one and c₁ = c₁(E)
        let r = chern_root_oracle(5, 5);
        assert_eq!(r.exterior_rank, 1);
        assert!(r.equal());
    }

    #[test]
    #[should_panic]
    fn rank_cap() {
        chern_root_oracle(9, 2);
    }
}
