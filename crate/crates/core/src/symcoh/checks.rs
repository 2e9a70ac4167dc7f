use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::class::H2Class;
use super::{int, SymcohError};
use crate::vortexpde::QuantizationSpec;

/// Relative tolerance for reading an exact level off floating `τV/4π`.
const LEVEL_TOL: f64 = 1e-9;
const MAX_LEVEL_DENOMINATOR: i64 = 64;

/// `k = τV/4π` as an exact rational: the integer or small-denominator
/// fraction within `1e-9` relative, otherwise the binary value of the float.
pub fn exact_level(q: &QuantizationSpec) -> BigRational {
    let k = q.level();
    let scale = k.abs().max(1.0);
    for den in 1..=MAX_LEVEL_DENOMINATOR {
        let num = (k * den as f64).round();
        if (k - num / den as f64).abs() <= LEVEL_TOL * scale {
            return BigRational::new(BigInt::from(num as i64), BigInt::from(den));
        }
    }
    BigRational::from_float(k).expect("finite level")
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeilReport {
    pub level: BigInt,
    /// Dimension of the torus of flat ambiguities in the prequantum connection.
    pub flat_ambiguity_dim: u32,
}

/// Rescaled Weil condition: `τV/4π` must be a positive integer.
pub fn weil_check(genus: u32, tau: f64, volume: f64) -> Result<WeilReport, SymcohError> {
    if !(tau > 0.0 && volume > 0.0 && tau.is_finite() && volume.is_finite()) {
        return Err(SymcohError::InvalidParameter(format!(
            "tau and volume must be positive, got tau = {tau}, volume = {volume}"
        )));
    }
    let k = tau * volume / (4.0 * PI);
    let nearest = k.round();
    if nearest < 1.0 || (k - nearest).abs() > LEVEL_TOL * k.max(1.0) {
        return Err(SymcohError::NotPrequantizable {
            level: k,
            fractional_part: k - k.floor(),
        });
    }
    Ok(WeilReport {
        level: BigInt::from(nearest as i64),
        flat_ambiguity_dim: 2 * genus,
    })
}

/// `[ω]/2π = θ + (k − d)η` at an exact level `k ≥ d`.
pub fn kahler_class_at(genus: u32, degree: u32, level: &BigRational) -> Result<H2Class, SymcohError> {
    let d = int(degree as i64);
    if level < &d {
        return Err(SymcohError::BradlowViolation {
            level: level.clone(),
            degree,
        });
    }
    Ok(H2Class::theta(genus, degree).with_eta(level - d))
}

/// Kähler class of the L² metric divided by `2π`. The dissolved limit
/// `k = d` is allowed and returns `θ`.
pub fn kahler_class(q: &QuantizationSpec) -> Result<H2Class, SymcohError> {
    kahler_class_at(q.genus, q.degree, &exact_level(q))
}

/// `c₁(T SᵈΣ) = (d + 1 − g)η − θ`.
///
/// # Panics
/// If `degree == 0`.
pub fn c1_tangent(genus: u32, degree: u32) -> H2Class {
    assert!(degree >= 1, "symmetric products need degree ≥ 1");
    let eta = int(degree as i64 + 1 - genus as i64);
    (-&H2Class::theta(genus, degree)).with_eta(eta)
}

/// `⟨c, [Σ]⟩` for a class on `S¹Σ = Σ`: `η ↦ 1`, `aᵢ ∧ a_{i+g} ↦ 1`.
pub fn pair_d1(c: &H2Class) -> Result<BigRational, SymcohError> {
    if c.degree_context != 1 {
        return Err(SymcohError::WrongDegreeContext(c.degree_context));
    }
    let g = c.genus as usize;
    let m = c.lambda2_part();
    Ok((0..g).fold(c.eta_coeff.clone(), |acc, i| acc + &m[i][i + g]))
}

/// 2-adic valuation of `g!` two ways, and whether `2^g | g!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreCertificate {
    pub genus: u32,
    /// `Σᵢ ⌊g/2ⁱ⌋`.
    pub valuation_legendre: u64,
    /// Trailing zero bits of `g!` computed as a big integer.
    pub valuation_direct: u64,
    pub two_pow_g_divides_factorial: bool,
}

pub fn legendre_certificate(genus: u32) -> LegendreCertificate {
    let g = genus as u64;
    let mut legendre = 0;
    let mut p = 2;
    while p <= g {
        legendre += g / p;
        p *= 2;
    }
    let fact = (1..=g).fold(BigUint::one(), |acc, i| acc * i);
    let direct = fact.trailing_zeros().unwrap_or(0);
    LegendreCertificate {
        genus,
        valuation_legendre: legendre,
        valuation_direct: direct,
        two_pow_g_divides_factorial: direct >= g,
    }
}

/// Explicit mod-2 evaluation of `w₂ ≡ c₁ = (d + 1 − g)η − θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod2Certificate {
    pub c1: H2Class,
    /// For `d = 1` the class is reduced to its multiple of the point class.
    pub point_class_multiple: Option<BigRational>,
    pub eta_even: bool,
    pub theta_part_even: bool,
    pub w2_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaplecticReport {
    pub genus: u32,
    pub degree: u32,
    /// `d = 1`, or `g = 0` and `d` odd.
    pub closed_form: bool,
    pub certificate: Mod2Certificate,
    pub legendre: LegendreCertificate,
    /// Divisibility of `θ` by 2 from the matrix agrees with `2^g | g!`.
    pub theta_routes_agree: bool,
    pub verdicts_agree: bool,
}

impl MetaplecticReport {
    pub fn admits(&self) -> bool {
        self.closed_form
    }

    pub fn consistent(&self) -> bool {
        self.verdicts_agree && self.theta_routes_agree
    }
}

fn is_even(x: &BigRational) -> bool {
    x.is_integer() && (x / int(2)).is_integer()
}

pub fn metaplectic_check(genus: u32, degree: u32) -> MetaplecticReport {
    let closed_form = degree == 1 || (genus == 0 && degree % 2 == 1);
    let c1 = c1_tangent(genus, degree);
    let theta_part_even = c1.clone().with_eta(BigRational::zero()).is_zero_mod2();
    let eta_even = is_even(&c1.eta_coeff);
    let (point_class_multiple, w2_vanishes) = if degree == 1 {
        let m = pair_d1(&c1).expect("degree context 1");
        let even = is_even(&m);
        (Some(m), even)
    } else {
        (None, eta_even && theta_part_even)
    };
    let legendre = legendre_certificate(genus);
    MetaplecticReport {
        genus,
        degree,
        closed_form,
        theta_routes_agree: theta_part_even == legendre.two_pow_g_divides_factorial,
        verdicts_agree: closed_form == w2_vanishes,
        certificate: Mod2Certificate {
            c1,
            point_class_multiple,
            eta_even,
            theta_part_even,
            w2_vanishes,
        },
        legendre,
    }
}

/// Both sides of `c₁(K) + deg(M)·η = θ + (k − d)η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrequantumReport {
    pub canonical: H2Class,
    pub deg_m: BigInt,
    pub lhs: H2Class,
    pub rhs: H2Class,
}

pub fn prequantum_class_check_at(genus: u32, degree: u32, level: i64) -> Result<PrequantumReport, SymcohError> {
    let k = int(level);
    let rhs = kahler_class_at(genus, degree, &k)?;
    let canonical = -&c1_tangent(genus, degree);
    let deg_m = BigInt::from(level - genus as i64 + 1);
    let lhs = &canonical + &H2Class::eta(genus, degree).scaled(&BigRational::from_integer(deg_m.clone()));
    if lhs != rhs {
        return Err(SymcohError::IdentityFailure {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(PrequantumReport {
        canonical,
        deg_m,
        lhs,
        rhs,
    })
}

pub fn prequantum_class_check(q: &QuantizationSpec) -> Result<PrequantumReport, SymcohError> {
    let weil = weil_check(q.genus, q.tau, q.volume)?;
    let k = weil
        .level
        .to_i64()
        .ok_or_else(|| SymcohError::InvalidParameter("level out of range".into()))?;
    prequantum_class_check_at(q.genus, q.degree, k)
}

/// Compatibility of the L² class with a Kähler–Einstein canonical quantization.
#[derive(Clone, Debug, PartialEq)]
pub struct KeReport {
    pub tau_volume: f64,
    /// `2π(2g − 2)`.
    pub target: f64,
    pub identity_holds: bool,
    /// `g − 1 > d`.
    pub genus_condition: bool,
    pub compatible: bool,
}

pub fn ke_check(q: &QuantizationSpec) -> KeReport {
    let tau_volume = q.tau * q.volume;
    let target = 2.0 * PI * (2.0 * q.genus as f64 - 2.0);
    let identity_holds = target > 0.0 && (tau_volume - target).abs() <= 1e-12 * target;
    let genus_condition = q.genus as i64 - 1 > q.degree as i64;
    KeReport {
        tau_volume,
        target,
        identity_holds,
        genus_condition,
        compatible: identity_holds && genus_condition,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_level_recognises_fractions() {
        let q = QuantizationSpec::new(1, 1, 2.0 * PI, 1.0).unwrap();
        assert_eq!(exact_level(&q), BigRational::new(1.into(), 2.into()));
        let q = QuantizationSpec::from_level(1, 1, 3.0, 0.7).unwrap();
        assert_eq!(exact_level(&q), int(3));
    }

    #[test]
    fn legendre_matches_direct() {
        for g in 0..40 {
            let c = legendre_certificate(g);
            assert_eq!(c.valuation_legendre, c.valuation_direct, "g = {g}");
            assert_eq!(c.two_pow_g_divides_factorial, g == 0);
        }
    }

    #[test]
    fn d1_reduction_is_euler_characteristic() {
        for g in 0..6 {
            let m = pair_d1(&c1_tangent(g, 1)).unwrap();
            assert_eq!(m, int(2 - 2 * g as i64));
        }
    }
}
