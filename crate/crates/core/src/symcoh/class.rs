use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exterior::ExteriorForm;
use super::{int, SymcohError};

/// `eta_coeff·η + Σ_{i<j} M_ij aᵢ∧aⱼ` on SᵈΣ, with `M` antisymmetric `2g × 2g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Class {
    pub eta_coeff: BigRational,
    lambda2_part: Vec<Vec<BigRational>>,
    pub genus: u32,
    pub degree_context: u32,
}

impl H2Class {
    pub fn zero(genus: u32, degree_context: u32) -> Self {
        let n = 2 * genus as usize;
        Self {
            eta_coeff: BigRational::zero(),
            lambda2_part: vec![vec![BigRational::zero(); n]; n],
            genus,
            degree_context,
        }
    }

    pub fn eta(genus: u32, degree_context: u32) -> Self {
        Self::zero(genus, degree_context).with_eta(BigRational::one())
    }

    /// The standard symplectic class `Σᵢ aᵢ ∧ a_{i+g}`.
    pub fn theta(genus: u32, degree_context: u32) -> Self {
        let mut c = Self::zero(genus, degree_context);
        let g = genus as usize;
        for i in 0..g {
            c.lambda2_part[i][i + g] = BigRational::one();
            c.lambda2_part[i + g][i] = -BigRational::one();
        }
        c
    }

    pub fn from_parts(
        genus: u32,
        degree_context: u32,
        eta_coeff: BigRational,
        lambda2_part: Vec<Vec<BigRational>>,
    ) -> Result<Self, SymcohError> {
        let n = 2 * genus as usize;
        if lambda2_part.len() != n || lambda2_part.iter().any(|row| row.len() != n) {
            return Err(SymcohError::InvalidParameter(format!("Λ² part must be {n}×{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if lambda2_part[i][j] != -lambda2_part[j][i].clone() {
                    return Err(SymcohError::InvalidParameter(format!(
                        "Λ² part not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self {
            eta_coeff,
            lambda2_part,
            genus,
            degree_context,
        })
    }

    pub fn with_eta(mut self, eta_coeff: BigRational) -> Self {
        self.eta_coeff = eta_coeff;
        self
    }

    pub fn lambda2_part(&self) -> &[Vec<BigRational>] {
        &self.lambda2_part
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        Self {
            eta_coeff: &self.eta_coeff * c,
            lambda2_part: self
                .lambda2_part
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
            genus: self.genus,
            degree_context: self.degree_context,
        }
    }

    /// `c` with `Λ²` part equal to `c·θ`, if there is one.
    pub fn theta_multiplicity(&self) -> Option<BigRational> {
        let g = self.genus as usize;
        if g == 0 {
            return Some(BigRational::zero());
        }
        let c = self.lambda2_part[0][g].clone();
        (self.theta_free_part() == Self::theta(self.genus, self.degree_context).scaled(&c)).then_some(c)
    }

    fn theta_free_part(&self) -> Self {
        Self {
            eta_coeff: BigRational::zero(),
            ..self.clone()
        }
    }

    /// True when every coefficient is an even integer.
    pub fn is_zero_mod2(&self) -> bool {
        let two = int(2);
        let even = |x: &BigRational| x.is_integer() && (x / &two).is_integer();
        even(&self.eta_coeff) && self.lambda2_part.iter().flatten().all(even)
    }

    pub fn is_integral(&self) -> bool {
        self.eta_coeff.is_integer() && self.lambda2_part.iter().flatten().all(|x| x.is_integer())
    }

    /// The `Λ²` part as a 2-form on `H₁(Σ)`.
    pub fn lambda2_form(&self) -> ExteriorForm {
        let n = 2 * self.genus as usize;
        let mut form = ExteriorForm::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                if !self.lambda2_part[i][j].is_zero() {
                    form.add_term(&[i, j], self.lambda2_part[i][j].clone());
                }
            }
        }
        form
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.genus == other.genus && self.degree_context == other.degree_context,
            "classes on different symmetric products"
        );
    }
}

impl Add for &H2Class {
    type Output = H2Class;
    fn add(self, rhs: &H2Class) -> H2Class {
        self.check_compatible(rhs);
        H2Class {
            eta_coeff: &self.eta_coeff + &rhs.eta_coeff,
            lambda2_part: self
                .lambda2_part
                .iter()
                .zip(&rhs.lambda2_part)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
            genus: self.genus,
            degree_context: self.degree_context,
        }
    }
}

impl Neg for &H2Class {
    type Output = H2Class;
    fn neg(self) -> H2Class {
        self.scaled(&-BigRational::one())
    }
}

impl Sub for &H2Class {
    type Output = H2Class;
    fn sub(self, rhs: &H2Class) -> H2Class {
        self + &(-rhs)
    }
}

fn coeff_term(c: &BigRational, symbol: &str, first: bool, out: &mut String) {
    if c.is_zero() {
        return;
    }
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => out.push('-'),
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
        (true, false) => {}
    }
    if !abs.is_one() {
        out.push_str(&abs.to_string());
    }
    out.push_str(symbol);
}

/// `θ`-multiples print as `aθ + bη`; anything else prints its matrix.
impl fmt::Display for H2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self.theta_multiplicity() {
            Some(t) => {
                coeff_term(&t, "θ", true, &mut out);
                coeff_term(&self.eta_coeff, "η", out.is_empty(), &mut out);
                if out.is_empty() {
                    out.push('0');
                }
            }
            None => {
                coeff_term(&self.eta_coeff, "η", true, &mut out);
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                let rows: Vec<String> = self
                    .lambda2_part
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                out.push_str(&format!("Λ²[{}]", rows.join("; ")));
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        let t = H2Class::theta(2, 3);
        let e = H2Class::eta(2, 3);
        assert_eq!((&t + &e.scaled(&int(2))).to_string(), "θ + 2η");
        assert_eq!((&e - &t).to_string(), "-θ + η");
        assert_eq!(H2Class::zero(1, 1).to_string(), "0");
        assert_eq!(e.scaled(&int(2)).to_string(), "2η");
    }

    #[test]
    fn theta_multiplicity_rejects_non_multiples() {
        let mut m = vec![vec![BigRational::zero(); 4]; 4];
        m[0][1] = int(1);
        m[1][0] = int(-1);
        let c = H2Class::from_parts(2, 2, int(0), m).unwrap();
        assert_eq!(c.theta_multiplicity(), None);
        assert_eq!(H2Class::theta(2, 2).scaled(&int(3)).theta_multiplicity(), Some(int(3)));
    }

    #[test]
    fn antisymmetry_enforced() {
        let mut m = vec![vec![BigRational::zero(); 2]; 2];
        m[0][1] = int(1);
        assert!(H2Class::from_parts(1, 1, int(0), m).is_err());
    }
}
