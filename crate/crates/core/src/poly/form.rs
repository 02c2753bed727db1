//! Binary forms with integer coefficients.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::multi::{Monomial, MultiPoly, Var};
use super::upoly::UPoly;
use super::PolyError;
use crate::arith::{Int, Rat};

/// sum coeffs[i] * a^i * b^(degree - i) in the variables (a, b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryForm {
    pub vars: (Var, Var),
    pub degree: usize,
    #[serde(with = "int_vec")]
    pub coeffs: Vec<Int>,
    #[serde(with = "int_str")]
    pub content: Int,
}

impl BinaryForm {
    pub fn new(vars: (Var, Var), degree: usize, coeffs: Vec<Int>) -> Self {
        assert_eq!(coeffs.len(), degree + 1);
        let content = coeffs.iter().fold(Int::zero(), |g, c| g.gcd(c));
        BinaryForm { vars, degree, coeffs, content }
    }

    pub fn from_multi(p: &MultiPoly, a: Var, b: Var) -> Result<Self, PolyError> {
        let d = p.homogeneous_degree(&[a, b]).ok_or_else(|| PolyError::NotHomogeneous(p.to_string()))? as usize;
        let mut coeffs = vec![Int::zero(); d + 1];
        for (m, c) in p.terms() {
            if Var::ALL.iter().any(|&v| v != a && v != b && m.exp(v) > 0) {
                return Err(PolyError::NotHomogeneous(p.to_string()));
            }
            if !c.is_integer() {
                return Err(PolyError::NotIntegral(p.to_string()));
            }
            coeffs[m.exp(a) as usize] = c.to_integer();
        }
        Ok(BinaryForm::new((a, b), d, coeffs))
    }

    /// Homogenizes a univariate polynomial (in a/b) to the given degree.
    pub fn from_upoly(f: &UPoly, vars: (Var, Var), degree: usize) -> Self {
        let z = f.primitive_int();
        let mut coeffs = vec![Int::zero(); degree + 1];
        for (i, c) in z.into_iter().enumerate() {
            coeffs[i] = c;
        }
        BinaryForm::new(vars, degree, coeffs)
    }

    pub fn to_multi(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let m = Monomial::var(self.vars.0, i as u16).mul(&Monomial::var(self.vars.1, (self.degree - i) as u16));
            out = &out + &MultiPoly::monomial(Rat::from_integer(c.clone()), m);
        }
        out
    }

    /// The polynomial in a/b obtained by setting b = 1.
    pub fn dehomogenize(&self) -> UPoly {
        UPoly::from_int_vec(&self.coeffs)
    }

    /// Whether (1:0) is a root.
    pub fn vanishes_at_infinity(&self) -> bool {
        self.coeffs[self.degree].is_zero()
    }

    /// Multiplicity of (1:0) as a root.
    pub fn order_at_infinity(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn max_abs_coefficient(&self) -> Int {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Int::zero)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_multi().fmt(f)
    }
}

pub(crate) mod int_str {
    use super::Int;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) mod int_vec {
    use super::Int;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|n| n.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Var::from_name(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown variable {s}")))
    }
}
