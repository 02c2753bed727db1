use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{common_denominator, parse_rat, rat_to_string, Int, Rat};
use crate::nf::{NfError, QuadraticField};

/// An element x + y*omega of K with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: QuadraticField,
    x: Rat,
    y: Rat,
}

impl FieldElement {
    pub fn new(field: QuadraticField, x: Rat, y: Rat) -> Self {
        assert!(field.check_coords(&y), "omega coordinate must vanish over Q");
        FieldElement { field, x, y }
    }

    pub fn from_int(field: QuadraticField, n: Int) -> Self {
        FieldElement::new(field, Rat::from_integer(n), Rat::zero())
    }

    pub fn from_i64(field: QuadraticField, n: i64) -> Self {
        FieldElement::from_int(field, Int::from(n))
    }

    pub fn from_rat(field: QuadraticField, r: Rat) -> Self {
        FieldElement::new(field, r, Rat::zero())
    }

    /// Element with the given integral coordinates (length = degree).
    pub fn from_coords(field: QuadraticField, coords: &[Int]) -> Self {
        let y = coords.get(1).cloned().unwrap_or_default();
        FieldElement::new(field, Rat::from_integer(coords[0].clone()), Rat::from_integer(y))
    }

    pub fn zero(field: QuadraticField) -> Self {
        FieldElement::from_i64(field, 0)
    }

    pub fn one(field: QuadraticField) -> Self {
        FieldElement::from_i64(field, 1)
    }

    /// The basis element omega. Panics over Q.
    pub fn omega(field: QuadraticField) -> Self {
        assert!(!field.is_rational(), "Q has no omega");
        FieldElement::new(field, Rat::zero(), Rat::one())
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.x)
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Integral coordinates over (1, omega), truncated to the field degree.
    pub fn integral_coords(&self) -> Option<Vec<Int>> {
        if !self.is_integral() {
            return None;
        }
        let mut v = vec![self.x.to_integer()];
        if self.field.degree() == 2 {
            v.push(self.y.to_integer());
        }
        Some(v)
    }

    /// Smallest positive integer m with m * self integral.
    pub fn denominator(&self) -> Int {
        common_denominator([&self.x, &self.y])
    }

    pub fn conj(&self) -> Self {
        if self.field.is_rational() {
            return self.clone();
        }
        let (t, _) = self.field.omega_min_poly();
        FieldElement::new(self.field, &self.x + &self.y * Rat::from_integer(t.into()), -&self.y)
    }

    pub fn norm(&self) -> Rat {
        if self.field.is_rational() {
            return self.x.clone();
        }
        let (t, n) = self.field.omega_min_poly();
        &self.x * &self.x
            + &self.x * &self.y * Rat::from_integer(t.into())
            + &self.y * &self.y * Rat::from_integer(n.into())
    }

    pub fn trace(&self) -> Rat {
        if self.field.is_rational() {
            return self.x.clone();
        }
        let (t, _) = self.field.omega_min_poly();
        &self.x * Rat::from_integer(2.into()) + &self.y * Rat::from_integer(t.into())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.is_rational() {
            return Some(FieldElement::from_rat(self.field, self.x.recip()));
        }
        let n = self.norm();
        let c = self.conj();
        Some(FieldElement::new(self.field, c.x / &n, c.y / &n))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FieldElement::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rat) -> Self {
        FieldElement::new(self.field, &self.x * r, &self.y * r)
    }

    /// Z-basis of the principal ideal (self) in coordinates: [self, self*omega] or [self].
    pub fn ideal_generators(&self) -> Vec<Vec<Int>> {
        let mut gens = vec![self.integral_coords().expect("integral element")];
        if self.field.degree() == 2 {
            let w = FieldElement::omega(self.field);
            gens.push((self * &w).integral_coords().expect("integral element"));
        }
        gens
    }

    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

fn same_field(a: &FieldElement, b: &FieldElement) -> QuadraticField {
    assert_eq!(a.field, b.field, "elements of different fields");
    a.field
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement::new(same_field(self, o), &self.x + &o.x, &self.y + &o.y)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement::new(same_field(self, o), &self.x - &o.x, &self.y - &o.y)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        let k = same_field(self, o);
        if k.is_rational() {
            return FieldElement::new(k, &self.x * &o.x, Rat::zero());
        }
        let (t, n) = k.omega_min_poly();
        let (t, n) = (Rat::from_integer(t.into()), Rat::from_integer(n.into()));
        let yy = &self.y * &o.y;
        let x = &self.x * &o.x - &yy * n;
        let y = &self.x * &o.y + &self.y * &o.x + yy * t;
        FieldElement::new(k, x, y)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(self.field, -&self.x, -&self.y)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", rat_to_string(&self.x));
        }
        let coef = |c: &Rat| -> String {
            if c.is_one() {
                "w".to_string()
            } else {
                format!("{}*w", rat_to_string(c))
            }
        };
        if self.x.is_zero() {
            if self.y.is_negative() {
                write!(f, "-{}", coef(&-&self.y))
            } else {
                write!(f, "{}", coef(&self.y))
            }
        } else if self.y.is_negative() {
            write!(f, "{}-{}", rat_to_string(&self.x), coef(&-&self.y))
        } else {
            write!(f, "{}+{}", rat_to_string(&self.x), coef(&self.y))
        }
    }
}

impl QuadraticField {
    /// Parses "q0 + q1*w" style literals; `w` is the integral-basis element omega.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, NfError> {
        let bad = || NfError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let bytes: Vec<char> = compact.chars().collect();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == '+' || bytes[i] == '-') && !matches!(bytes[i - 1], '*' | '/' | '+' | '-')
            {
                terms.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        terms.push(bytes[start..].iter().collect::<String>());

        let mut x = Rat::zero();
        let mut y = Rat::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-Rat::one(), rest),
                None => (Rat::one(), term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            if let Some(c) = body.strip_suffix('w') {
                if self.is_rational() {
                    return Err(NfError::Parse(format!("{s}: Q has no generator w")));
                }
                let c = c.strip_suffix('*').unwrap_or(c);
                let c = if c.is_empty() { Rat::one() } else { parse_rat(c).ok_or_else(bad)? };
                y += sign * c;
            } else {
                x += sign * parse_rat(body).ok_or_else(bad)?;
            }
        }
        Ok(FieldElement::new(*self, x, y))
    }

    pub fn element(&self, s: &str) -> FieldElement {
        self.parse_element(s).unwrap_or_else(|e| panic!("{e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, ratio};

    #[test]
    fn gaussian_arithmetic() {
        let k = QuadraticField::new(-1).unwrap();
        let a = k.element("2+w");
        let b = k.element("-6+5*w");
        assert_eq!(a.norm(), rat(5));
        assert_eq!(b.norm(), rat(61));
        assert_eq!((&a * &b).norm(), rat(305));
        assert_eq!(a.conj(), k.element("2-w"));
        let five = FieldElement::from_i64(k, 5);
        assert_eq!(five.div(&a).unwrap(), k.element("2-w"));
    }

    #[test]
    fn half_integral_basis() {
        let k = QuadraticField::new(-3).unwrap();
        let w = FieldElement::omega(k);
        // omega^2 = omega - 1
        assert_eq!(&w * &w, k.element("-1+w"));
        assert_eq!(w.norm(), rat(1));
        assert_eq!(w.trace(), rat(1));
    }

    #[test]
    fn parse_and_print() {
        let k = QuadraticField::new(3).unwrap();
        for s in ["0", "1", "-w", "w", "1/2", "3-2*w", "-6+5*w", "1/5+2/3*w", "-1/3*w"] {
            assert_eq!(k.element(s).to_string(), s);
        }
        assert_eq!(k.element(" 3 - 2 w ").to_string(), "3-2*w");
        assert_eq!(k.element("-1/5").x(), &ratio(-1, 5));
        assert!(k.parse_element("").is_err());
        assert!(k.parse_element("2+").is_err());
        assert!(k.parse_element("x").is_err());
        assert!(QuadraticField::rational().parse_element("1+w").is_err());
    }

    #[test]
    fn rational_field_norm_is_identity() {
        let q = QuadraticField::rational();
        let a = FieldElement::from_i64(q, -155);
        assert_eq!(a.norm(), rat(-155));
        assert_eq!(a.integral_coords(), Some(vec![int(-155)]));
        assert_eq!(a.inverse().unwrap(), q.element("-1/155"));
    }
}
