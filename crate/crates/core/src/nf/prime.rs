//! Principal prime ideals of O_K and residue rings modulo principal ideals.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime, is_square_int, isqrt, Int, Rat};
use crate::lattice::{express, Lattice};
use crate::nf::residue::{Fq, ResidueField};
use crate::nf::{Decomposition, FieldElement, NfError, QuadraticField};

/// Why an integral element fails to generate a prime ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeRejection {
    NormComposite { norm: Int },
    /// |N(pi)| = q^2 but q is not inert in K.
    NormSquareOfNonInert { q: Int },
    /// |N(pi)| = q^2 with q inert, but pi is not a unit multiple of q.
    NotAssociateOfInert { q: Int },
}

impl fmt::Display for PrimeRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeRejection::NormComposite { norm } => write!(f, "absolute norm {norm} is composite"),
            PrimeRejection::NormSquareOfNonInert { q } => {
                write!(f, "norm is {q}^2 but {q} is not inert")
            }
            PrimeRejection::NotAssociateOfInert { q } => {
                write!(f, "norm is {q}^2 but the element is not associate to {q}")
            }
        }
    }
}

/// An integral element certified to generate a prime ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalPrime {
    generator: FieldElement,
    residue_char: Int,
    residue_degree: u8,
    residue_field: ResidueField,
    /// Degree one: omega = omega_image mod pi.
    omega_image: u64,
}

impl fmt::Display for PrincipalPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

/// Certifies that (pi) is a prime ideal of O_K.
pub fn is_principal_prime(pi: &FieldElement) -> Result<PrincipalPrime, NfError> {
    if !pi.is_integral() {
        return Err(NfError::NotIntegral(pi.to_string()));
    }
    let norm = pi.norm().to_integer().abs();
    if norm.is_zero() || norm.is_one() {
        return Err(NfError::ZeroOrUnit(pi.to_string()));
    }
    let k = pi.field();
    let rejected = |reason| NfError::NotPrime { element: pi.to_string(), reason };
    if is_prime(&norm) {
        let q = small(&norm)?;
        let omega_image = if k.is_rational() {
            0
        } else {
            let a = pi.x().to_integer();
            let b = pi.y().to_integer();
            // q | b would force q^2 | N(pi)
            let b_inv = mod_inverse(&b, &norm).expect("omega coefficient is a unit mod q");
            (-(a * b_inv)).mod_floor(&norm).to_u64().unwrap()
        };
        return Ok(PrincipalPrime {
            generator: pi.clone(),
            residue_char: norm,
            residue_degree: 1,
            residue_field: ResidueField::new(q, 1, 0, 0),
            omega_image,
        });
    }
    if !k.is_rational() && is_square_int(&norm) {
        let q = isqrt(&norm);
        if is_prime(&q) {
            if k.decomposition(&q) != Decomposition::Inert {
                return Err(rejected(PrimeRejection::NormSquareOfNonInert { q }));
            }
            let divisible = pi.x().to_integer().is_multiple_of(&q)
                && pi.y().to_integer().is_multiple_of(&q);
            if !divisible {
                return Err(rejected(PrimeRejection::NotAssociateOfInert { q }));
            }
            let qs = small(&q)?;
            let (t, n) = k.omega_min_poly();
            let t = Int::from(t).mod_floor(&q).to_u64().unwrap();
            let n = Int::from(n).mod_floor(&q).to_u64().unwrap();
            return Ok(PrincipalPrime {
                generator: pi.clone(),
                residue_char: q,
                residue_degree: 2,
                residue_field: ResidueField::new(qs, 2, t, n),
                omega_image: 0,
            });
        }
    }
    Err(rejected(PrimeRejection::NormComposite { norm }))
}

fn small(q: &Int) -> Result<u64, NfError> {
    q.to_u64()
        .filter(|&v| v < (1u64 << 32))
        .ok_or_else(|| NfError::ResidueFieldTooLarge(q.to_string()))
}

fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl PrincipalPrime {
    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn field(&self) -> QuadraticField {
        self.generator.field()
    }

    pub fn residue_char(&self) -> &Int {
        &self.residue_char
    }

    pub fn residue_degree(&self) -> u8 {
        self.residue_degree
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.residue_field
    }

    /// |O_K / (pi)|.
    pub fn cardinality(&self) -> Int {
        Int::from(self.residue_field.order())
    }

    pub fn is_odd(&self) -> bool {
        self.residue_char != Int::from(2)
    }

    /// (pi) = (other) as ideals.
    pub fn same_ideal(&self, other: &PrincipalPrime) -> bool {
        if self.field() != other.field() || self.cardinality() != other.cardinality() {
            return false;
        }
        let ratio = self.generator.div(&other.generator).expect("nonzero generator");
        ratio.is_integral() && ratio.norm().abs().is_one()
    }

    /// alpha / pi when that quotient is integral.
    pub fn divide_out(&self, alpha: &FieldElement) -> Option<FieldElement> {
        let q = alpha.div(&self.generator).expect("nonzero generator");
        q.is_integral().then_some(q)
    }

    fn integral_valuation(&self, alpha: &FieldElement) -> (u32, FieldElement) {
        let mut v = 0;
        let mut cur = alpha.clone();
        while let Some(next) = self.divide_out(&cur) {
            cur = next;
            v += 1;
        }
        (v, cur)
    }

    /// v_pi(s) for nonzero s.
    pub fn valuation(&self, s: &FieldElement) -> Result<i64, NfError> {
        if s.is_zero() {
            return Err(NfError::InfiniteValuation);
        }
        let m = s.denominator();
        let alpha = s.scale(&Rat::from_integer(m.clone()));
        let m_el = FieldElement::from_int(s.field(), m);
        Ok(self.integral_valuation(&alpha).0 as i64 - self.integral_valuation(&m_el).0 as i64)
    }

    fn reduce_integral(&self, alpha: &FieldElement) -> Fq {
        let q = &self.residue_char;
        let x = alpha.x().to_integer().mod_floor(q).to_u64().unwrap();
        let y = alpha.y().to_integer().mod_floor(q).to_u64().unwrap();
        let f = &self.residue_field;
        if self.residue_degree == 1 {
            f.add(f.from_u64(x), f.mul(f.from_u64(y), f.from_u64(self.omega_image)))
        } else {
            f.elem(x, y)
        }
    }

    /// Image of s in O_K/(pi); requires v_pi(s) >= 0.
    pub fn residue(&self, s: &FieldElement) -> Result<Fq, NfError> {
        let m = s.denominator();
        let alpha = s.scale(&Rat::from_integer(m.clone()));
        let m_el = FieldElement::from_int(s.field(), m);
        let (vm, m_unit) = self.integral_valuation(&m_el);
        let mut a = alpha;
        for _ in 0..vm {
            a = self.divide_out(&a).ok_or_else(|| NfError::NegativeValuation(s.to_string()))?;
        }
        let f = &self.residue_field;
        let inv = f.inverse(self.reduce_integral(&m_unit)).expect("unit residue");
        Ok(f.mul(self.reduce_integral(&a), inv))
    }

    /// Canonical integral lift of a residue.
    pub fn lift(&self, r: Fq) -> FieldElement {
        let k = self.field();
        if self.residue_degree == 1 {
            FieldElement::from_int(k, Int::from(r.a))
        } else {
            FieldElement::from_coords(k, &[Int::from(r.a), Int::from(r.b)])
        }
    }

    /// Checks that s is a unit at pi.
    pub fn require_unit(&self, s: &FieldElement) -> Result<(), NfError> {
        if s.is_zero() || self.valuation(s)? != 0 {
            return Err(NfError::NotUnitAt { element: s.to_string(), prime: self.to_string() });
        }
        Ok(())
    }
}

/// Whether the residue of s is a square in O_K/(pi), by Euler's criterion.
pub fn is_square_mod(s: &FieldElement, pi: &PrincipalPrime) -> Result<bool, NfError> {
    if !pi.is_odd() {
        return Err(NfError::EvenResidueCharacteristic(pi.to_string()));
    }
    pi.require_unit(s)?;
    let r = pi.residue(s)?;
    Ok(pi.residue_field().is_square(r))
}

/// O_K / mu O_K with canonical representatives from the Hermite normal form
/// of the lattice mu O_K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRing {
    modulus: FieldElement,
    lattice: Lattice,
}

impl ResidueRing {
    pub fn new(modulus: &FieldElement) -> Result<Self, NfError> {
        if !modulus.is_integral() {
            return Err(NfError::NotIntegral(modulus.to_string()));
        }
        if modulus.is_zero() {
            return Err(NfError::ZeroOrUnit(modulus.to_string()));
        }
        let lattice = Lattice::from_generators(&modulus.ideal_generators(), modulus.field().degree())
            .expect("nonzero principal ideal has full rank");
        Ok(ResidueRing { modulus: modulus.clone(), lattice })
    }

    pub fn modulus(&self) -> &FieldElement {
        &self.modulus
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn cardinality(&self) -> Int {
        self.lattice.index()
    }

    pub fn field(&self) -> QuadraticField {
        self.modulus.field()
    }

    /// Canonical representative of an integral element.
    pub fn reduce(&self, alpha: &FieldElement) -> FieldElement {
        let c = alpha.integral_coords().expect("integral element");
        FieldElement::from_coords(self.field(), &self.lattice.reduce(&c))
    }

    /// Inverse of an integral element modulo mu, if it is a unit there.
    pub fn inverse(&self, alpha: &FieldElement) -> Option<FieldElement> {
        let k = self.field();
        let gens: Vec<Vec<Int>> =
            alpha.ideal_generators().into_iter().chain(self.modulus.ideal_generators()).collect();
        let mut target = vec![Int::zero(); k.degree()];
        target[0] = Int::one();
        let c = express(&gens, k.degree(), &target)?;
        let z = if k.degree() == 2 {
            FieldElement::from_coords(k, &[c[0].clone(), c[1].clone()])
        } else {
            FieldElement::from_coords(k, &[c[0].clone()])
        };
        Some(self.reduce(&z))
    }

    /// Representative of a possibly non-integral s whose denominator is
    /// coprime to mu.
    pub fn reduce_element(&self, s: &FieldElement) -> Option<FieldElement> {
        if s.is_integral() {
            return Some(self.reduce(s));
        }
        let m = s.denominator();
        let alpha = s.scale(&Rat::from_integer(m.clone()));
        let inv = self.inverse(&FieldElement::from_int(s.field(), m))?;
        Some(self.reduce(&(&alpha * &inv)))
    }

    pub fn congruent(&self, a: &FieldElement, b: &FieldElement) -> bool {
        match self.reduce_element(&(a - b)) {
            Some(r) => r.is_zero(),
            None => false,
        }
    }

    pub fn is_unit(&self, alpha: &FieldElement) -> bool {
        self.inverse(alpha).is_some()
    }
}
