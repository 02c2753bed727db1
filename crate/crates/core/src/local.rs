//! Local arithmetic: valuations, Hensel lifting of square roots, places above
//! 2 and valuations in a ramified quadratic extension.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{int, int_valuation, rat_valuation, Int, Rat};
use crate::nf::{
    is_principal_prime, is_square_mod, Decomposition, FieldElement, NfError, OmegaKind,
    PrincipalPrime, QuadraticField, ResidueRing,
};

pub const DEFAULT_PRECISION: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error(transparent)]
    Nf(#[from] NfError),
    #[error("{element} is not a unit at {place}")]
    NotUnit { element: String, place: String },
    #[error("{element} is not a square modulo {prime}")]
    NonResidue { element: String, prime: String },
    #[error("Hensel lifting at the even prime {0} is not supported")]
    EvenResidueCharacteristic(String),
    #[error("valuation of zero is infinite")]
    Zero,
    #[error("v_{prime}({disc}) is even, so {prime} is not ramified by this discriminant")]
    EvenDiscriminantValuation { prime: String, disc: String },
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("malformed p-adic approximation: {0}")]
    Malformed(String),
}

/// v_pi(alpha) for nonzero alpha.
pub fn valuation(alpha: &FieldElement, pi: &PrincipalPrime) -> Result<i64, LocalError> {
    if alpha.is_zero() {
        return Err(LocalError::Zero);
    }
    Ok(pi.valuation(alpha)?)
}

/// A residue class modulo pi^N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicApprox {
    prime: PrincipalPrime,
    value: FieldElement,
    precision: u32,
}

impl PadicApprox {
    pub fn new(prime: PrincipalPrime, value: &FieldElement, precision: u32) -> Result<Self, LocalError> {
        if precision == 0 {
            return Err(LocalError::ZeroPrecision);
        }
        let ring = Self::ring(&prime, precision);
        let value = ring
            .reduce_element(value)
            .ok_or_else(|| LocalError::NotUnit { element: value.to_string(), place: prime.to_string() })?;
        Ok(PadicApprox { prime, value, precision })
    }

    fn ring(prime: &PrincipalPrime, precision: u32) -> ResidueRing {
        ResidueRing::new(&prime.generator().pow(precision)).expect("nonzero modulus")
    }

    pub fn prime(&self) -> &PrincipalPrime {
        &self.prime
    }

    /// Canonical integral representative modulo pi^N.
    pub fn value(&self) -> &FieldElement {
        &self.value
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue_ring(&self) -> ResidueRing {
        Self::ring(&self.prime, self.precision)
    }

    /// Whether s lies in this class modulo pi^N.
    pub fn congruent_to(&self, s: &FieldElement) -> bool {
        self.residue_ring().congruent(&self.value, s)
    }

    /// pi-adic digits d_0, ..., d_{N-1}, each a canonical lift of a residue.
    pub fn digits(&self) -> Vec<FieldElement> {
        let mut cur = self.value.clone();
        let mut out = Vec::with_capacity(self.precision as usize);
        for _ in 0..self.precision {
            let d = self.prime.lift(self.prime.residue(&cur).expect("integral value"));
            cur = self.prime.divide_out(&(&cur - &d)).expect("digit removes residue");
            out.push(d);
        }
        out
    }

    pub fn from_digits(prime: PrincipalPrime, digits: &[FieldElement]) -> Result<Self, LocalError> {
        let mut acc = FieldElement::zero(prime.field());
        for d in digits.iter().rev() {
            acc = &(&acc * prime.generator()) + d;
        }
        PadicApprox::new(prime, &acc, digits.len() as u32)
    }
}

#[derive(Serialize, Deserialize)]
struct PadicRepr {
    field: QuadraticField,
    generator: String,
    #[serde(rename = "N")]
    precision: u32,
    digits: Vec<String>,
}

impl Serialize for PadicApprox {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PadicRepr {
            field: self.prime.field(),
            generator: self.prime.generator().to_string(),
            precision: self.precision,
            digits: self.digits().iter().map(|d| d.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicApprox {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = PadicRepr::deserialize(d)?;
        let parse = |s: &str| r.field.parse_element(s).map_err(D::Error::custom);
        let prime = is_principal_prime(&parse(&r.generator)?).map_err(D::Error::custom)?;
        if r.digits.len() != r.precision as usize {
            return Err(D::Error::custom(LocalError::Malformed("digit count differs from N".into())));
        }
        let digits = r.digits.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        let approx = PadicApprox::from_digits(prime, &digits).map_err(D::Error::custom)?;
        if approx.digits() != digits {
            return Err(D::Error::custom(LocalError::Malformed("non-canonical digits".into())));
        }
        Ok(approx)
    }
}

/// y with y^2 = t mod pi^N, from a Tonelli-Shanks root refined by Newton steps.
pub fn hensel_sqrt(t: &FieldElement, pi: &PrincipalPrime, precision: u32) -> Result<PadicApprox, LocalError> {
    if precision == 0 {
        return Err(LocalError::ZeroPrecision);
    }
    if !pi.is_odd() {
        return Err(LocalError::EvenResidueCharacteristic(pi.to_string()));
    }
    if t.is_zero() || pi.valuation(t)? != 0 {
        return Err(LocalError::NotUnit { element: t.to_string(), place: pi.to_string() });
    }
    if !is_square_mod(t, pi)? {
        return Err(LocalError::NonResidue { element: t.to_string(), prime: pi.to_string() });
    }
    let f = pi.residue_field();
    let root = f.sqrt(pi.residue(t)?).expect("residue is a square");
    let ring = PadicApprox::ring(pi, precision);
    let t_mod = ring.reduce_element(t).expect("unit at pi");
    let two = FieldElement::from_i64(t.field(), 2);
    let mut y = pi.lift(root);
    let mut reached = 1u32;
    while reached < precision {
        let err = &(&y * &y) - &t_mod;
        let inv = ring.inverse(&(&two * &y)).expect("2y is a unit");
        y = ring.reduce(&(&y - &(&err * &inv)));
        reached = reached.saturating_mul(2);
    }
    let approx = PadicApprox::new(pi.clone(), &y, precision)?;
    debug_assert!(ring.congruent(&(&approx.value * &approx.value), t));
    Ok(approx)
}

/// A place of K above 2, described by the decomposition of (2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoAdicPlace {
    Rational,
    Ramified,
    Inert,
    /// omega maps to the 2-adic root congruent to `branch` mod 2.
    Split { branch: u8 },
}

impl fmt::Display for TwoAdicPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoAdicPlace::Rational => write!(f, "2"),
            TwoAdicPlace::Ramified => write!(f, "2:ramified"),
            TwoAdicPlace::Inert => write!(f, "2:inert"),
            TwoAdicPlace::Split { branch } => write!(f, "2:split{branch}"),
        }
    }
}

/// The places of K above 2.
pub fn places_above_two(k: QuadraticField) -> Vec<TwoAdicPlace> {
    if k.is_rational() {
        return vec![TwoAdicPlace::Rational];
    }
    match k.decomposition(&int(2)) {
        Decomposition::Ramified => vec![TwoAdicPlace::Ramified],
        Decomposition::Inert => vec![TwoAdicPlace::Inert],
        Decomposition::Split => vec![TwoAdicPlace::Split { branch: 0 }, TwoAdicPlace::Split { branch: 1 }],
    }
}

/// Root of omega's minimal polynomial in Z_2 congruent to `branch`, modulo 2^bits.
fn two_adic_root(k: QuadraticField, branch: u8, bits: u32) -> Int {
    debug_assert_eq!(k.omega_kind(), OmegaKind::Half);
    let (t, n) = k.omega_min_poly();
    let (t, n) = (int(t), int(n));
    let f = |r: &Int| r * r - &t * r + &n;
    let mut r = Int::from(branch);
    for k in 1..bits {
        let m = Int::one() << (k + 1);
        if !f(&r).mod_floor(&m).is_zero() {
            r += Int::one() << k;
        }
        debug_assert!(f(&r).mod_floor(&m).is_zero());
    }
    r
}

impl TwoAdicPlace {
    /// Ramification index over Q_2.
    pub fn ramification_index(&self) -> i64 {
        if *self == TwoAdicPlace::Ramified {
            2
        } else {
            1
        }
    }

    /// Normalized valuation of a nonzero element of K at this place.
    pub fn valuation(&self, k: QuadraticField, alpha: &FieldElement) -> Result<i64, LocalError> {
        if alpha.is_zero() {
            return Err(LocalError::Zero);
        }
        let two = int(2);
        match self {
            TwoAdicPlace::Rational => Ok(rat_valuation(alpha.x(), &two)),
            TwoAdicPlace::Ramified => Ok(rat_valuation(&alpha.norm(), &two)),
            TwoAdicPlace::Inert => Ok(rat_valuation(&alpha.norm(), &two) / 2),
            TwoAdicPlace::Split { branch } => {
                let m = alpha.denominator();
                let a = alpha.scale(&Rat::from_integer(m.clone()));
                let (x, y) = (a.x().to_integer(), a.y().to_integer());
                let shift = int_valuation(&m, &two) as i64;
                let mut bits = 16;
                loop {
                    let modulus = Int::one() << bits;
                    let r = two_adic_root(k, *branch, bits);
                    let image = (&x + &y * r).mod_floor(&modulus);
                    if !image.is_zero() {
                        return Ok(int_valuation(&image, &two) as i64 - shift);
                    }
                    bits *= 2;
                }
            }
        }
    }
}

/// Sufficient criterion for t to be a square at a place above 2: v(t-1) >= v(8).
/// `false` means inconclusive.
pub fn two_adic_square_criterion(t: &FieldElement, v: TwoAdicPlace) -> Result<bool, LocalError> {
    let k = t.field();
    if t.is_zero() || !t.is_integral() || v.valuation(k, t)? != 0 {
        return Err(LocalError::NotUnit { element: t.to_string(), place: v.to_string() });
    }
    let diff = t - &FieldElement::one(k);
    if diff.is_zero() {
        return Ok(true);
    }
    Ok(v.valuation(k, &diff)? >= 3 * v.ramification_index())
}

/// An element u + v*sqrt(D) of L = K(sqrt(D)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelElement {
    pub u: FieldElement,
    pub v: FieldElement,
}

impl RelElement {
    pub fn new(u: FieldElement, v: FieldElement) -> Self {
        RelElement { u, v }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// N_{L/K} = u^2 - D v^2.
    pub fn norm(&self, disc: &FieldElement) -> FieldElement {
        &(&self.u * &self.u) - &(&(disc * &self.v) * &self.v)
    }

    pub fn mul(&self, other: &RelElement, disc: &FieldElement) -> RelElement {
        let u = &(&self.u * &other.u) + &(&(disc * &self.v) * &other.v);
        let v = &(&self.u * &other.v) + &(&self.v * &other.u);
        RelElement { u, v }
    }
}

impl fmt::Display for RelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})*sqrt(D)", self.u, self.v)
    }
}

/// The prime P of L = K(sqrt(D)) above p, for v_p(D) odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamifiedPlace {
    base: PrincipalPrime,
    disc: FieldElement,
}

impl RamifiedPlace {
    pub fn new(base: PrincipalPrime, disc: FieldElement) -> Result<Self, LocalError> {
        let v = valuation(&disc, &base)?;
        if v.rem_euclid(2) == 0 {
            return Err(LocalError::EvenDiscriminantValuation {
                prime: base.to_string(),
                disc: disc.to_string(),
            });
        }
        Ok(RamifiedPlace { base, disc })
    }

    pub fn base_prime(&self) -> &PrincipalPrime {
        &self.base
    }

    pub fn disc(&self) -> &FieldElement {
        &self.disc
    }

    pub fn ramification_index(&self) -> u32 {
        2
    }
}

/// v_P(xi) = v_p(N_{L/K}(xi)), normalized so a uniformizer of L_P has value 1.
pub fn ramified_valuation(xi: &RelElement, place: &RamifiedPlace) -> Result<i64, LocalError> {
    if xi.is_zero() {
        return Err(LocalError::Zero);
    }
    valuation(&xi.norm(&place.disc), &place.base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn q() -> QuadraticField {
        QuadraticField::rational()
    }

    fn prime(k: QuadraticField, s: &str) -> PrincipalPrime {
        is_principal_prime(&k.element(s)).unwrap()
    }

    #[test]
    fn valuations_over_q() {
        let p5 = prime(q(), "5");
        assert_eq!(valuation(&FieldElement::from_i64(q(), 180), &p5), Ok(1));
        assert_eq!(valuation(&FieldElement::from_i64(q(), 720), &p5), Ok(1));
        assert_eq!(valuation(&FieldElement::from_i64(q(), 5), &p5), Ok(1));
        assert_eq!(valuation(&q().element("3/25"), &p5), Ok(-2));
        assert_eq!(valuation(&FieldElement::zero(q()), &p5), Err(LocalError::Zero));
    }

    #[test]
    fn hensel_examples() {
        let p17 = prime(q(), "17");
        let t = FieldElement::from_i64(q(), 137 * -155);
        let y = hensel_sqrt(&t, &p17, 5).unwrap();
        let m = int(17).pow(5);
        let yv = y.value().x().to_integer();
        assert!((&yv * &yv - int(137 * -155)).mod_floor(&m).is_zero());

        let one = hensel_sqrt(&FieldElement::one(q()), &p17, 8).unwrap();
        let v = one.value().x().to_integer();
        assert!(v == int(1) || v == int(17).pow(8) - 1);

        let p137 = prime(q(), "137");
        let y = hensel_sqrt(&FieldElement::from_i64(q(), 17), &p137, 3).unwrap();
        let yv = y.value().x().to_integer();
        assert!((&yv * &yv - int(17)).mod_floor(&int(137).pow(3)).is_zero());

        assert!(matches!(
            hensel_sqrt(&FieldElement::from_i64(q(), 5), &p17, 3),
            Err(LocalError::NonResidue { .. })
        ));
        assert!(matches!(
            hensel_sqrt(&FieldElement::from_i64(q(), 34), &p17, 3),
            Err(LocalError::NotUnit { .. })
        ));
        assert!(matches!(
            hensel_sqrt(&FieldElement::one(q()), &prime(q(), "2"), 3),
            Err(LocalError::EvenResidueCharacteristic(_))
        ));
    }

    #[test]
    fn hensel_degree_two_residue_field() {
        // 3 is inert in Q(i); i has norm 1, a square in F_3, so i is a square in F_9
        let k = QuadraticField::new(-1).unwrap();
        let p3 = prime(k, "3");
        let t = k.element("w");
        let y = hensel_sqrt(&t, &p3, 6).unwrap();
        assert!(hensel_sqrt(&k.element("2+w"), &p3, 6).is_err());
        let ring = y.residue_ring();
        assert!(ring.congruent(&(y.value() * y.value()), &t));
    }

    #[test]
    fn padic_json_round_trip() {
        let p17 = prime(q(), "17");
        let y = hensel_sqrt(&FieldElement::from_i64(q(), -21235), &p17, 8).unwrap();
        let s = serde_json::to_string(&y).unwrap();
        let back: PadicApprox = serde_json::from_str(&s).unwrap();
        assert_eq!(back, y);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        let digits = y.digits();
        assert!(digits.iter().all(|d| d.x() >= &Rat::zero() && d.x() < &ratio(17, 1)));
    }

    #[test]
    fn two_adic_examples() {
        let two = TwoAdicPlace::Rational;
        assert_eq!(two_adic_square_criterion(&FieldElement::from_i64(q(), 17), two), Ok(true));
        assert_eq!(two_adic_square_criterion(&FieldElement::one(q()), two), Ok(true));
        assert_eq!(two_adic_square_criterion(&FieldElement::from_i64(q(), 3), two), Ok(false));
        assert_eq!(two_adic_square_criterion(&FieldElement::from_i64(q(), 9), two), Ok(true));
        assert!(two_adic_square_criterion(&FieldElement::from_i64(q(), 6), two).is_err());
    }

    #[test]
    fn places_above_two_by_residue_of_delta() {
        let k = QuadraticField::new(-1).unwrap();
        assert_eq!(places_above_two(k), vec![TwoAdicPlace::Ramified]);
        // (1+i)^2 = 2i, so v(1+i) = 1 and v(2) = 2
        assert_eq!(TwoAdicPlace::Ramified.valuation(k, &k.element("1+w")), Ok(1));
        assert_eq!(TwoAdicPlace::Ramified.valuation(k, &k.element("2")), Ok(2));
        assert_eq!(two_adic_square_criterion(&k.element("9"), TwoAdicPlace::Ramified), Ok(true));
        assert_eq!(two_adic_square_criterion(&k.element("5"), TwoAdicPlace::Ramified), Ok(false));
        let k = QuadraticField::new(-3).unwrap();
        assert_eq!(places_above_two(k), vec![TwoAdicPlace::Inert]);
        let k = QuadraticField::new(-7).unwrap();
        let places = places_above_two(k);
        assert_eq!(places.len(), 2);
        // omega = (1+sqrt(-7))/2 has norm 2: valuation 1 at one place, 0 at the other
        let w = FieldElement::omega(k);
        let vals: Vec<i64> = places.iter().map(|p| p.valuation(k, &w).unwrap()).collect();
        let mut sorted = vals.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1]);
        assert_eq!(places[0].valuation(k, &FieldElement::from_i64(k, 8)), Ok(3));
    }

    #[test]
    fn ramified_valuation_examples() {
        let p5 = prime(q(), "5");
        let disc = FieldElement::from_i64(q(), 180);
        let place = RamifiedPlace::new(p5.clone(), disc.clone()).unwrap();
        let one = FieldElement::one(q());
        let xi = RelElement::new(FieldElement::from_i64(q(), 30), one.clone());
        assert_eq!(ramified_valuation(&xi, &place), Ok(1));
        let five = RelElement::new(FieldElement::from_i64(q(), 5), FieldElement::zero(q()));
        assert_eq!(ramified_valuation(&five, &place), Ok(2));
        let x = q().element("1/5");
        let xi = RelElement::new(&(&x * &x) + &FieldElement::from_i64(q(), 5), one);
        assert_eq!(ramified_valuation(&xi, &place), Ok(-4));
        assert!(matches!(
            RamifiedPlace::new(p5, FieldElement::from_i64(q(), 25)),
            Err(LocalError::EvenDiscriminantValuation { .. })
        ));
    }
}
