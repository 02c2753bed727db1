//! Local evaluation of the quaternion class (a, x^2 + c + sqrt(D)) at the
//! ramified prime above p_c, and of (a, x^2 + b) on the variant surface.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chatelet::{ChateletError, ChateletParams};
use crate::local::{ramified_valuation, valuation, LocalError, RamifiedPlace, RelElement};
use crate::nf::{
    is_principal_prime, is_square_mod, FieldElement, NfError, PrincipalPrime, QuadraticField,
};
use crate::symbols::{hilbert_odd, SymbolError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error(transparent)]
    Nf(#[from] NfError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Chatelet(#[from] ChateletError),
    #[error("{a} is a square modulo {prime}; the parity criterion does not apply")]
    ResidueAtPlace { a: String, prime: String },
    #[error("the place {0} has residue characteristic 2")]
    EvenPlace(String),
    #[error("the symbol argument vanishes at x = {0}")]
    ZeroArgument(String),
    #[error("ramification premise fails: v_c(D) = {0}, expected 1")]
    Ramification(i64),
    #[error("premise {0} fails")]
    Premise(String),
    #[error("certificate does not re-verify: {0}")]
    Invalid(String),
}

/// A local invariant in Q/Z, 0 or 1/2, with the matching symbol value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    Zero,
    Half,
}

impl Invariant {
    pub fn from_symbol(s: i8) -> Self {
        if s == 1 {
            Invariant::Zero
        } else {
            Invariant::Half
        }
    }

    pub fn symbol(&self) -> i8 {
        match self {
            Invariant::Zero => 1,
            Invariant::Half => -1,
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Zero => write!(f, "0"),
            Invariant::Half => write!(f, "1/2"),
        }
    }
}

impl Serialize for Invariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Invariant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "0" => Ok(Invariant::Zero),
            "1/2" => Ok(Invariant::Half),
            other => Err(serde::de::Error::custom(format!("invalid invariant {other:?}"))),
        }
    }
}

/// The data the evaluation at P needs: a, b, c, d, D and the prime p_c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaInputs {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: PrincipalPrime,
    pub d: FieldElement,
    pub disc: FieldElement,
}

impl WaInputs {
    pub fn from_params(p: &ChateletParams) -> Self {
        WaInputs { a: p.a().clone(), b: p.b().clone(), c: p.c.clone(), d: p.d.clone(), disc: p.disc.clone() }
    }

    pub fn field(&self) -> QuadraticField {
        self.a.field()
    }

    fn c_el(&self) -> &FieldElement {
        self.c.generator()
    }

    /// x^2 + c + sqrt(D) for x = s + t sqrt(D) in L.
    pub fn symbol_argument(&self, x: &RelElement) -> RelElement {
        let sq = x.mul(x, &self.disc);
        RelElement::new(&sq.u + self.c_el(), &sq.v + &FieldElement::one(self.field()))
    }

    /// b (x^4 + 2 c x^2 + d) for x in K.
    pub fn quartic_at(&self, x: &FieldElement) -> FieldElement {
        let x2 = x * x;
        let two_c = &FieldElement::from_i64(self.field(), 2) * self.c_el();
        &self.b * &(&(&(&x2 * &x2) + &(&two_c * &x2)) + &self.d)
    }

    pub fn place(&self) -> Result<RamifiedPlace, BrauerError> {
        Ok(RamifiedPlace::new(self.c.clone(), self.disc.clone())?)
    }

    fn require_applicable(&self) -> Result<(), BrauerError> {
        if !self.c.is_odd() {
            return Err(BrauerError::EvenPlace(self.c.to_string()));
        }
        if is_square_mod(&self.a, &self.c)? {
            return Err(BrauerError::ResidueAtPlace { a: self.a.to_string(), prime: self.c.to_string() });
        }
        Ok(())
    }
}

/// Invariant of (a, xi) at P for a symbol argument xi in L; a must be a
/// non-square modulo P.
pub fn invariant_of_argument(inputs: &WaInputs, xi: &RelElement) -> Result<(Invariant, i64), BrauerError> {
    inputs.require_applicable()?;
    let place = inputs.place()?;
    if xi.is_zero() {
        return Err(BrauerError::ZeroArgument(xi.to_string()));
    }
    let v = ramified_valuation(xi, &place)?;
    let inv = if v.rem_euclid(2) == 0 { Invariant::Zero } else { Invariant::Half };
    Ok((inv, v))
}

/// Invariant of (a, x^2 + c + sqrt(D)) at P for x in L.
pub fn quaternion_invariant(params: &ChateletParams, x: &RelElement) -> Result<Invariant, BrauerError> {
    let inputs = WaInputs::from_params(params);
    let xi = inputs.symbol_argument(x);
    if xi.is_zero() {
        return Err(BrauerError::ZeroArgument(x.to_string()));
    }
    Ok(invariant_of_argument(&inputs, &xi)?.0)
}

/// Evaluation data at one x-coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEvaluation {
    pub x: String,
    pub val_x: i64,
    pub val_quartic: i64,
    pub val_symbol_arg: i64,
    pub invariant: Invariant,
    pub symbol: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub base: QuadraticField,
    #[serde(rename = "D")]
    pub disc: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WAFailureCertificate {
    #[serde(rename = "L")]
    pub extension: ExtensionJson,
    #[serde(rename = "P_over")]
    pub p_over: String,
    pub a: String,
    pub c: String,
    pub b: String,
    pub d: String,
    pub val_c_of_disc: i64,
    pub a_nonsquare_mod_p: bool,
    pub points: Vec<PointEvaluation>,
    pub archimedean_trivial: bool,
}

impl WAFailureCertificate {
    pub fn invariants(&self) -> Vec<Invariant> {
        self.points.iter().map(|p| p.invariant).collect()
    }
}

fn evaluate(inputs: &WaInputs, x: &FieldElement) -> Result<PointEvaluation, BrauerError> {
    let place = inputs.place()?;
    let base = place.base_prime();
    let xr = RelElement::new(x.clone(), FieldElement::zero(inputs.field()));
    let xi = inputs.symbol_argument(&xr);
    let (inv, v_arg) = invariant_of_argument(inputs, &xi)?;
    let q = inputs.quartic_at(x);
    if q.is_zero() {
        return Err(BrauerError::ZeroArgument(x.to_string()));
    }
    // valuations of elements of K double in L
    let val_quartic = 2 * valuation(&q, base)?;
    let val_x = 2 * valuation(x, base)?;
    Ok(PointEvaluation {
        x: x.to_string(),
        val_x,
        val_quartic,
        val_symbol_arg: v_arg,
        invariant: inv,
        symbol: inv.symbol(),
    })
}

/// Valuations and invariant at P for the point with x-coordinate x in K.
pub fn evaluate_point(params: &ChateletParams, x: &FieldElement) -> Result<PointEvaluation, BrauerError> {
    let inputs = WaInputs::from_params(params);
    inputs.require_applicable()?;
    evaluate(&inputs, x)
}

/// a is a square at every real place of L = K(sqrt(D)).
pub fn archimedean_trivial_for(a: &FieldElement, disc: &FieldElement) -> bool {
    a.field()
        .real_places()
        .into_iter()
        .filter(|&p| disc.sign_at(p) == Ordering::Greater)
        .all(|p| a.sign_at(p) == Ordering::Greater)
}

pub fn archimedean_triviality(params: &ChateletParams) -> bool {
    archimedean_trivial_for(params.a(), &params.disc)
}

/// Certificate that the class takes both values 0 and 1/2 on local points at P.
pub fn certify_wa_failure(params: &ChateletParams) -> Result<WAFailureCertificate, BrauerError> {
    let cert = certify_wa_failure_for(&WaInputs::from_params(params))?;
    Ok(WAFailureCertificate { archimedean_trivial: archimedean_triviality(params), ..cert })
}

pub fn certify_wa_failure_for(inputs: &WaInputs) -> Result<WAFailureCertificate, BrauerError> {
    let k = inputs.field();
    let pc = &inputs.c;
    if inputs.disc.is_zero() {
        return Err(BrauerError::Ramification(i64::MAX));
    }
    let vd = valuation(&inputs.disc, pc)?;
    if vd != 1 {
        return Err(BrauerError::Ramification(vd));
    }
    inputs.require_applicable()?;
    let c = inputs.c_el();
    let x_even = FieldElement::one(k).div(c).expect("c nonzero");
    let even = evaluate(inputs, &x_even)?;
    if even.val_x >= 0 || even.val_quartic % 2 != 0 || even.invariant != Invariant::Zero {
        return Err(BrauerError::Premise(format!("point x = {x_even}: {even:?}")));
    }
    let odd = evaluate(inputs, c)?;
    if odd.val_quartic % 2 != 0 || odd.invariant != Invariant::Half {
        return Err(BrauerError::Premise(format!("point x = {c}: {odd:?}")));
    }
    Ok(WAFailureCertificate {
        extension: ExtensionJson { base: k, disc: inputs.disc.to_string() },
        p_over: pc.to_string(),
        a: inputs.a.to_string(),
        b: inputs.b.to_string(),
        c: c.to_string(),
        d: inputs.d.to_string(),
        val_c_of_disc: vd,
        a_nonsquare_mod_p: true,
        points: vec![even, odd],
        archimedean_trivial: archimedean_trivial_for(&inputs.a, &inputs.disc),
    })
}

/// Recomputes a certificate from its stored inputs and compares.
pub fn verify_wa_certificate(cert: &WAFailureCertificate) -> Result<(), BrauerError> {
    let k = cert.extension.base;
    let parse = |s: &str| k.parse_element(s);
    let c = parse(&cert.c)?;
    let inputs = WaInputs {
        a: parse(&cert.a)?,
        b: parse(&cert.b)?,
        c: is_principal_prime(&c)?,
        d: parse(&cert.d)?,
        disc: parse(&cert.extension.disc)?,
    };
    if &(&c * &c) - &inputs.d != inputs.disc {
        return Err(BrauerError::Invalid("D differs from c^2 - d".into()));
    }
    let fresh = certify_wa_failure_for(&inputs)?;
    if fresh != *cert {
        return Err(BrauerError::Invalid("recomputed certificate differs".into()));
    }
    let mut inv = cert.invariants();
    inv.sort();
    if inv != [Invariant::Zero, Invariant::Half] {
        return Err(BrauerError::Invalid("invariants are not {0, 1/2}".into()));
    }
    Ok(())
}

/// Evaluations of (a, x^2 + b) at v_b on y^2 - a z^2 = -(x^2 + b)(x^2 - b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantCertificate {
    pub field: QuadraticField,
    pub a: String,
    pub b: String,
    pub place: String,
    pub points: Vec<PointEvaluation>,
}

pub fn variant_evaluate(a: &FieldElement, pb: &PrincipalPrime, x: &FieldElement) -> Result<PointEvaluation, BrauerError> {
    let b = pb.generator();
    let x2 = x * x;
    let arg = &x2 + b;
    let quartic = -&(&arg * &(&x2 - b));
    if arg.is_zero() || quartic.is_zero() {
        return Err(BrauerError::ZeroArgument(x.to_string()));
    }
    let symbol = hilbert_odd(a, &arg, pb)?;
    let inv = Invariant::from_symbol(symbol);
    Ok(PointEvaluation {
        x: x.to_string(),
        val_x: valuation(x, pb)?,
        val_quartic: valuation(&quartic, pb)?,
        val_symbol_arg: valuation(&arg, pb)?,
        invariant: inv,
        symbol,
    })
}

pub fn variant_wa_failure(a: &FieldElement, b: &FieldElement) -> Result<VariantCertificate, BrauerError> {
    let pb = is_principal_prime(b)?;
    if !pb.is_odd() {
        return Err(BrauerError::EvenPlace(pb.to_string()));
    }
    if is_square_mod(a, &pb)? {
        return Err(BrauerError::ResidueAtPlace { a: a.to_string(), prime: pb.to_string() });
    }
    let k = a.field();
    let x_even = FieldElement::one(k).div(b).expect("b nonzero");
    let even = variant_evaluate(a, &pb, &x_even)?;
    let odd = variant_evaluate(a, &pb, b)?;
    let parity_ok = |p: &PointEvaluation, expect: Invariant| {
        p.val_quartic % 2 == 0
            && p.invariant == expect
            && (p.val_symbol_arg.rem_euclid(2) == 1) == (expect == Invariant::Half)
    };
    if !parity_ok(&even, Invariant::Zero) || even.val_x >= 0 {
        return Err(BrauerError::Premise(format!("point x = {x_even}")));
    }
    if !parity_ok(&odd, Invariant::Half) {
        return Err(BrauerError::Premise(format!("point x = {b}")));
    }
    Ok(VariantCertificate { field: k, a: a.to_string(), b: b.to_string(), place: pb.to_string(), points: vec![even, odd] })
}
