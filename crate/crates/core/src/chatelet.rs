//! Parameters of the surface y^2 - a z^2 = b (x^4 + 2 c x^2 + d) with d = ce,
//! their conditions, and place-by-place certificates of local solvability.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::rat;
use crate::local::{
    hensel_sqrt, places_above_two, two_adic_square_criterion, valuation, LocalError, PadicApprox,
    DEFAULT_PRECISION,
};
use crate::nf::{
    is_principal_prime, is_square_mod, totally_positive_and_large, FieldElement, NfError,
    PrincipalPrime, QuadraticField, ResidueRing,
};
use crate::prime_search::{find_principal_prime, CongruenceSystem, SearchError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChateletError {
    #[error(transparent)]
    Nf(#[from] NfError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error("parameter {param} = {value} is not integral")]
    NotIntegral { param: &'static str, value: String },
    #[error("parameter {param} does not generate a prime ideal: {source}")]
    NotPrime { param: &'static str, source: NfError },
    #[error("parameters {0} and {1} generate the same prime ideal")]
    CoincidingPrimes(&'static str, &'static str),
    #[error("condition {0} fails")]
    ConditionFailed(String),
    #[error("search for parameter {stage} stalled: {source}")]
    SearchStalled { stage: &'static str, source: SearchError },
    #[error("local solvability premise fails at {place}: {detail}")]
    PremiseFailed { place: String, detail: String },
    #[error("{0} is not positive at every real place")]
    NotTotallyPositive(String),
    #[error("certificate does not re-verify: {0}")]
    Invalid(String),
    #[error("the field elements belong to different fields")]
    FieldMismatch,
}

/// One named check and its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub id: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, id: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.id == id).map(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find(|c| !c.holds).map(|c| c.id.as_str())
    }
}

pub const A_ONE_MOD_8: &str = "a_one_mod_8";
pub const A_TOTALLY_POSITIVE: &str = "a_totally_positive";
pub const B_ONE_MOD_2A: &str = "b_one_mod_2a";
pub const C_ONE_MOD_2: &str = "c_one_mod_2";
pub const C_NONSQUARE_MOD_A: &str = "c_nonsquare_mod_a";
pub const E_NONSQUARE_MOD_A: &str = "e_nonsquare_mod_a";
pub const A_SQUARE_MOD_B: &str = "a_square_mod_b";
pub const A_NONSQUARE_MOD_C: &str = "a_nonsquare_mod_c";
pub const BD_SQUARE_MOD_A: &str = "bd_square_mod_a";
pub const VAL_C_OF_D_IS_ONE: &str = "v_c_of_D_is_one";

/// A verified parameter tuple. Construct with [`verify_params`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChateletParams {
    pub field: QuadraticField,
    pub a: PrincipalPrime,
    pub b: PrincipalPrime,
    pub c: PrincipalPrime,
    pub e: PrincipalPrime,
    /// d = ce
    pub d: FieldElement,
    /// D = c^2 - d
    pub disc: FieldElement,
    pub report: ConditionReport,
}

/// Display form of the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub e: String,
    pub d: String,
    #[serde(rename = "D")]
    pub disc: String,
}

impl ChateletParams {
    pub fn a(&self) -> &FieldElement {
        self.a.generator()
    }
    pub fn b(&self) -> &FieldElement {
        self.b.generator()
    }
    pub fn c(&self) -> &FieldElement {
        self.c.generator()
    }
    pub fn e(&self) -> &FieldElement {
        self.e.generator()
    }

    pub fn to_json(&self) -> ParamsJson {
        ParamsJson {
            a: self.a().to_string(),
            b: self.b().to_string(),
            c: self.c().to_string(),
            e: self.e().to_string(),
            d: self.d.to_string(),
            disc: self.disc.to_string(),
        }
    }

    /// b (x^4 + 2 c x^2 + d).
    pub fn quartic_at(&self, x: &FieldElement) -> FieldElement {
        let x2 = x * x;
        let two_c = &FieldElement::from_i64(self.field, 2) * self.c();
        let inner = &(&(&x2 * &x2) + &(&two_c * &x2)) + &self.d;
        self.b() * &inner
    }
}

fn certify(param: &'static str, x: &FieldElement) -> Result<PrincipalPrime, ChateletError> {
    if !x.is_integral() {
        return Err(ChateletError::NotIntegral { param, value: x.to_string() });
    }
    is_principal_prime(x).map_err(|source| ChateletError::NotPrime { param, source })
}

fn congruent(modulus: &FieldElement, x: &FieldElement, target: &FieldElement) -> Result<bool, NfError> {
    Ok(ResidueRing::new(modulus)?.congruent(x, target))
}

/// Non-squareness tolerant of non-units: a non-unit counts as failing.
fn nonsquare(s: &FieldElement, p: &PrincipalPrime) -> bool {
    matches!(is_square_mod(s, p), Ok(false))
}

fn square(s: &FieldElement, p: &PrincipalPrime) -> bool {
    matches!(is_square_mod(s, p), Ok(true))
}

/// Every condition and derived residue fact, each computed directly.
pub fn check_params(
    k: QuadraticField,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    e: &FieldElement,
) -> Result<ChateletParams, ChateletError> {
    if [a, b, c, e].iter().any(|x| x.field() != k) {
        return Err(ChateletError::FieldMismatch);
    }
    let pa = certify("a", a)?;
    let pb = certify("b", b)?;
    let pc = certify("c", c)?;
    let pe = certify("e", e)?;
    let named = [("a", &pa), ("b", &pb), ("c", &pc), ("e", &pe)];
    for i in 0..4 {
        for j in i + 1..4 {
            if named[i].1.same_ideal(named[j].1) {
                return Err(ChateletError::CoincidingPrimes(named[i].0, named[j].0));
            }
        }
    }
    let one = FieldElement::one(k);
    let two = FieldElement::from_i64(k, 2);
    let d = c * e;
    let disc = &(c * c) - &d;
    let mut checks = Vec::new();
    let mut push = |id: &str, holds: bool| checks.push(ConditionCheck { id: id.to_string(), holds });
    push(A_ONE_MOD_8, congruent(&FieldElement::from_i64(k, 8), a, &one)?);
    push(A_TOTALLY_POSITIVE, totally_positive_and_large(a, &rat(0)));
    push(B_ONE_MOD_2A, congruent(&(&two * a), b, &one)?);
    push(C_ONE_MOD_2, congruent(&two, c, &one)?);
    let pa_odd = pa.is_odd();
    push(C_NONSQUARE_MOD_A, pa_odd && nonsquare(c, &pa));
    push(E_NONSQUARE_MOD_A, pa_odd && nonsquare(e, &pa));
    push(A_SQUARE_MOD_B, pb.is_odd() && square(a, &pb));
    push(A_NONSQUARE_MOD_C, pc.is_odd() && nonsquare(a, &pc));
    push(BD_SQUARE_MOD_A, pa_odd && square(&(b * &d), &pa));
    push(VAL_C_OF_D_IS_ONE, !disc.is_zero() && valuation(&disc, &pc)? == 1);
    Ok(ChateletParams { field: k, a: pa, b: pb, c: pc, e: pe, d, disc, report: ConditionReport { checks } })
}

/// [`check_params`], rejecting with the first failing condition.
pub fn verify_params(
    k: QuadraticField,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    e: &FieldElement,
) -> Result<ChateletParams, ChateletError> {
    let p = check_params(k, a, b, c, e)?;
    match p.report.first_failure() {
        Some(id) => Err(ChateletError::ConditionFailed(id.to_string())),
        None => Ok(p),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub radius: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { radius: 24 }
    }
}

/// Chooses a, b, c, e in turn by prime search; the result passes [`verify_params`].
pub fn choose_params(k: QuadraticField, bounds: SearchBounds) -> Result<ChateletParams, ChateletError> {
    let r = bounds.radius;
    let el = |n| FieldElement::from_i64(k, n);
    let stalled = |stage| move |source| ChateletError::SearchStalled { stage, source };

    let a_sys = CongruenceSystem::new(k, r).with(el(8), el(1)).positive_above(rat(0));
    let pa = find_principal_prime(&a_sys, |_| true).map_err(stalled("a"))?.prime;

    let b_sys = CongruenceSystem::new(k, r).with(&el(2) * pa.generator(), el(1));
    let pb = find_principal_prime(&b_sys, |p| !p.same_ideal(&pa)).map_err(stalled("b"))?.prime;

    let c_sys = CongruenceSystem::new(k, r).with(el(2), el(1));
    let pc = find_principal_prime(&c_sys, |p| {
        !p.same_ideal(&pa) && !p.same_ideal(&pb) && nonsquare(p.generator(), &pa)
    })
    .map_err(stalled("c"))?
    .prime;

    let e_sys = CongruenceSystem::new(k, r);
    let pe = find_principal_prime(&e_sys, |p| {
        !p.same_ideal(&pa) && !p.same_ideal(&pb) && !p.same_ideal(&pc) && nonsquare(p.generator(), &pa)
    })
    .map_err(stalled("e"))?
    .prime;

    verify_params(k, pa.generator(), pb.generator(), pc.generator(), pe.generator())
}

/// Completes given c and e to a full parameter tuple by searching for a and b.
pub fn complete_params(
    k: QuadraticField,
    c: &FieldElement,
    e: &FieldElement,
    bounds: SearchBounds,
) -> Result<ChateletParams, ChateletError> {
    if c.field() != k || e.field() != k {
        return Err(ChateletError::FieldMismatch);
    }
    let pc = certify("c", c)?;
    let pe = certify("e", e)?;
    if pc.same_ideal(&pe) {
        return Err(ChateletError::CoincidingPrimes("c", "e"));
    }
    let r = bounds.radius;
    let el = |n| FieldElement::from_i64(k, n);
    let stalled = |stage| move |source| ChateletError::SearchStalled { stage, source };

    let a_sys = CongruenceSystem::new(k, r).with(el(8), el(1)).positive_above(rat(0));
    let pa = find_principal_prime(&a_sys, |p| {
        !p.same_ideal(&pc) && !p.same_ideal(&pe) && nonsquare(c, p) && nonsquare(e, p)
    })
    .map_err(stalled("a"))?
    .prime;

    let b_sys = CongruenceSystem::new(k, r).with(&el(2) * pa.generator(), el(1));
    let pb = find_principal_prime(&b_sys, |p| !p.same_ideal(&pa) && !p.same_ideal(&pc) && !p.same_ideal(&pe))
        .map_err(stalled("b"))?
        .prime;

    verify_params(k, pa.generator(), pb.generator(), c, e)
}

/// Eisenstein premise at p_c for x^4 + 2 c x^2 + d, with b a unit there.
pub fn eisenstein_premise(
    b: &FieldElement,
    c: &FieldElement,
    d: &FieldElement,
    pc: &PrincipalPrime,
) -> Result<bool, ChateletError> {
    if d.is_zero() || b.is_zero() {
        return Ok(false);
    }
    let two_c = &FieldElement::from_i64(c.field(), 2) * c;
    Ok(valuation(&two_c, pc)? >= 1 && valuation(d, pc)? == 1 && valuation(b, pc)? == 0)
}

pub fn eisenstein_check(params: &ChateletParams) -> bool {
    eisenstein_premise(params.b(), params.c(), &params.d, &params.c).unwrap_or(false)
}

/// y^2 - a z^2 = b (x^4 + 2 c x^2 + d) modulo pi^N at the point (x, y, z).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPoint {
    pub x: String,
    pub y: PadicApprox,
    pub z: PadicApprox,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// A local point of the affine surface, re-verified modulo pi^N.
    HenselWitness { point: Box<LocalPoint>, square_root_of: String, root: Box<PadicApprox> },
    /// a is a square at a place above 2: v(a - 1) >= v(8).
    TwoAdicSquare { element: String, criterion: String },
    /// a is positive at the real place, so y^2 - a z^2 is isotropic.
    RealSign { element: String, sign: String },
    /// Uniform argument for all remaining places, with its machine-checked premises.
    GenericArgument { tag: String, premises: Vec<ConditionCheck> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceEvidence {
    pub place: String,
    pub kind: String,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvabilityCertificate {
    pub field: QuadraticField,
    pub params: ParamsJson,
    pub places: Vec<PlaceEvidence>,
}

pub const GENERIC_TAG: &str = "unramified-even-valuation";

fn surface_residual(
    params: &ChateletParams,
    x: &FieldElement,
    y: &FieldElement,
    z: &FieldElement,
) -> FieldElement {
    &(&(y * y) - &(&(params.a() * z) * z)) - &params.quartic_at(x)
}

/// Place-by-place local solvability certificate.
pub fn certify_local_solvability(params: &ChateletParams) -> Result<SolvabilityCertificate, ChateletError> {
    certify_local_solvability_with(params, DEFAULT_PRECISION)
}

pub fn certify_local_solvability_with(
    params: &ChateletParams,
    precision: u32,
) -> Result<SolvabilityCertificate, ChateletError> {
    if let Some(id) = params.report.first_failure() {
        return Err(ChateletError::ConditionFailed(id.to_string()));
    }
    let k = params.field;
    let a = params.a();
    let mut places = Vec::new();

    for place in k.real_places() {
        if a.sign_at(place) != Ordering::Greater {
            return Err(ChateletError::PremiseFailed { place: place.to_string(), detail: "a is not positive".into() });
        }
        places.push(PlaceEvidence {
            place: place.to_string(),
            kind: "real_sign".into(),
            evidence: Evidence::RealSign { element: a.to_string(), sign: "+".into() },
        });
    }

    for v in places_above_two(k) {
        if !two_adic_square_criterion(a, v)? {
            return Err(ChateletError::PremiseFailed { place: v.to_string(), detail: "v(a-1) < v(8)".into() });
        }
        places.push(PlaceEvidence {
            place: v.to_string(),
            kind: "two_adic_square".into(),
            evidence: Evidence::TwoAdicSquare { element: a.to_string(), criterion: "v(a-1)>=v(8)".into() },
        });
    }

    // At p_a: bd is a square, so (0, sqrt(bd), 0) is a point.
    let zero = FieldElement::zero(k);
    let bd = params.b() * &params.d;
    let root = hensel_sqrt(&bd, &params.a, precision)?;
    let z = PadicApprox::new(params.a.clone(), &zero, precision)?;
    let point = LocalPoint { x: "0".into(), y: root.clone(), z };
    places.push(hensel_entry(params, &params.a, point, "bd", root)?);

    // At p_b: a = r^2, and y - r z = 1, y + r z = bd gives a point with x = 0.
    let r = hensel_sqrt(a, &params.b, precision)?;
    let ring = r.residue_ring();
    let two = FieldElement::from_i64(k, 2);
    let half = ring.inverse(&two).expect("p_b is odd");
    let one = FieldElement::one(k);
    let y = ring.reduce_element(&(&(&one + &bd) * &half)).expect("integral");
    let inv_2r = ring.inverse(&(&two * r.value())).expect("r is a unit");
    let zz = ring.reduce_element(&(&(&bd - &one) * &inv_2r)).expect("integral");
    let point = LocalPoint {
        x: "0".into(),
        y: PadicApprox::new(params.b.clone(), &y, precision)?,
        z: PadicApprox::new(params.b.clone(), &zz, precision)?,
    };
    places.push(hensel_entry(params, &params.b, point, "a", r)?);

    places.push(PlaceEvidence {
        place: "other".into(),
        kind: "generic_argument".into(),
        evidence: Evidence::GenericArgument { tag: GENERIC_TAG.into(), premises: generic_premises(params) },
    });

    Ok(SolvabilityCertificate { field: k, params: params.to_json(), places })
}

fn hensel_entry(
    params: &ChateletParams,
    p: &PrincipalPrime,
    point: LocalPoint,
    square_root_of: &str,
    root: PadicApprox,
) -> Result<PlaceEvidence, ChateletError> {
    let x = params.field.parse_element(&point.x)?;
    let res = surface_residual(params, &x, point.y.value(), point.z.value());
    if !point.y.residue_ring().congruent(&res, &FieldElement::zero(params.field)) {
        return Err(ChateletError::PremiseFailed { place: p.to_string(), detail: "witness does not satisfy the equation".into() });
    }
    Ok(PlaceEvidence {
        place: p.to_string(),
        kind: "hensel_witness".into(),
        evidence: Evidence::HenselWitness { point: Box::new(point), square_root_of: square_root_of.into(), root: Box::new(root) },
    })
}

fn generic_premises(params: &ChateletParams) -> Vec<ConditionCheck> {
    let mk = |id: &str, holds: bool| ConditionCheck { id: id.into(), holds };
    vec![
        // a and b are prime elements, so v(a) = v(b) = 0 away from 2ab
        mk("a_generates_prime", is_principal_prime(params.a()).is_ok()),
        mk("b_generates_prime", is_principal_prime(params.b()).is_ok()),
        mk("c_d_integral", params.c().is_integral() && params.d.is_integral()),
    ]
}

/// Re-checks every explicit witness and premise of a certificate.
pub fn verify_solvability_certificate(cert: &SolvabilityCertificate) -> Result<(), ChateletError> {
    let k = cert.field;
    let parse = |s: &str| k.parse_element(s);
    let p = &cert.params;
    let params = verify_params(k, &parse(&p.a)?, &parse(&p.b)?, &parse(&p.c)?, &parse(&p.e)?)?;
    if params.to_json() != *p {
        return Err(ChateletError::Invalid("derived parameters differ".into()));
    }
    let fresh = certify_local_solvability_with(&params, precision_of(cert))?;
    for entry in &cert.places {
        if let Evidence::HenselWitness { point, root, square_root_of } = &entry.evidence {
            let x = parse(&point.x)?;
            let res = surface_residual(&params, &x, point.y.value(), point.z.value());
            if !point.y.residue_ring().congruent(&res, &FieldElement::zero(k)) {
                return Err(ChateletError::Invalid(format!("witness at {} fails", entry.place)));
            }
            let target = if square_root_of == "a" { params.a().clone() } else { params.b() * &params.d };
            if !root.residue_ring().congruent(&(root.value() * root.value()), &target) {
                return Err(ChateletError::Invalid(format!("square root at {} fails", entry.place)));
            }
        }
    }
    if fresh.places.len() != cert.places.len()
        || fresh.places.iter().zip(&cert.places).any(|(f, c)| f.place != c.place || f.kind != c.kind)
    {
        return Err(ChateletError::Invalid("place list differs".into()));
    }
    Ok(())
}

fn precision_of(cert: &SolvabilityCertificate) -> u32 {
    cert.places
        .iter()
        .find_map(|p| match &p.evidence {
            Evidence::HenselWitness { root, .. } => Some(root.precision()),
            _ => None,
        })
        .unwrap_or(DEFAULT_PRECISION)
}

/// The surface y^2 - a z^2 = -(x^2 + b)(x^2 - b) with its point (0, b, 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantSurface {
    pub a: PrincipalPrime,
    pub b: PrincipalPrime,
    pub point: [FieldElement; 3],
}

impl VariantSurface {
    /// -(x^2 + b)(x^2 - b).
    pub fn quartic_at(&self, x: &FieldElement) -> FieldElement {
        let x2 = x * x;
        let b = self.b.generator();
        -&(&(&x2 + b) * &(&x2 - b))
    }

    pub fn satisfies(&self, x: &FieldElement, y: &FieldElement, z: &FieldElement) -> bool {
        &(y * y) - &(&(self.a.generator() * z) * z) == self.quartic_at(x)
    }
}

pub fn variant_surface(a: &FieldElement, b: &FieldElement) -> Result<VariantSurface, ChateletError> {
    if a.field() != b.field() {
        return Err(ChateletError::FieldMismatch);
    }
    let pa = certify("a", a)?;
    let pb = certify("b", b)?;
    if pa.same_ideal(&pb) {
        return Err(ChateletError::CoincidingPrimes("a", "b"));
    }
    if !totally_positive_and_large(a, &rat(0)) {
        return Err(ChateletError::NotTotallyPositive(a.to_string()));
    }
    let k = a.field();
    let point = [FieldElement::zero(k), b.clone(), FieldElement::zero(k)];
    let s = VariantSurface { a: pa, b: pb, point };
    let [x, y, z] = &s.point;
    if !s.satisfies(x, y, z) {
        return Err(ChateletError::Invalid("rational point does not satisfy the equation".into()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn q() -> QuadraticField {
        QuadraticField::rational()
    }

    fn el(n: i64) -> FieldElement {
        FieldElement::from_i64(q(), n)
    }

    fn example() -> ChateletParams {
        verify_params(q(), &el(17), &el(137), &el(5), &el(-31)).unwrap()
    }

    #[test]
    fn example_tuple_passes() {
        let p = example();
        assert!(p.report.all_hold());
        assert_eq!(p.d, el(-155));
        assert_eq!(p.disc, el(180));
        // 137 * -155 = -21235 = 15 mod 17 = 7^2
        assert_eq!((-21235i64).rem_euclid(17), 15);
        assert_eq!(49 % 17, 15);
        assert_eq!(p.report.get(BD_SQUARE_MOD_A), Some(true));
    }

    #[test]
    fn failing_condition_is_named() {
        assert_eq!(139 % 34, 3);
        assert_eq!(
            verify_params(q(), &el(17), &el(139), &el(5), &el(-31)),
            Err(ChateletError::ConditionFailed(B_ONE_MOD_2A.into()))
        );
        let p = check_params(q(), &el(17), &el(139), &el(5), &el(-31)).unwrap();
        assert_eq!(p.report.get(B_ONE_MOD_2A), Some(false));
        assert_eq!(p.report.get(A_ONE_MOD_8), Some(true));
        assert!(matches!(
            verify_params(q(), &el(17), &el(137), &el(5), &el(-5)),
            Err(ChateletError::CoincidingPrimes("c", "e"))
        ));
        assert!(matches!(
            verify_params(q(), &el(17), &el(137), &el(15), &el(-31)),
            Err(ChateletError::NotPrime { param: "c", .. })
        ));
    }

    #[test]
    fn eisenstein_cases() {
        let p = example();
        assert!(eisenstein_check(&p));
        let p5 = is_principal_prime(&el(5)).unwrap();
        assert!(!eisenstein_premise(&el(137), &el(5), &el(-25 * 31), &p5).unwrap());
        assert!(!eisenstein_premise(&el(137), &el(5), &el(-31), &p5).unwrap());
    }

    #[test]
    fn local_certificate_for_example() {
        let p = example();
        let cert = certify_local_solvability(&p).unwrap();
        let places: Vec<&str> = cert.places.iter().map(|e| e.place.as_str()).collect();
        assert_eq!(places, vec!["real", "2", "(17)", "(137)", "other"]);
        let Evidence::HenselWitness { root, .. } = &cert.places[2].evidence else { panic!() };
        let y = root.value().x().to_integer();
        let m = int(17).pow(8);
        assert_eq!(num_integer::Integer::mod_floor(&(&y * &y - int(137 * -155)), &m), int(0));
        verify_solvability_certificate(&cert).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: SolvabilityCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        verify_solvability_certificate(&back).unwrap();
    }

    #[test]
    fn chosen_params_over_q() {
        let p = choose_params(q(), SearchBounds::default()).unwrap();
        assert!(p.report.all_hold());
        assert_eq!(p.a(), &el(17));
        assert!(eisenstein_check(&p));
        assert!(matches!(
            choose_params(q(), SearchBounds { radius: 1 }),
            Err(ChateletError::SearchStalled { stage: "a", .. })
        ));
    }

    #[test]
    fn variant_point() {
        let s = variant_surface(&el(17), &el(3)).unwrap();
        assert_eq!(s.quartic_at(&el(0)), el(9));
        assert!(variant_surface(&el(-7), &el(3)).is_err());
        assert!(variant_surface(&el(3), &el(-3)).is_err());
    }
}
