//! The conic bundle over P^1 x P^1, its degenerate locus and branch locus,
//! the base change E -> P^1, and chart equations of the pulled-back
//! threefold X over Q.
//!
//! Variables: (u:v) and (w:x) on P^1 x P^1, (x':y':z') on P^2, (y:z:t) on
//! the fibres of the plane bundle.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{decimal_digits, int, rat, rat_to_string, Int, Rat};
use crate::elliptic::{Curve, CurvePoint, TorsionCheck};
use crate::nf::{FieldElement, NfError, QuadraticField};
use crate::poly::elim::{discriminant_in, resultant_in};
use crate::poly::groebner::is_unit_ideal;
use crate::poly::upoly::subresultant_gcd;
use crate::poly::{irreducibility, BinaryForm, Irreducibility, MultiPoly, PolyError, UPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Nf(#[from] NfError),
    #[error("{0} is not a quartic")]
    NotQuartic(String),
    #[error("{0} is not separable")]
    NotSeparable(String),
    #[error("the two quartics have a common root")]
    NotCoprime,
    #[error("section {0} does not have bidegree (2, 4)")]
    WrongBidegree(String),
    #[error("the discriminant of the section vanishes identically")]
    ZeroDiscriminant,
    #[error("elimination degenerated at stage {0}")]
    DegenerateElimination(&'static str),
    #[error("unknown chart {0:?}")]
    UnknownChart(String),
    #[error("bad coordinates: {0}")]
    BadCoordinates(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

const BASE: (Var, Var) = (Var::U, Var::V);
const FIBRE: (Var, Var) = (Var::W, Var::X);

/// b (x^4 + 2 c x^2 + d) and -b (x^4 + d).
pub fn chatelet_quartics(b: &Rat, c: &Rat, d: &Rat) -> (UPoly, UPoly) {
    let two_c = rat(2) * c;
    let p_inf = UPoly::new(vec![d.clone(), Rat::zero(), two_c, Rat::zero(), Rat::one()]).scale(b);
    let p_0 = UPoly::new(vec![d.clone(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::one()]).scale(&-b);
    (p_inf, p_0)
}

/// The quartics of the surface y^2 - 17 z^2 = 137 (x^4 + 10 x^2 - 155).
pub fn example_quartics() -> (UPoly, UPoly) {
    chatelet_quartics(&rat(137), &rat(5), &rat(-155))
}

/// P(x) -> P~(w, x) = w^4 P(x / w).
fn homogenize_quartic(p: &UPoly) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for i in 0..=4u32 {
        let term = &(&MultiPoly::var(Var::X).pow(i) * &MultiPoly::var(Var::W).pow(4 - i))
            * &MultiPoly::constant(p.coeff(i as usize));
        out = &out + &term;
    }
    out
}

/// u^2 P~_inf(w, x) + v^2 P~_0(w, x).
pub fn build_section(p_inf: &UPoly, p_0: &UPoly) -> Result<MultiPoly, FibrationError> {
    for p in [p_inf, p_0] {
        if p.degree() != Some(4) {
            return Err(FibrationError::NotQuartic(p.to_string()));
        }
        if !p.is_squarefree() {
            return Err(FibrationError::NotSeparable(p.to_string()));
        }
    }
    if crate::poly::elim::resultant(p_inf, p_0).is_zero() {
        return Err(FibrationError::NotCoprime);
    }
    let u2 = MultiPoly::var(Var::U).pow(2);
    let v2 = MultiPoly::var(Var::V).pow(2);
    Ok(&(&u2 * &homogenize_quartic(p_inf)) + &(&v2 * &homogenize_quartic(p_0)))
}

fn check_bidegree(s: &MultiPoly) -> Result<(), FibrationError> {
    let groups: [&[Var]; 2] = [&[BASE.0, BASE.1], &[FIBRE.0, FIBRE.1]];
    let others = Var::ALL.iter().filter(|v| ![BASE.0, BASE.1, FIBRE.0, FIBRE.1].contains(v));
    if s.multidegree(&groups) != Some(vec![2, 4]) || others.into_iter().any(|&v| s.uses(v)) {
        return Err(FibrationError::WrongBidegree(s.to_string()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartSmoothness {
    pub chart: String,
    pub unit_ideal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub charts: Vec<ChartSmoothness>,
    pub smooth: bool,
}

/// Z(s') is smooth iff (f, df/da, df/db) is the unit ideal in each of the
/// four affine charts of P^1 x P^1.
pub fn degenerate_locus_smooth(s: &MultiPoly) -> Result<SmoothnessReport, FibrationError> {
    check_bidegree(s)?;
    let charts = [(Var::U, Var::W), (Var::U, Var::X), (Var::V, Var::W), (Var::V, Var::X)];
    let results: Vec<ChartSmoothness> = charts
        .par_iter()
        .map(|&(c1, c2)| {
            let f = s.substitute_rat(c1, &rat(1)).substitute_rat(c2, &rat(1));
            let a = if c1 == Var::U { Var::V } else { Var::U };
            let b = if c2 == Var::W { Var::X } else { Var::W };
            let unit = is_unit_ideal(&[f.clone(), f.derivative(a), f.derivative(b)]);
            ChartSmoothness { chart: format!("{c1}!=0,{c2}!=0"), unit_ideal: unit }
        })
        .collect();
    let smooth = results.iter().all(|c| c.unit_ideal);
    Ok(SmoothnessReport { charts: results, smooth })
}

/// Minimal polynomial (primitive) of the orbit of +-sqrt(p +- sqrt(q)) / den:
/// (den^2 X^2 - p)^2 - q.
pub fn radical_orbit_polynomial(p: &Rat, q: &Rat, den: &Rat) -> UPoly {
    let inner = UPoly::new(vec![-p.clone(), Rat::zero(), den * den]);
    (&inner.pow(2) - &UPoly::constant(q.clone())).primitive()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchLocus {
    /// Discriminant of s' as a binary quartic in (w:x).
    pub discriminant: BinaryForm,
    pub squarefree: BinaryForm,
    pub root_count: usize,
    pub infinity_is_root: bool,
    /// Rational roots u/v, as "p/q", plus "inf" if (1:0) is a root.
    pub rational_roots: Vec<String>,
    /// Primitive cofactor of the rational linear factors, in u/v.
    #[serde(with = "crate::poly::form::int_vec")]
    pub irrational_part: Vec<Int>,
    pub irrational_part_irreducibility: Irreducibility,
    pub squarefree_discriminant_nonzero: bool,
}

impl BranchLocus {
    pub fn squarefree_affine(&self) -> UPoly {
        self.squarefree.dehomogenize()
    }

    /// Whether the quartic orbit has the given radical form.
    pub fn matches_radicals(&self, p: &Rat, q: &Rat, den: &Rat) -> bool {
        radical_orbit_polynomial(p, q, den) == UPoly::from_int_vec(&self.irrational_part)
    }
}

pub fn branch_locus(s: &MultiPoly) -> Result<BranchLocus, FibrationError> {
    check_bidegree(s)?;
    let affine = s.substitute_rat(Var::W, &rat(1));
    let disc = discriminant_in(&affine, Var::X)?;
    if disc.is_zero() {
        return Err(FibrationError::ZeroDiscriminant);
    }
    let disc_form = BinaryForm::from_multi(&disc, BASE.0, BASE.1)?;
    let inf_order = disc_form.order_at_infinity();
    let affine_sqf = disc_form.dehomogenize().squarefree_part();
    let finite_deg = affine_sqf.degree().unwrap_or(0);
    let infinity_is_root = inf_order > 0;
    let sqf_degree = finite_deg + usize::from(infinity_is_root);
    let squarefree = BinaryForm::from_upoly(&affine_sqf, BASE, sqf_degree);

    let roots = affine_sqf.rational_roots();
    let mut rest = affine_sqf.clone();
    for r in &roots {
        rest = rest.divrem(&UPoly::new(vec![-r.clone(), Rat::one()])).0;
    }
    let mut rational_roots: Vec<String> = roots.iter().map(rat_to_string).collect();
    if infinity_is_root {
        rational_roots.push("inf".into());
    }
    let irreducible = irreducibility(&rest, 200);
    let sqf_disc_nonzero = affine_sqf.degree().unwrap_or(0) < 2
        || !crate::poly::elim::discriminant(&affine_sqf).is_zero();
    Ok(BranchLocus {
        discriminant: disc_form,
        squarefree,
        root_count: sqf_degree,
        infinity_is_root,
        rational_roots,
        irrational_part: rest.primitive_int(),
        irrational_part_irreducibility: irreducible,
        squarefree_discriminant_nonzero: sqf_disc_nonzero,
    })
}

/// E: y'^2 z' = x'^3 - 4 x' z'^2.
pub fn curve_e() -> Curve {
    Curve::new(rat(-4), rat(0))
}

/// The plane cubic of a short Weierstrass curve in (x':y':z').
pub fn curve_equation(e: &Curve) -> MultiPoly {
    let (x, y, z) = (MultiPoly::var(Var::Xp), MultiPoly::var(Var::Yp), MultiPoly::var(Var::Zp));
    let rhs = &(&x.pow(3) + &(&(&x * &z.pow(2)) * &MultiPoly::constant(e.a.clone())))
        + &(&z.pow(3) * &MultiPoly::constant(e.b.clone()));
    &(&y.pow(2) * &z) - &rhs
}

/// A rational map P^2 -> P^1, (x':y':z') -> (N : M), N and M forms of equal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap {
    pub n: MultiPoly,
    pub m: MultiPoly,
}

impl PlaneMap {
    /// (y'^2 + z'^2 : x' y').
    pub fn standard() -> Self {
        PlaneMap {
            n: "y'^2 + z'^2".parse().unwrap(),
            m: "x'*y'".parse().unwrap(),
        }
    }

    pub fn new(n: MultiPoly, m: MultiPoly) -> Result<Self, FibrationError> {
        let g: &[Var] = &[Var::Xp, Var::Yp, Var::Zp];
        let dn = n.homogeneous_degree(g);
        if dn.is_none() || dn != m.homogeneous_degree(g) {
            return Err(FibrationError::Poly(PolyError::NotHomogeneous(format!("({n} : {m})"))));
        }
        Ok(PlaneMap { n, m })
    }

    pub fn degree(&self) -> u32 {
        self.n.total_degree().unwrap_or(0)
    }

    /// Image of a rational point, None on the indeterminacy locus.
    pub fn eval(&self, p: &CurvePoint) -> Option<(Rat, Rat)> {
        let pt = [(Var::Xp, p.x.clone()), (Var::Yp, p.y.clone()), (Var::Zp, p.z.clone())];
        let n = self.n.eval(&pt).ok()?;
        let m = self.m.eval(&pt).ok()?;
        if n.is_zero() && m.is_zero() {
            return None;
        }
        let s = if m.is_zero() { n.clone() } else { m.clone() };
        Some((n / &s, m / s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EPointCheck {
    #[serde(flatten)]
    pub torsion: TorsionCheck,
    /// Image under the map as "(N:M)".
    pub image: String,
    pub image_is_infinity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EPointsReport {
    pub points: Vec<EPointCheck>,
    pub all_hold: bool,
}

/// The four 2-torsion points of E: on E, killed by doubling, sent to (1:0).
pub fn verify_e_points() -> EPointsReport {
    let e = curve_e();
    let gamma = PlaneMap::standard();
    let pts = [
        CurvePoint::new(rat(0), rat(1), rat(0)).unwrap(),
        CurvePoint::affine(rat(0), rat(0)),
        CurvePoint::affine(rat(2), rat(0)),
        CurvePoint::affine(rat(-2), rat(0)),
    ];
    let points: Vec<EPointCheck> = pts
        .iter()
        .map(|p| {
            let img = gamma.eval(p);
            let image = match &img {
                Some((n, m)) => format!("({}:{})", rat_to_string(n), rat_to_string(m)),
                None => "undefined".into(),
            };
            let image_is_infinity = matches!(&img, Some((n, m)) if m.is_zero() && !n.is_zero());
            EPointCheck { torsion: e.torsion_check(p), image, image_is_infinity }
        })
        .collect();
    let all_hold = points.iter().all(|p| p.torsion.on_curve && p.torsion.doubles_to_identity && p.image_is_infinity);
    EPointsReport { points, all_hold }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndeterminacyPoint {
    pub point: String,
    pub in_indeterminacy: bool,
    pub on_curve: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndeterminacyReport {
    pub points: Vec<IndeterminacyPoint>,
    pub disjoint: bool,
}

/// D = {(1:0:0), (0:i:1), (0:-i:1)} over Q(i): each point is a common zero of
/// (N, M) and none lies on E.
pub fn indeterminacy_disjoint() -> Result<IndeterminacyReport, FibrationError> {
    let k = QuadraticField::new(-1)?;
    let gamma = PlaneMap::standard();
    let e = curve_equation(&curve_e());
    let zero = FieldElement::zero(k);
    let one = FieldElement::one(k);
    let i = FieldElement::omega(k);
    let pts = [
        [one.clone(), zero.clone(), zero.clone()],
        [zero.clone(), i.clone(), one.clone()],
        [zero.clone(), -&i, one.clone()],
    ];
    let embed = |r: &Rat| FieldElement::from_rat(k, r.clone());
    let mut points = Vec::new();
    for p in pts {
        let at = [(Var::Xp, p[0].clone()), (Var::Yp, p[1].clone()), (Var::Zp, p[2].clone())];
        let n = gamma.n.eval_in(&at, embed)?;
        let m = gamma.m.eval_in(&at, embed)?;
        let on = e.eval_in(&at, embed)?;
        points.push(IndeterminacyPoint {
            point: format!("({}:{}:{})", p[0], p[1], p[2]),
            in_indeterminacy: n.is_zero() && m.is_zero(),
            on_curve: on.is_zero(),
        });
    }
    let disjoint = points.iter().all(|p| p.in_indeterminacy && !p.on_curve);
    Ok(IndeterminacyReport { points, disjoint })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreCheck {
    pub root: String,
    pub fibre_polynomial: String,
    pub expected_degree: usize,
    pub degree: usize,
    pub squarefree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaleCertificate {
    /// Squarefree branch form in (u, v).
    pub g6: String,
    /// Image-of-ramification form in (u, v).
    pub g12: String,
    pub g12_content: String,
    pub g12_max_coefficient: String,
    pub g12_max_digits: usize,
    /// a(u) g6(u, 1) + b(u) g12(u, 1) = 1.
    pub cofactor_a: String,
    pub cofactor_b: String,
    pub both_vanish_at_infinity: bool,
    /// Primitive gcd of g6(u, 1) and g12(u, 1) from the subresultant sequence.
    pub subresultant_gcd: String,
    pub coprime: bool,
    pub rational_fibres: Vec<FibreCheck>,
    /// Images of the points of E outside the affine chart z' != 0.
    pub images_at_infinity_avoid_branch: bool,
    pub etale: bool,
}

fn upoly_text(p: &UPoly) -> String {
    p.to_multi(Var::U).to_string()
}

/// Decides whether the map is etale over the branch locus of s'. Elimination
/// order is fixed: y' first (on E and on the fibre equation), then x'.
pub fn etale_over_branch(gamma: &PlaneMap, s: &MultiPoly) -> Result<EtaleCertificate, FibrationError> {
    let branch = branch_locus(s)?;
    let curve = curve_e();
    let chart = |p: &MultiPoly| p.substitute_rat(Var::Zp, &rat(1));
    let f = chart(&curve_equation(&curve));
    let (n, m) = (chart(&gamma.n), chart(&gamma.m));
    let (x, y) = (Var::Xp, Var::Yp);

    // the differential of N/M along F = 0 vanishes where J = 0
    let dn = |v| &(&n.derivative(v) * &m) - &(&n * &m.derivative(v));
    let j = &(&dn(x) * &f.derivative(y)) - &(&dn(y) * &f.derivative(x));
    let r1 = resultant_in(&f, &j, y)?;
    if r1.is_zero() {
        return Err(FibrationError::DegenerateElimination("ramification in x'"));
    }
    let r1 = UPoly::from_multi(&r1, x)?.squarefree_part().primitive();
    let pencil = &(&MultiPoly::var(Var::U) * &m) - &(&MultiPoly::var(Var::V) * &n);
    let r2 = resultant_in(&f, &pencil, y)?;
    if r2.is_zero() {
        return Err(FibrationError::DegenerateElimination("fibre equation in x'"));
    }
    let g12 = resultant_in(&r1.to_multi(x), &r2, x)?;
    if g12.is_zero() {
        return Err(FibrationError::DegenerateElimination("image in (u:v)"));
    }
    let g12_form = BinaryForm::from_multi(&g12, BASE.0, BASE.1)?;
    let g12_prim = g12_form.dehomogenize().primitive();
    let g12_max = g12_prim.max_abs_coefficient().to_integer();

    let g6_aff = branch.squarefree_affine();
    let g12_aff = g12_form.dehomogenize();
    let both_inf = branch.infinity_is_root && g12_form.vanishes_at_infinity();
    let (g, a, b) = g6_aff.ext_gcd(&g12_aff);
    let sub = subresultant_gcd(&g6_aff.primitive_int(), &g12_aff.primitive_int());
    let coprime = g.is_constant() && !both_inf;

    // per-point check over the rational finite branch points
    let fibre_degree = (gamma.degree() * 3) as usize;
    let mut fibres = Vec::new();
    for r in g6_aff.rational_roots() {
        let h = r2.substitute_rat(Var::U, &r).substitute_rat(Var::V, &rat(1));
        let h = UPoly::from_multi(&h, x)?;
        fibres.push(FibreCheck {
            root: rat_to_string(&r),
            fibre_polynomial: h.to_multi(x).to_string(),
            expected_degree: fibre_degree,
            degree: h.degree().unwrap_or(0),
            squarefree: h.is_squarefree(),
        });
    }
    let fibres_ok = fibres.iter().all(|c| c.squarefree && c.degree == c.expected_degree);

    let mut avoid = true;
    for p in [CurvePoint::new(rat(0), rat(1), rat(0)).unwrap()] {
        match gamma.eval(&p) {
            None => avoid = false,
            Some((nv, mv)) => {
                let val = branch.squarefree.to_multi().eval(&[(Var::U, nv), (Var::V, mv)])?;
                avoid &= !val.is_zero();
            }
        }
    }

    Ok(EtaleCertificate {
        g6: branch.squarefree.to_string(),
        g12: g12_form.to_string(),
        g12_content: g12_form.content.to_string(),
        g12_max_coefficient: g12_max.to_string(),
        g12_max_digits: decimal_digits(&g12_max),
        cofactor_a: upoly_text(&a),
        cofactor_b: upoly_text(&b),
        both_vanish_at_infinity: both_inf,
        subresultant_gcd: UPoly::from_int_vec(&sub).to_multi(Var::U).to_string(),
        coprime,
        rational_fibres: fibres,
        images_at_infinity_avoid_branch: avoid,
        etale: coprime && fibres_ok && avoid,
    })
}

/// Re-checks the Bezout identity and the stored verdict.
pub fn verify_etale_certificate(cert: &EtaleCertificate) -> Result<bool, FibrationError> {
    let parse = |s: &str| s.parse::<MultiPoly>().map_err(|e| FibrationError::Malformed(e.to_string()));
    let aff = |p: MultiPoly| UPoly::from_multi(&p.substitute_rat(Var::V, &rat(1)), Var::U);
    let g6 = aff(parse(&cert.g6)?)?;
    let g12 = aff(parse(&cert.g12)?)?;
    let a = UPoly::from_multi(&parse(&cert.cofactor_a)?, Var::U)?;
    let b = UPoly::from_multi(&parse(&cert.cofactor_b)?, Var::U)?;
    let bezout = &(&a * &g6) + &(&b * &g12);
    let identity = bezout == UPoly::constant(Rat::one());
    if identity != cert.coprime && !cert.both_vanish_at_infinity {
        return Err(FibrationError::Malformed("coprimality verdict disagrees with the cofactors".into()));
    }
    Ok(identity && !cert.both_vanish_at_infinity && cert.etale)
}

/// Affine chart of (P^2 \ D) x P^1: one nonzero coordinate on each factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChartId {
    pub plane: Var,
    pub line: Var,
}

impl ChartId {
    pub fn all() -> Vec<ChartId> {
        let mut out = Vec::new();
        for plane in [Var::Xp, Var::Yp, Var::Zp] {
            for line in [Var::W, Var::X] {
                out.push(ChartId { plane, line });
            }
        }
        out
    }

    /// "z',w" style names.
    pub fn parse(s: &str) -> Result<ChartId, FibrationError> {
        let bad = || FibrationError::UnknownChart(s.to_string());
        let (p, l) = s.split_once(',').ok_or_else(bad)?;
        let plane = Var::from_name(p.trim()).filter(|v| [Var::Xp, Var::Yp, Var::Zp].contains(v)).ok_or_else(bad)?;
        let line = Var::from_name(l.trim()).filter(|v| [Var::W, Var::X].contains(v)).ok_or_else(bad)?;
        Ok(ChartId { plane, line })
    }

    /// Remaining plane coordinates in the order x', y', z'.
    pub fn plane_coords(&self) -> [Var; 2] {
        let v: Vec<Var> = [Var::Xp, Var::Yp, Var::Zp].into_iter().filter(|&v| v != self.plane).collect();
        [v[0], v[1]]
    }

    pub fn line_coord(&self) -> Var {
        if self.line == Var::W {
            Var::X
        } else {
            Var::W
        }
    }
}

impl std::fmt::Display for ChartId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.plane, self.line)
    }
}

/// X: y^2 - a z^2 = t^2 s'(N, M; w, x) over E, in affine charts.
#[derive(Debug, Clone)]
pub struct ThreefoldModel {
    pub a: Rat,
    pub section: MultiPoly,
    pub gamma: PlaneMap,
    pub curve: Curve,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheck {
    pub chart: String,
    pub fibre_nonzero: bool,
    pub outside_indeterminacy: bool,
    pub on_curve: bool,
    pub conic_holds: bool,
    pub conic_lhs: String,
    pub conic_rhs: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionReport {
    pub pairs: usize,
    pub samples_per_pair: usize,
    pub consistent: bool,
}

impl ThreefoldModel {
    pub fn example() -> Result<Self, FibrationError> {
        let (p_inf, p_0) = example_quartics();
        Ok(ThreefoldModel { a: rat(17), section: build_section(&p_inf, &p_0)?, gamma: PlaneMap::standard(), curve: curve_e() })
    }

    /// s = s'(N, M; w, x), bidegree (4, 4) on P^2 x P^1.
    pub fn pulled_back_section(&self) -> MultiPoly {
        self.section
            .substitute(Var::U, &self.gamma.n)
            .substitute(Var::V, &self.gamma.m)
    }

    /// (conic equation, curve equation) in the chart, both as "lhs - rhs".
    pub fn chart_equations(&self, chart: ChartId) -> (MultiPoly, MultiPoly) {
        let one = rat(1);
        let s = self.pulled_back_section().substitute_rat(chart.plane, &one).substitute_rat(chart.line, &one);
        let (y, z, t) = (MultiPoly::var(Var::Y), MultiPoly::var(Var::Z), MultiPoly::var(Var::T));
        let conic = &(&y.pow(2) - &(&z.pow(2) * &MultiPoly::constant(self.a.clone()))) - &(&t.pow(2) * &s);
        let curve = curve_equation(&self.curve).substitute_rat(chart.plane, &one);
        (conic, curve)
    }

    /// coords: the two remaining plane coordinates, the remaining line
    /// coordinate, then the fibre point (y : z : t).
    pub fn verify_point(&self, chart: ChartId, coords: &[Rat]) -> Result<PointCheck, FibrationError> {
        if coords.len() != 6 {
            return Err(FibrationError::BadCoordinates(format!("expected 6 coordinates, got {}", coords.len())));
        }
        let [p1, p2] = chart.plane_coords();
        let at = vec![
            (chart.plane, rat(1)),
            (p1, coords[0].clone()),
            (p2, coords[1].clone()),
            (chart.line, rat(1)),
            (chart.line_coord(), coords[2].clone()),
            (Var::Y, coords[3].clone()),
            (Var::Z, coords[4].clone()),
            (Var::T, coords[5].clone()),
        ];
        let fibre_nonzero = coords[3..].iter().any(|c| !c.is_zero());
        let n = self.gamma.n.eval(&at)?;
        let m = self.gamma.m.eval(&at)?;
        let outside = !(n.is_zero() && m.is_zero());
        let on_curve = curve_equation(&self.curve).eval(&at)?.is_zero();
        let (y, z, t) = (&coords[3], &coords[4], &coords[5]);
        let lhs = y * y - &self.a * z * z;
        let s = self.pulled_back_section().eval(&at)?;
        let rhs = t * t * s;
        let conic_holds = lhs == rhs;
        Ok(PointCheck {
            chart: chart.to_string(),
            fibre_nonzero,
            outside_indeterminacy: outside,
            on_curve,
            conic_holds,
            conic_lhs: rat_to_string(&lhs),
            conic_rhs: rat_to_string(&rhs),
            holds: fibre_nonzero && outside && on_curve && conic_holds,
        })
    }

    /// On overlaps, (y : z : t) in chart A corresponds to (y : z : t l^2 m^2)
    /// in chart B, l and m the chart-B coordinates in chart-A scaling. Checks
    /// on random rational points that the conic defect is preserved and the
    /// curve defect scales by l^-3.
    pub fn transition_check(&self, samples: usize, seed: u64) -> TransitionReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let charts = ChartId::all();
        let section = self.pulled_back_section();
        let curve = curve_equation(&self.curve);
        let mut consistent = true;
        let mut pairs = 0;
        let rand_rat = |rng: &mut ChaCha8Rng| loop {
            let r = Rat::new(int(rng.gen_range(-30..=30)), int(rng.gen_range(1..=7)));
            if !r.is_zero() {
                return r;
            }
        };
        for a in &charts {
            for b in &charts {
                if a == b {
                    continue;
                }
                pairs += 1;
                for _ in 0..samples {
                    let mut hom: Vec<(Var, Rat)> =
                        [Var::Xp, Var::Yp, Var::Zp, Var::W, Var::X].iter().map(|&v| (v, rand_rat(&mut rng))).collect();
                    let (y, z, t) = (rand_rat(&mut rng), rand_rat(&mut rng), rand_rat(&mut rng));
                    let get = |h: &[(Var, Rat)], v: Var| h.iter().find(|(w, _)| *w == v).unwrap().1.clone();
                    let scale = |h: &[(Var, Rat)], c: ChartId| -> Vec<(Var, Rat)> {
                        let (pl, ln) = (get(h, c.plane), get(h, c.line));
                        h.iter()
                            .map(|(v, x)| {
                                let d = if [Var::Xp, Var::Yp, Var::Zp].contains(v) { &pl } else { &ln };
                                (*v, x / d)
                            })
                            .collect()
                    };
                    hom = scale(&hom, *a);
                    let in_b = scale(&hom, *b);
                    let lam = get(&hom, b.plane);
                    let mu = get(&hom, b.line);
                    let t_b = &t * &lam * &lam * &mu * &mu;
                    let defect = |h: &[(Var, Rat)], tt: &Rat| {
                        let s = section.eval(h).unwrap();
                        &y * &y - &self.a * &z * &z - tt * tt * s
                    };
                    let ea = curve.eval(&hom).unwrap();
                    let eb = curve.eval(&in_b).unwrap();
                    if defect(&hom, &t) != defect(&in_b, &t_b) || eb * &lam * &lam * &lam != ea {
                        consistent = false;
                    }
                }
            }
        }
        TransitionReport { pairs, samples_per_pair: samples, consistent }
    }
}

pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>, FibrationError> {
    s.split([',', ':'])
        .map(|p| crate::arith::parse_rat(p).ok_or_else(|| FibrationError::BadCoordinates(s.to_string())))
        .collect()
}

/// Digits of the largest coefficient, for order-of-magnitude comparisons.
pub fn coefficient_census(f: &BinaryForm) -> usize {
    decimal_digits(&f.max_abs_coefficient())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;

    fn example_section() -> MultiPoly {
        let (p, q) = example_quartics();
        build_section(&p, &q).unwrap()
    }

    #[test]
    fn section_matches_displayed_form() {
        let s = example_section();
        let expected = poly("137*u^2*x^4 + 1370*u^2*x^2*w^2 - 21235*u^2*w^4 - 137*v^2*x^4 + 21235*v^2*w^4");
        assert_eq!(s, expected);
        let (p, _) = example_quartics();
        assert_eq!(build_section(&p, &p), Err(FibrationError::NotCoprime));
        let sq = UPoly::from_ints(&[1, 0, 2, 0, 1]);
        assert!(matches!(build_section(&sq, &p), Err(FibrationError::NotSeparable(_))));
        assert!(matches!(build_section(&UPoly::from_ints(&[1, 1]), &p), Err(FibrationError::NotQuartic(_))));
    }

    #[test]
    fn smoothness() {
        assert!(degenerate_locus_smooth(&example_section()).unwrap().smooth);
        let sing = poly("u*x^2 - v*w*x").pow(2);
        assert!(!degenerate_locus_smooth(&sing).unwrap().smooth);
        // chart u = w = 1: x^4 + v^2 with origin a common zero of all partials
        assert!(!degenerate_locus_smooth(&poly("u^2*x^4 + v^2*w^4")).unwrap().smooth);
        assert!(degenerate_locus_smooth(&poly("u*x")).is_err());
    }

    #[test]
    fn branch_points() {
        let b = branch_locus(&example_section()).unwrap();
        assert_eq!(b.root_count, 6);
        assert!(!b.infinity_is_root);
        assert_eq!(b.rational_roots, vec!["-1".to_string(), "1".to_string()]);
        assert_eq!(b.irrational_part, vec![int(31), int(0), int(-62), int(0), int(36)]);
        assert!(matches!(b.irrational_part_irreducibility, Irreducibility::Irreducible { .. }));
        assert!(b.matches_radicals(&rat(31), &rat(-155), &rat(6)));
        assert!(!b.matches_radicals(&rat(31), &rat(155), &rat(6)));
        assert!(b.squarefree_discriminant_nonzero);
    }

    #[test]
    fn curve_points_and_indeterminacy() {
        let r = verify_e_points();
        assert!(r.all_hold, "{r:?}");
        let d = indeterminacy_disjoint().unwrap();
        assert!(d.disjoint);
        assert_eq!(d.points.len(), 3);
    }

    #[test]
    fn etale_example_and_perturbation() {
        let s = example_section();
        let cert = etale_over_branch(&PlaneMap::standard(), &s).unwrap();
        assert!(cert.coprime);
        assert!(cert.etale, "{cert:?}");
        assert_eq!(cert.rational_fibres.len(), 2);
        assert!(verify_etale_certificate(&cert).unwrap());
        let g12: MultiPoly = cert.g12.parse().unwrap();
        assert_eq!(g12.homogeneous_degree(&[Var::U, Var::V]), Some(12));

        let bad = PlaneMap::new(poly("x' - z'"), poly("z'")).unwrap();
        let cert = etale_over_branch(&bad, &s).unwrap();
        assert!(!cert.coprime);
        assert!(!cert.etale);
    }

    #[test]
    fn rational_point_on_x() {
        let model = ThreefoldModel::example().unwrap();
        let chart = ChartId::parse("z',w").unwrap();
        let good = model.verify_point(chart, &parse_rat_list("0,0,1,48,36,1").unwrap()).unwrap();
        assert!(good.holds);
        assert_eq!(good.conic_lhs, "-19728");
        assert_eq!(good.conic_rhs, "-19728");
        let scaled = model.verify_point(chart, &parse_rat_list("0,0,1,48,36,2").unwrap()).unwrap();
        assert!(!scaled.holds);
        let off = model.verify_point(chart, &parse_rat_list("1,0,1,48,36,1").unwrap()).unwrap();
        assert!(!off.on_curve);
        assert!(ChartId::parse("y,w").is_err());
        assert!(model.verify_point(chart, &[rat(0)]).is_err());
    }

    #[test]
    fn chart_equations_and_transitions() {
        let model = ThreefoldModel::example().unwrap();
        let (conic, curve) = model.chart_equations(ChartId::parse("z',w").unwrap());
        let s = poly("1 + 2*y'^2 + y'^4");
        let bracket = &(&s * &poly("x^4 + 10*x^2 - 155")) - &(&poly("x'^2*y'^2") * &poly("x^4 - 155"));
        let rhs = &(&poly("137*t^2") * &bracket) - &poly("y^2 - 17*z^2");
        assert!((&conic + &rhs).is_zero());
        assert_eq!(curve, poly("y'^2 - x'^3 + 4*x'"));
        let rep = model.transition_check(3, 7);
        assert_eq!(rep.pairs, 30);
        assert!(rep.consistent);
    }
}
