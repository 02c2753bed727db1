//! Search for principal primes in prescribed congruence classes by ordered
//! enumeration of a shifted lattice and primality certification.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Int, Rat};
use crate::lattice::{express, Lattice};
use crate::nf::{
    is_principal_prime, sign_of_surd, totally_positive_and_large, FieldElement, NfError,
    PrincipalPrime, QuadraticField, ResidueRing,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Nf(#[from] NfError),
    #[error("{target} is not a unit modulo {modulus}")]
    NonUnitResidue { modulus: String, target: String },
    #[error("the congruence modulo {modulus} is incompatible with the earlier ones")]
    Incompatible { modulus: String },
    #[error("no admissible element within search radius {radius}; enlarge the radius")]
    Exhausted { radius: u64 },
    #[error("elements of different fields in one system")]
    FieldMismatch,
}

/// x = target mod modulus * O_K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub modulus: FieldElement,
    pub target: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    pub field: QuadraticField,
    pub congruences: Vec<Congruence>,
    /// Candidates must exceed this at every real place.
    pub positivity_bound: Option<Rat>,
    /// Coefficients over the combined lattice range over [-radius, radius].
    pub radius: u64,
}

impl CongruenceSystem {
    pub fn new(field: QuadraticField, radius: u64) -> Self {
        CongruenceSystem { field, congruences: Vec::new(), positivity_bound: None, radius }
    }

    pub fn with(mut self, modulus: FieldElement, target: FieldElement) -> Self {
        self.congruences.push(Congruence { modulus, target });
        self
    }

    pub fn positive_above(mut self, bound: Rat) -> Self {
        self.positivity_bound = Some(bound);
        self
    }
}

/// x0 together with the lattice of the combined modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combined {
    pub representative: FieldElement,
    pub lattice: Lattice,
}

impl Combined {
    pub fn contains_shift(&self, x: &FieldElement) -> bool {
        let d = x - &self.representative;
        d.integral_coords().is_some_and(|c| self.lattice.contains(&c))
    }
}

/// Chinese remaindering over O_K. Moduli need not be coprime; a system is
/// accepted whenever it is solvable, and the result is unique modulo the
/// intersection of the moduli.
pub fn crt_combine(sys: &CongruenceSystem) -> Result<Combined, SearchError> {
    let k = sys.field;
    let dim = k.degree();
    let mut lattice = Lattice::from_generators(&identity(dim), dim).expect("full rank");
    let mut x0: Vec<Int> = vec![Int::zero(); dim];
    for c in &sys.congruences {
        if c.modulus.field() != k || c.target.field() != k {
            return Err(SearchError::FieldMismatch);
        }
        let ring = ResidueRing::new(&c.modulus)?;
        let non_unit = || SearchError::NonUnitResidue {
            modulus: c.modulus.to_string(),
            target: c.target.to_string(),
        };
        if !c.target.is_integral() || !ring.is_unit(&c.target) {
            return Err(non_unit());
        }
        let m_lat = ring.lattice();
        let target = c.target.integral_coords().expect("integral");
        let diff: Vec<Int> = target.iter().zip(&x0).map(|(a, b)| a - b).collect();
        let gens: Vec<Vec<Int>> = lattice.basis().iter().chain(m_lat.basis()).cloned().collect();
        let coeffs = express(&gens, dim, &diff)
            .ok_or_else(|| SearchError::Incompatible { modulus: c.modulus.to_string() })?;
        for (j, row) in lattice.basis().iter().enumerate() {
            for i in 0..dim {
                x0[i] += &coeffs[j] * &row[i];
            }
        }
        lattice = lattice.intersection(m_lat);
        x0 = lattice.reduce(&x0);
    }
    Ok(Combined { representative: FieldElement::from_coords(k, &x0), lattice })
}

fn identity(dim: usize) -> Vec<Vec<Int>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| Int::from((i == j) as u8)).collect())
        .collect()
}

/// Sort key: the largest absolute value over the archimedean embeddings.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SizeKey {
    k: QuadraticField,
    /// Over Q: |x|. Real K: |A| + |B| sqrt(d) with alpha = A + B sqrt(d).
    /// Imaginary K: the norm (the squared absolute value).
    a: Rat,
    b: Rat,
}

impl SizeKey {
    fn of(alpha: &FieldElement) -> Self {
        let k = alpha.field();
        let zero = Rat::zero();
        if k.is_rational() {
            SizeKey { k, a: alpha.x().abs(), b: zero }
        } else if k.is_imaginary() {
            SizeKey { k, a: alpha.norm(), b: zero }
        } else {
            let (a, b) = alpha.sqrt_form();
            SizeKey { k, a: a.abs(), b: b.abs() }
        }
    }
}

impl Ord for SizeKey {
    fn cmp(&self, o: &Self) -> Ordering {
        if self.b.is_zero() && o.b.is_zero() {
            return self.a.cmp(&o.a);
        }
        sign_of_surd(&(&self.a - &o.a), &(&self.b - &o.b), &Int::from(self.k.delta0()))
    }
}

impl PartialOrd for SizeKey {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Every element of x0 + lattice with coefficients in the radius box, in
/// search order: increasing size key, then lexicographic coordinates.
pub fn ordered_candidates(combined: &Combined, radius: u64) -> Vec<FieldElement> {
    let k = combined.representative.field();
    let dim = k.degree();
    let r = radius as i64;
    let base = combined.representative.integral_coords().expect("integral");
    let basis = combined.lattice.basis();
    let mut out: Vec<(SizeKey, Vec<Int>, FieldElement)> = Vec::new();
    let range: Vec<i64> = (-r..=r).collect();
    let mut push = |coeffs: &[i64]| {
        let mut v = base.clone();
        for (c, row) in coeffs.iter().zip(basis) {
            for i in 0..dim {
                v[i] += Int::from(*c) * &row[i];
            }
        }
        let e = FieldElement::from_coords(k, &v);
        out.push((SizeKey::of(&e), v, e));
    };
    if dim == 1 {
        for &a in &range {
            push(&[a]);
        }
    } else {
        for &a in &range {
            for &b in &range {
                push(&[a, b]);
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    out.dedup_by(|x, y| x.1 == y.1);
    out.into_iter().map(|t| t.2).collect()
}

/// Record of why a search result is admissible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCertificate {
    pub element: String,
    pub norm: String,
    pub residue_char: String,
    pub residue_degree: u8,
    pub congruences: Vec<CongruenceCheck>,
    pub positivity_bound: Option<String>,
    pub positive: bool,
    /// Position in the search order.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCheck {
    pub modulus: String,
    pub target: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub prime: PrincipalPrime,
    pub certificate: PrimeCertificate,
}

/// Re-checks congruences and positivity of an element against a system.
pub fn certify_candidate(
    sys: &CongruenceSystem,
    prime: &PrincipalPrime,
    rank: usize,
) -> Result<PrimeCertificate, SearchError> {
    let p = prime.generator();
    let mut checks = Vec::new();
    for c in &sys.congruences {
        let ring = ResidueRing::new(&c.modulus)?;
        checks.push(CongruenceCheck {
            modulus: c.modulus.to_string(),
            target: c.target.to_string(),
            holds: ring.congruent(p, &c.target),
        });
    }
    let positive = sys
        .positivity_bound
        .as_ref()
        .is_none_or(|b| totally_positive_and_large(p, b));
    Ok(PrimeCertificate {
        element: p.to_string(),
        norm: crate::arith::rat_to_string(&p.norm()),
        residue_char: prime.residue_char().to_string(),
        residue_degree: prime.residue_degree(),
        congruences: checks,
        positivity_bound: sys.positivity_bound.as_ref().map(crate::arith::rat_to_string),
        positive,
        rank,
    })
}

fn admissible<F>(sys: &CongruenceSystem, e: &FieldElement, filter: &F) -> Option<PrincipalPrime>
where
    F: Fn(&PrincipalPrime) -> bool + Sync,
{
    if let Some(b) = &sys.positivity_bound {
        if !totally_positive_and_large(e, b) {
            return None;
        }
    }
    let p = is_principal_prime(e).ok()?;
    filter(&p).then_some(p)
}

/// The first admissible principal prime in search order. `filter` is
/// evaluated after primality.
pub fn find_principal_prime<F>(sys: &CongruenceSystem, filter: F) -> Result<SearchResult, SearchError>
where
    F: Fn(&PrincipalPrime) -> bool + Sync,
{
    let combined = crt_combine(sys)?;
    let cands = ordered_candidates(&combined, sys.radius);
    let found = cands
        .par_iter()
        .enumerate()
        .find_map_first(|(i, e)| admissible(sys, e, &filter).map(|p| (i, p)));
    let (rank, prime) = found.ok_or(SearchError::Exhausted { radius: sys.radius })?;
    let certificate = certify_candidate(sys, &prime, rank)?;
    debug_assert!(certificate.positive && certificate.congruences.iter().all(|c| c.holds));
    Ok(SearchResult { prime, certificate })
}

/// All admissible principal primes in search order, up to `limit` of them.
pub fn find_principal_primes<F>(
    sys: &CongruenceSystem,
    filter: F,
    limit: usize,
) -> Result<Vec<PrincipalPrime>, SearchError>
where
    F: Fn(&PrincipalPrime) -> bool + Sync,
{
    let combined = crt_combine(sys)?;
    let cands = ordered_candidates(&combined, sys.radius);
    let hits: Vec<Option<PrincipalPrime>> =
        cands.par_iter().map(|e| admissible(sys, e, &filter)).collect();
    Ok(hits.into_iter().flatten().take(limit).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::nf::is_square_mod;

    fn q() -> QuadraticField {
        QuadraticField::rational()
    }

    fn el(n: i64) -> FieldElement {
        FieldElement::from_i64(q(), n)
    }

    #[test]
    fn crt_examples() {
        let s = CongruenceSystem::new(q(), 10).with(el(8), el(1)).with(el(34), el(1));
        let c = crt_combine(&s).unwrap();
        assert_eq!(c.representative, el(1));
        assert_eq!(c.lattice.index(), int(136));

        let s = CongruenceSystem::new(q(), 10).with(el(8), el(1)).with(el(5), el(3));
        let c = crt_combine(&s).unwrap();
        let brute: Vec<i64> = (0..40).filter(|x| x % 8 == 1 && x % 5 == 3).collect();
        assert_eq!(brute, vec![33]);
        assert_eq!(c.representative, el(33));
        assert_eq!(c.lattice.index(), int(40));

        let s = CongruenceSystem::new(q(), 10).with(el(7), el(10));
        assert_eq!(crt_combine(&s).unwrap().representative, el(3));

        let s = CongruenceSystem::new(q(), 10).with(el(8), el(1)).with(el(6), el(3));
        assert!(matches!(crt_combine(&s), Err(SearchError::NonUnitResidue { .. })));
        let s = CongruenceSystem::new(q(), 10).with(el(8), el(1)).with(el(4), el(3));
        assert!(matches!(crt_combine(&s), Err(SearchError::Incompatible { .. })));
    }

    #[test]
    fn crt_in_gaussian_integers() {
        let k = QuadraticField::new(-1).unwrap();
        let s = CongruenceSystem::new(k, 5)
            .with(FieldElement::from_i64(k, 2), FieldElement::one(k))
            .with(k.element("2+w"), k.element("w"));
        let c = crt_combine(&s).unwrap();
        let x = &c.representative;
        assert!(ResidueRing::new(&FieldElement::from_i64(k, 2)).unwrap().congruent(x, &FieldElement::one(k)));
        assert!(ResidueRing::new(&k.element("2+w")).unwrap().congruent(x, &k.element("w")));
        assert_eq!(c.lattice.index(), int(20));
    }

    #[test]
    fn paper_style_primes_in_stream() {
        let a_sys = CongruenceSystem::new(q(), 50).with(el(8), el(1)).positive_above(rat(0));
        let a = find_principal_prime(&a_sys, |_| true).unwrap();
        assert_eq!(a.prime.generator(), &el(17));
        assert_eq!(a.certificate.rank, 4);

        let b_sys = CongruenceSystem::new(q(), 50).with(el(34), el(1)).positive_above(rat(0));
        let bs = find_principal_primes(&b_sys, |p| p.generator() != &el(17), 10).unwrap();
        assert!(bs.iter().any(|p| p.generator() == &el(137)));

        let p17 = is_principal_prime(&el(17)).unwrap();
        let c_sys = CongruenceSystem::new(q(), 50).with(el(2), el(1));
        let cs = find_principal_primes(&c_sys, |p| !is_square_mod(p.generator(), &p17).unwrap_or(true), 20).unwrap();
        assert!(cs.iter().any(|p| p.generator().x().abs() == rat(5)));
    }

    #[test]
    fn exhaustion_is_soft() {
        let s = CongruenceSystem::new(q(), 1).with(el(8), el(1)).positive_above(rat(100));
        assert_eq!(find_principal_prime(&s, |_| true), Err(SearchError::Exhausted { radius: 1 }));
    }

    #[test]
    fn real_quadratic_order_is_by_max_embedding() {
        let k = QuadraticField::new(3).unwrap();
        let s = CongruenceSystem::new(k, 2);
        let c = crt_combine(&s).unwrap();
        let cands = ordered_candidates(&c, 2);
        let sizes: Vec<SizeKey> = cands.iter().map(SizeKey::of).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(cands[0], FieldElement::zero(k));
        assert_eq!(cands.len(), 25);
    }
}
