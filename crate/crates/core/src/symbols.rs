//! Hilbert symbols: odd places of K via the residue criterion, all places of
//! Q via closed forms, and the reciprocity biconditional for principal primes.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{int, int_valuation, is_prime, legendre, Int, Rat};
use crate::nf::{
    is_principal_prime, is_square_mod, FieldElement, NfError, PrincipalPrime, ResidueRing,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error(transparent)]
    Nf(#[from] NfError),
    #[error("Hilbert symbol arguments must be nonzero")]
    ZeroArgument,
    #[error("the place {0} has residue characteristic 2")]
    EvenPlace(String),
    #[error("{which} = {element} does not generate an odd principal prime: {detail}")]
    NotOddPrime { which: &'static str, element: String, detail: String },
    #[error("s and t generate the same prime ideal")]
    SamePrime,
    #[error("neither s nor t is 1 mod 8")]
    NoCongruenceModEight,
    #[error("s and t are both negative at {0}")]
    BothNegative(String),
    #[error("{0} is not a rational prime")]
    NotRationalPrime(String),
}

/// (s, t)_v at an odd principal prime v. Arguments are first reduced modulo
/// squares to valuations in {0, 1}; when both are 1, t is replaced by -st.
pub fn hilbert_odd(s: &FieldElement, t: &FieldElement, v: &PrincipalPrime) -> Result<i8, SymbolError> {
    if s.is_zero() || t.is_zero() {
        return Err(SymbolError::ZeroArgument);
    }
    if !v.is_odd() {
        return Err(SymbolError::EvenPlace(v.to_string()));
    }
    let (s, vs) = strip_even_part(s, v)?;
    let (t, vt) = strip_even_part(t, v)?;
    let (unit, odd) = match (vs, vt) {
        (0, 0) => return Ok(1),
        (0, 1) => (s, t),
        (1, 0) => (t, s),
        _ => {
            // (s, t) = (s, -st) and -st has even valuation
            let (u, _) = strip_even_part(&-&(&s * &t), v)?;
            (u, s)
        }
    };
    debug_assert_eq!(v.valuation(&odd)?, 1);
    Ok(if is_square_mod(&unit, v)? { 1 } else { -1 })
}

/// Divides out the largest even power of the generator; returns the
/// remaining valuation (0 or 1).
fn strip_even_part(s: &FieldElement, v: &PrincipalPrime) -> Result<(FieldElement, i64), SymbolError> {
    let val = v.valuation(s)?;
    let half = Integer::div_floor(&val, &2);
    let pi2 = v.generator().pow(2);
    let mut out = s.clone();
    if half > 0 {
        out = out.div(&pi2.pow(half as u32)).expect("nonzero");
    } else if half < 0 {
        out = &out * &pi2.pow((-half) as u32);
    }
    Ok((out, val - 2 * half))
}

/// A place of Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RationalPlace {
    Infinity,
    Prime(Int),
}

impl RationalPlace {
    pub fn prime(p: Int) -> Result<Self, SymbolError> {
        if p.is_positive() && is_prime(&p) {
            Ok(RationalPlace::Prime(p))
        } else {
            Err(SymbolError::NotRationalPrime(p.to_string()))
        }
    }

    pub fn parse(s: &str) -> Result<Self, SymbolError> {
        match s {
            "inf" | "oo" | "infinity" | "real" => Ok(RationalPlace::Infinity),
            _ => {
                let p: Int = s.parse().map_err(|_| SymbolError::NotRationalPrime(s.to_string()))?;
                RationalPlace::prime(p)
            }
        }
    }
}

impl fmt::Display for RationalPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalPlace::Infinity => write!(f, "inf"),
            RationalPlace::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// An integer in the square class of r.
fn square_class_rep(r: &Rat) -> Int {
    r.numer() * r.denom()
}

fn mod8(n: &Int) -> i64 {
    n.mod_floor(&int(8)).to_i64().unwrap()
}

/// (s, t)_v over Q for nonzero rationals. Panics on zero arguments.
pub fn hilbert_rational(s: &Rat, t: &Rat, v: &RationalPlace) -> i8 {
    assert!(!s.is_zero() && !t.is_zero(), "Hilbert symbol of zero");
    let (s, t) = (square_class_rep(s), square_class_rep(t));
    let p = match v {
        RationalPlace::Infinity => {
            return if s.is_negative() && t.is_negative() { -1 } else { 1 };
        }
        RationalPlace::Prime(p) => p,
    };
    let alpha = int_valuation(&s, p) as i64;
    let beta = int_valuation(&t, p) as i64;
    let u = &s / p.pow(alpha as u32);
    let w = &t / p.pow(beta as u32);
    let sign = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    if *p == int(2) {
        let eps = |x: &Int| (mod8(x) - 1) / 2 % 2;
        let omega = |x: &Int| {
            let r = mod8(x);
            (r * r - 1) / 8 % 2
        };
        sign(eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u))
    } else {
        let eps_p = ((p - 1u32) / 2u32).mod_floor(&int(2)).to_i64().unwrap();
        let mut r = sign(alpha * beta * eps_p);
        if beta % 2 == 1 {
            r *= legendre(&u, p) as i8;
        }
        if alpha % 2 == 1 {
            r *= legendre(&w, p) as i8;
        }
        r
    }
}

/// Both sides of the biconditional "s is a square mod p_t iff t is a square mod p_s".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reciprocity {
    pub s_square_mod_t: bool,
    pub t_square_mod_s: bool,
}

impl Reciprocity {
    pub fn holds(&self) -> bool {
        self.s_square_mod_t == self.t_square_mod_s
    }
}

fn odd_prime(which: &'static str, x: &FieldElement) -> Result<PrincipalPrime, SymbolError> {
    let err = |detail: String| SymbolError::NotOddPrime { which, element: x.to_string(), detail };
    let p = is_principal_prime(x).map_err(|e| err(e.to_string()))?;
    if !p.is_odd() {
        return Err(err("residue characteristic 2".into()));
    }
    Ok(p)
}

/// Checks the preconditions and evaluates both sides of the reciprocity
/// biconditional. Panics if the two sides disagree.
pub fn reciprocity_check(s: &FieldElement, t: &FieldElement) -> Result<Reciprocity, SymbolError> {
    let ps = odd_prime("s", s)?;
    let pt = odd_prime("t", t)?;
    if ps.same_ideal(&pt) {
        return Err(SymbolError::SamePrime);
    }
    let k = s.field();
    let eight = ResidueRing::new(&FieldElement::from_i64(k, 8))?;
    let one = FieldElement::one(k);
    if !eight.congruent(s, &one) && !eight.congruent(t, &one) {
        return Err(SymbolError::NoCongruenceModEight);
    }
    for place in k.real_places() {
        if s.sign_at(place) != Ordering::Greater && t.sign_at(place) != Ordering::Greater {
            return Err(SymbolError::BothNegative(place.to_string()));
        }
    }
    let r = Reciprocity { s_square_mod_t: is_square_mod(s, &pt)?, t_square_mod_s: is_square_mod(t, &ps)? };
    assert!(r.holds(), "reciprocity violated for s = {s}, t = {t}: internal inconsistency");
    Ok(r)
}
