//! Sparse multivariate polynomials over Q in a fixed set of named variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::PolyError;
use crate::arith::{parse_rat, rat_to_string, Int, Rat};

pub const NVARS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U,
    V,
    W,
    X,
    Xp,
    Yp,
    Zp,
    Y,
    Z,
    T,
}

impl Var {
    pub const ALL: [Var; NVARS] =
        [Var::U, Var::V, Var::W, Var::X, Var::Xp, Var::Yp, Var::Zp, Var::Y, Var::Z, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::W => "w",
            Var::X => "x",
            Var::Xp => "x'",
            Var::Yp => "y'",
            Var::Zp => "z'",
            Var::Y => "y",
            Var::Z => "z",
            Var::T => "t",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector, ordered graded-lex with u > v > w > ... > t.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }

    /// self / other if other divides self.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        Some(Monomial(m))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(m)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        MultiPoly::monomial(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(Rat::from_integer(Int::from(n)))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(Rat::one(), Monomial::var(v, 1))
    }

    pub fn monomial(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u16> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Degree in the given variable group if every term has the same one.
    pub fn homogeneous_degree(&self, group: &[Var]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| group.iter().map(|&v| m.exp(v) as u32).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn multidegree(&self, groups: &[&[Var]]) -> Option<Vec<u32>> {
        groups.iter().map(|g| self.homogeneous_degree(g)).collect()
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, c: &Rat, mono: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect() }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::int(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut n = m.clone();
                n.0[v.index()] -= 1;
                out.add_term(n, c * Rat::from_integer(Int::from(e)));
            }
        }
        out
    }

    /// Replaces v by the polynomial p.
    pub fn substitute(&self, v: Var, p: &MultiPoly) -> MultiPoly {
        let top = self.degree_in(v).unwrap_or(0);
        let mut powers = vec![MultiPoly::int(1)];
        for i in 1..=top as usize {
            let next = &powers[i - 1] * p;
            powers.push(next);
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut rest = m.clone();
            rest.0[v.index()] = 0;
            out = &out + &powers[e].mul_term(c, &rest);
        }
        out
    }

    pub fn substitute_rat(&self, v: Var, r: &Rat) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(r.clone()))
    }

    pub fn substitute_all(&self, subs: &[(Var, MultiPoly)]) -> MultiPoly {
        subs.iter().fold(self.clone(), |p, (v, q)| p.substitute(*v, q))
    }

    /// Full evaluation; errors if a used variable is unassigned.
    pub fn eval(&self, point: &[(Var, Rat)]) -> Result<Rat, PolyError> {
        let mut r = self.clone();
        for (v, val) in point {
            r = r.substitute_rat(*v, val);
        }
        r.constant_value().ok_or_else(|| PolyError::Unassigned(r.to_string()))
    }

    /// Evaluates with values in any commutative ring containing Q.
    pub fn eval_in<T>(&self, point: &[(Var, T)], embed: impl Fn(&Rat) -> T) -> Result<T, PolyError>
    where
        T: Clone,
        for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
    {
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut term = embed(c);
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let val = point
                    .iter()
                    .find(|(w, _)| *w == v)
                    .map(|(_, x)| x)
                    .ok_or_else(|| PolyError::Unassigned(v.to_string()))?;
                for _ in 0..e {
                    term = &term * val;
                }
            }
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        Ok(acc.unwrap_or_else(|| embed(&Rat::zero())))
    }

    /// Coefficients as a polynomial in v: result[i] multiplies v^i.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let top = match self.degree_in(v) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![MultiPoly::zero(); top + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut rest = m.clone();
            rest.0[v.index()] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            out = &out + &c.mul_term(&Rat::one(), &Monomial::var(v, i as u16));
        }
        out
    }

    /// Exact division; None if other does not divide self.
    pub fn div_exact(&self, other: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = other.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let mono = m.div(&lm)?;
            let coef = c / &lc;
            rem = &rem - &other.mul_term(&coef, &mono);
            q.add_term(mono, coef);
        }
        Some(q)
    }

    /// Clears denominators and removes the integer content; leading coefficient positive.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let den = crate::arith::common_denominator(self.terms.values());
        let nums: Vec<Int> = self.terms.values().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut g = Int::zero();
        for n in &nums {
            g = num_integer::Integer::gcd(&g, n);
        }
        let sign = if self.leading().unwrap().1.is_negative() { -Int::one() } else { Int::one() };
        let factor = Rat::new(den * sign, g);
        self.scale(&factor)
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => MultiPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_abs_coefficient(&self) -> Rat {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rat::zero)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order, e.g. "137*u^2*x^4 - 155*v^2".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut factors = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(rat_to_string(&a));
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let err = |msg: &str| PolyError::Parse(format!("{msg} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut out = MultiPoly::zero();
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-Rat::one(), &piece[1..]),
                Some(b'+') => (Rat::one(), &piece[1..]),
                _ => (Rat::one(), piece),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coef = sign;
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u16>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                if let Some(v) = Var::from_name(base) {
                    mono = mono.mul(&Monomial::var(v, exp));
                } else if let Some(r) = parse_rat(base) {
                    coef *= num_traits::pow(r, exp as usize);
                } else {
                    return Err(err(&format!("unknown factor {factor:?}")));
                }
            }
            out.add_term(mono, coef);
        }
        Ok(out)
    }
}

pub fn poly(s: &str) -> MultiPoly {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}
