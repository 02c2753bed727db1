//! Dense univariate polynomials over Q, with integer-coefficient helpers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::multi::{Monomial, MultiPoly, Var};
use super::PolyError;
use crate::arith::{common_denominator, factor, is_prime, rat_to_string, Int, Rat};

/// coeffs[i] multiplies X^i; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| Rat::from_integer(Int::from(c))).collect())
    }

    pub fn from_int_vec(coeffs: &[Int]) -> Self {
        UPoly::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        UPoly::new(vec![c])
    }

    pub fn x() -> Self {
        UPoly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::constant(Rat::one()), |acc, _| &acc * self)
    }

    /// p(X) -> p(q(X)).
    pub fn compose(&self, q: &UPoly) -> UPoly {
        self.coeffs.iter().rev().fold(UPoly::zero(), |acc, c| &(&acc * q) + &UPoly::constant(c.clone()))
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (UPoly::new(q), UPoly::new(rem))
    }

    /// Monic gcd by the Euclidean algorithm over Q; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let one = UPoly::constant(Rat::one());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// self / gcd(self, self'), monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_int(&self) -> Vec<Int> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = common_denominator(self.coeffs.iter());
        let nums: Vec<Int> = self.coeffs.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut g = nums.iter().fold(Int::zero(), |g, n| g.gcd(n));
        if nums.last().unwrap().is_negative() {
            g = -g;
        }
        nums.into_iter().map(|n| n / &g).collect()
    }

    pub fn primitive(&self) -> UPoly {
        UPoly::from_int_vec(&self.primitive_int())
    }

    /// Distinct rational roots, ascending. Trial-divides the extreme
    /// coefficients, so meant for moderately sized inputs.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut roots = Vec::new();
        if self.is_constant() {
            return roots;
        }
        let mut f = self.primitive_int();
        if f[0].is_zero() {
            roots.push(Rat::zero());
            let k = f.iter().position(|c| !c.is_zero()).unwrap();
            f.drain(..k);
        }
        if f.len() > 1 {
            let num_divs = divisors(&f[0]);
            let den_divs = divisors(f.last().unwrap());
            let poly = UPoly::from_int_vec(&f);
            for p in &num_divs {
                for q in &den_divs {
                    for s in [Int::one(), -Int::one()] {
                        let r = Rat::new(p * &s, q.clone());
                        if poly.eval(&r).is_zero() && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// As a MultiPoly in the variable v.
    pub fn to_multi(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            out = &out + &MultiPoly::monomial(c.clone(), Monomial::var(v, i as u16));
        }
        out
    }

    pub fn from_multi(p: &MultiPoly, v: Var) -> Result<UPoly, PolyError> {
        let cs = p.coefficients_in(v);
        let coeffs = cs
            .iter()
            .map(|c| c.constant_value().ok_or_else(|| PolyError::NotUnivariate(p.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UPoly::new(coeffs))
    }

    pub fn max_abs_coefficient(&self) -> Rat {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Rat::zero)
    }
}

fn divisors(n: &Int) -> Vec<Int> {
    let mut divs = vec![Int::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = Int::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => f.write_str(&rat_to_string(&a))?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "{}*X", rat_to_string(&a))?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{}*X^{i}", rat_to_string(&a))?,
            }
        }
        Ok(())
    }
}

// ---- integer coefficients ----

fn trim(mut v: Vec<Int>) -> Vec<Int> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b.
fn prem(a: &[Int], b: &[Int]) -> Vec<Int> {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r = a.to_vec();
    if r.len() <= db {
        return r;
    }
    let steps = r.len() - db;
    for _ in 0..steps {
        if r.len() <= db {
            for c in r.iter_mut() {
                *c *= &lc;
            }
            continue;
        }
        let k = r.len() - 1;
        let lead = r[k].clone();
        for c in r.iter_mut() {
            *c *= &lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k - db + j] -= &lead * bc;
        }
        r = trim(r);
    }
    r
}

/// gcd over Z[X] via the subresultant remainder sequence; positive leading coefficient.
pub fn subresultant_gcd(a: &[Int], b: &[Int]) -> Vec<Int> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    if a.is_empty() {
        return normalize_sign(b);
    }
    if b.is_empty() {
        return normalize_sign(a);
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let ca = content(&a);
    let cb = content(&b);
    let d = ca.gcd(&cb);
    a = a.iter().map(|c| c / &ca).collect();
    b = b.iter().map(|c| c / &cb).collect();
    let mut g = Int::one();
    let mut h = Int::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            let cb = content(&b);
            return normalize_sign(b.iter().map(|c| c / &cb * &d).collect());
        }
        if r.len() == 1 {
            return vec![d];
        }
        a = b;
        let div = &g * h.pow(delta);
        b = r.iter().map(|c| c / &div).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta) / h.pow(delta - 1)
        };
    }
}

fn normalize_sign(v: Vec<Int>) -> Vec<Int> {
    if v.last().is_some_and(Signed::is_negative) {
        v.into_iter().map(|c| -c).collect()
    } else {
        v
    }
}

// ---- irreducibility ----

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Irreducible modulo this prime, which does not divide the leading coefficient.
    Irreducible { modulo: u64 },
    /// Has a rational root.
    HasRationalRoot,
    Undecided,
}

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u128;
    let mut b = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    r as u64
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = (r[k] as u128 * inv as u128 % p as u128) as u64;
        for (j, mc) in m.iter().enumerate() {
            let sub = (c as u128 * *mc as u128 % p as u128) as u64;
            r[k - dm + j] = (r[k - dm + j] + p - sub) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + *x as u128 * *y as u128) % p as u128) as u64;
        }
    }
    fp_rem(&fp_trim(out), m, p)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test for a polynomial over F_p with nonzero leading coefficient.
fn fp_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    let x = fp_rem(&[0, 1], f, p);
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if fp_gcd(f, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

/// Irreducibility over Q by a rational-root check (degree <= 3) or a search
/// for a prime modulo which the polynomial stays irreducible.
pub fn irreducibility(f: &UPoly, prime_bound: u64) -> Irreducibility {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Irreducibility::Undecided,
    };
    if !f.rational_roots().is_empty() {
        return if deg == 1 { Irreducibility::Irreducible { modulo: 0 } } else { Irreducibility::HasRationalRoot };
    }
    let z = f.primitive_int();
    for p in 2..prime_bound {
        if !is_prime(&Int::from(p)) {
            continue;
        }
        let pi = Int::from(p);
        let red: Vec<u64> = z.iter().map(|c| c.mod_floor(&pi).to_u64().unwrap()).collect();
        if red[deg] == 0 {
            continue;
        }
        if fp_irreducible(&red, p) {
            return Irreducibility::Irreducible { modulo: p };
        }
    }
    if deg <= 3 {
        // no rational root means no linear factor
        return Irreducibility::Irreducible { modulo: 0 };
    }
    Irreducibility::Undecided
}
