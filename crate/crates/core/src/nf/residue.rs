//! Finite residue fields F_q and F_{q^2} with word-sized arithmetic.

use std::fmt;

/// F_q (degree 1) or F_q[theta]/(theta^2 - t*theta + n) (degree 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueField {
    q: u64,
    degree: u8,
    t: u64,
    n: u64,
}

/// a + b*theta; `b` is always 0 in degree 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq {
    pub a: u64,
    pub b: u64,
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

impl ResidueField {
    /// Callers guarantee q is prime below 2^32 and, in degree 2, that the
    /// quadratic is irreducible mod q.
    pub(crate) fn new(q: u64, degree: u8, t: u64, n: u64) -> Self {
        debug_assert!(degree == 1 || degree == 2);
        ResidueField { q, degree, t: t % q, n: n % q }
    }

    pub fn characteristic(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.q.pow(self.degree as u32)
    }

    pub fn zero(&self) -> Fq {
        Fq { a: 0, b: 0 }
    }

    pub fn one(&self) -> Fq {
        Fq { a: 1 % self.q, b: 0 }
    }

    pub fn from_u64(&self, a: u64) -> Fq {
        Fq { a: a % self.q, b: 0 }
    }

    pub fn elem(&self, a: u64, b: u64) -> Fq {
        Fq { a: a % self.q, b: if self.degree == 2 { b % self.q } else { 0 } }
    }

    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        let q = self.q;
        Fq { a: (x.a + y.a) % q, b: (x.b + y.b) % q }
    }

    pub fn neg(&self, x: Fq) -> Fq {
        let q = self.q;
        Fq { a: (q - x.a) % q, b: (q - x.b) % q }
    }

    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        let q = self.q;
        if self.degree == 1 {
            return Fq { a: mulmod(x.a, y.a, q), b: 0 };
        }
        // theta^2 = t*theta - n
        let bb = mulmod(x.b, y.b, q);
        let a = (mulmod(x.a, y.a, q) + q - mulmod(bb, self.n, q)) % q;
        let b = (mulmod(x.a, y.b, q) + mulmod(x.b, y.a, q) + mulmod(bb, self.t, q)) % q;
        Fq { a, b }
    }

    pub fn pow(&self, x: Fq, mut e: u64) -> Fq {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, x: Fq) -> bool {
        x.a == 0 && x.b == 0
    }

    pub fn inverse(&self, x: Fq) -> Option<Fq> {
        (!self.is_zero(x)).then(|| self.pow(x, self.order() - 2))
    }

    /// Euler's criterion; the field must have odd order and x must be nonzero.
    pub fn is_square(&self, x: Fq) -> bool {
        debug_assert!(self.q != 2 && !self.is_zero(x));
        self.pow(x, (self.order() - 1) / 2) == self.one()
    }

    /// Elements in the canonical order (b, a) lexicographic.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        let bs = if self.degree == 2 { self.q } else { 1 };
        (0..bs).flat_map(move |b| (0..self.q).map(move |a| Fq { a, b }))
    }

    /// The first non-square in canonical order.
    pub fn first_non_square(&self) -> Fq {
        self.elements()
            .skip(1)
            .find(|&x| !self.is_square(x))
            .expect("odd-order field has non-squares")
    }

    /// Tonelli-Shanks square root of a nonzero square in a field of odd order.
    pub fn sqrt(&self, x: Fq) -> Option<Fq> {
        if self.is_zero(x) {
            return Some(x);
        }
        if !self.is_square(x) {
            return None;
        }
        let order = self.order();
        let mut m = order - 1;
        let mut s = 0u32;
        while m.is_multiple_of(2) {
            m /= 2;
            s += 1;
        }
        let z = self.first_non_square();
        let mut c = self.pow(z, m);
        let mut r = self.pow(x, m.div_ceil(2));
        let mut t = self.pow(x, m);
        let mut s_cur = s;
        while t != self.one() {
            let mut i = 0;
            let mut tt = t;
            while tt != self.one() {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (s_cur - i - 1));
            r = self.mul(r, b);
            c = self.mul(b, b);
            t = self.mul(t, c);
            s_cur = i;
        }
        Some(r)
    }
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_{}", self.q)
        } else {
            write!(f, "F_{}^2", self.q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute_squares(f: &ResidueField) -> HashSet<Fq> {
        f.elements().skip(1).map(|x| f.mul(x, x)).collect()
    }

    #[test]
    fn euler_matches_enumeration_prime_fields() {
        for q in [3u64, 5, 7, 11, 13, 17, 97, 101] {
            let f = ResidueField::new(q, 1, 0, 0);
            let sq = brute_squares(&f);
            for x in f.elements().skip(1) {
                assert_eq!(f.is_square(x), sq.contains(&x), "q={q} x={x:?}");
                if let Some(r) = f.sqrt(x) {
                    assert_eq!(f.mul(r, r), x);
                }
            }
        }
    }

    #[test]
    fn degree_two_field() {
        // F_9 = F_3[i], i^2 = -1: theta^2 = 0*theta - 1
        let f = ResidueField::new(3, 2, 0, 1);
        let sq = brute_squares(&f);
        assert_eq!(sq.len(), 4);
        for x in f.elements().skip(1) {
            assert_eq!(f.is_square(x), sq.contains(&x));
            let inv = f.inverse(x).unwrap();
            assert_eq!(f.mul(x, inv), f.one());
            if let Some(r) = f.sqrt(x) {
                assert_eq!(f.mul(r, r), x);
            }
        }
        // 17 = 1 mod 16 makes Tonelli-Shanks iterate
        let f = ResidueField::new(17, 1, 0, 0);
        assert_eq!(f.sqrt(f.from_u64(15)).map(|r| f.mul(r, r)), Some(f.from_u64(15)));
        assert_eq!(f.sqrt(f.from_u64(5)), None);
    }
}
