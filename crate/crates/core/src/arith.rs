//! Rational-integer helpers: primality, small factorizations, Legendre symbols,
//! p-adic valuations of rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

const SMALL_PRIMES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first 13 prime bases is deterministic below
/// 3.3e24; above that the 20-base run is a probable-prime test.
pub const DETERMINISTIC_PRIMALITY_BOUND: &str = "3317044064679887385961981";

/// Primality of `|n|`.
pub fn is_prime(n: &Int) -> bool {
    let n = n.magnitude();
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in SMALL_PRIMES.iter() {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factorization of `|n|` by trial division. Intended for the modest
/// integers (discriminants, table entries) this crate factors.
pub fn factor(n: &Int) -> Vec<(Int, u32)> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut p = int(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == int(2) { 1 } else { 2 };
    }
    if m > Int::one() {
        out.push((m, 1));
    }
    out
}

pub fn is_squarefree(n: &Int) -> bool {
    !n.is_zero() && factor(n).iter().all(|(_, e)| *e == 1)
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn int_valuation(n: &Int, p: &Int) -> u32 {
    debug_assert!(!n.is_zero());
    let mut m = n.clone();
    let mut v = 0;
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// Exponent of the prime `p` in a nonzero rational.
pub fn rat_valuation(r: &Rat, p: &Int) -> i64 {
    int_valuation(r.numer(), p) as i64 - int_valuation(r.denom(), p) as i64
}

/// Legendre symbol (a/p) for an odd prime p: returns -1, 0 or 1.
pub fn legendre(a: &Int, p: &Int) -> i32 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    let x = r.modpow(&e, p);
    if x.is_one() {
        1
    } else {
        -1
    }
}

/// Kronecker symbol (d/2) for d = 0, 1 mod 4: 0 if d even, 1 if d = +-1 mod 8, -1 otherwise.
pub fn kronecker_two(d: &Int) -> i32 {
    let r = d.mod_floor(&int(8)).to_i64().unwrap();
    match r {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &Int) -> Int {
    assert!(n.sign() != Sign::Minus, "isqrt of a negative integer");
    n.sqrt()
}

pub fn is_square_int(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = isqrt(n);
    &r * &r == *n
}

pub fn is_square_rat(r: &Rat) -> bool {
    is_square_int(r.numer()) && is_square_int(r.denom())
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Least common multiple of the denominators of the given rationals.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, r| acc.lcm(r.denom()))
}

/// Number of decimal digits of `|n|` (with 0 having one digit).
pub fn decimal_digits(n: &Int) -> usize {
    let s = n.magnitude().to_str_radix(10);
    s.len()
}

/// Canonical text for a rational: "p" or "p/q".
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Int = n.trim().parse().ok()?;
        let d: Int = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        Some(Rat::from_integer(s.parse().ok()?))
    }
}
