//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wacert::nf::{FieldElement, PrincipalPrime, QuadraticField};

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Exponent of p in a nonzero integer, by repeated division.
pub fn vp(n: &BigInt, p: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut k = 0;
    while (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

pub fn vp_rat(r: &BigRational, p: &BigInt) -> i64 {
    vp(r.numer(), p) - vp(r.denom(), p)
}

/// Is a a square modulo the odd prime p, by enumerating all residues.
pub fn brute_square_mod(a: &BigInt, p: i64) -> bool {
    let a = a.mod_floor(&big(p));
    (0..p).any(|r| (big(r * r) - &a).mod_floor(&big(p)).is_zero())
}

/// Hilbert symbol over Q_p (p odd) from the definition, for s, t of
/// valuation at most 1: s x^2 + t y^2 = z^2 has a primitive solution modulo
/// p^3 (which lifts by Hensel). Primitive solutions have x or y a unit.
pub fn brute_hilbert_odd(s: i64, t: i64, p: i64) -> i8 {
    let m = p * p * p;
    let squares: std::collections::HashSet<i64> = (0..m).map(|z| z * z % m).collect();
    for x in 0..m {
        for y in 0..m {
            if x % p == 0 && y % p == 0 {
                continue;
            }
            let lhs = ((s * x % m) * x % m + (t * y % m) * y % m).rem_euclid(m);
            if squares.contains(&lhs) {
                return 1;
            }
        }
    }
    -1
}

/// Is s a square modulo the prime pi, by enumerating representatives of O_K / pi.
pub fn brute_square_mod_prime(s: &FieldElement, pi: &PrincipalPrime) -> bool {
    let k = s.field();
    let p = pi.residue_char().clone();
    let p64: i64 = p.clone().try_into().unwrap();
    let reps: Vec<FieldElement> = if pi.residue_degree() == 1 {
        (0..p64).map(|r| FieldElement::from_i64(k, r)).collect()
    } else {
        (0..p64)
            .flat_map(|x| (0..p64).map(move |y| (x, y)))
            .map(|(x, y)| FieldElement::from_coords(k, &[big(x), big(y)]))
            .collect()
    };
    reps.iter().any(|r| {
        let d = &(r * r) - s;
        d.div(pi.generator()).unwrap().is_integral()
    })
}

/// Does pi^n divide alpha.
pub fn divisible(alpha: &FieldElement, pi: &FieldElement, n: u32) -> bool {
    alpha.div(&pi.pow(n)).unwrap().is_integral()
}

pub fn random_element(rng: &mut ChaCha8Rng, k: QuadraticField, bound: i64) -> FieldElement {
    let x = rng.gen_range(-bound..=bound);
    let y = if k.is_rational() { 0 } else { rng.gen_range(-bound..=bound) };
    FieldElement::from_coords(k, &[big(x), big(y)])
}

pub fn random_nonzero(rng: &mut ChaCha8Rng, k: QuadraticField, bound: i64) -> FieldElement {
    loop {
        let e = random_element(rng, k, bound);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn random_nonzero_i64(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return n;
        }
    }
}

/// Res(lf prod (x - a_i), lg prod (x - b_j)) = lf^m lg^n prod (a_i - b_j).
pub fn root_product_resultant(lf: i64, a: &[i64], lg: i64, b: &[i64]) -> BigRational {
    let mut r = big(lf).pow(b.len() as u32) * big(lg).pow(a.len() as u32);
    for ai in a {
        for bj in b {
            r *= big(ai - bj);
        }
    }
    BigRational::from_integer(r)
}

/// Coefficients (constant first) of l prod (x - r_i).
pub fn from_roots(l: i64, roots: &[i64]) -> Vec<BigInt> {
    let mut c = vec![big(l)];
    for r in roots {
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= ci * big(*r);
        }
        c = next;
    }
    c
}

/// Gaussian integers as (re, im).
pub type Gauss = (i64, i64);

pub fn g_mul(a: Gauss, b: Gauss) -> Gauss {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn g_add(a: Gauss, b: Gauss) -> Gauss {
    (a.0 + b.0, a.1 + b.1)
}

/// Exact a / b, None when not a Gaussian integer.
pub fn g_div(a: Gauss, b: Gauss) -> Option<Gauss> {
    let n = b.0 * b.0 + b.1 * b.1;
    let num = g_mul(a, (b.0, -b.1));
    (num.0 % n == 0 && num.1 % n == 0).then(|| (num.0 / n, num.1 / n))
}

pub fn is_positive_int(n: &BigInt) -> bool {
    n.is_positive()
}

pub fn one() -> BigInt {
    BigInt::one()
}

// ---- property suites, each returning a one-line summary or the first failure ----


use wacert::arith::is_prime;
use wacert::local::{hensel_sqrt, valuation};
use wacert::nf::is_principal_prime;
use wacert::pipeline::torsion_units;
use wacert::poly::elim::resultant;
use wacert::poly::UPoly;
use wacert::symbols::{hilbert_rational, reciprocity_check, RationalPlace};

pub type Suite = Result<String, String>;

pub fn fields() -> Vec<QuadraticField> {
    [1, 3, -1, -5].iter().map(|&d| QuadraticField::new(d).unwrap()).collect()
}

fn odd_prime_factors(n: i64) -> Vec<i64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 3;
    while n % 2 == 0 {
        n /= 2;
    }
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// prod_v (s, t)_v = 1 over Q, with odd symbols at 3, 5, 7 checked against
/// the definition.
pub fn product_formula_suite(cases: usize, seed: u64) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut brute = 0;
    for _ in 0..cases {
        let s = random_nonzero_i64(&mut rng, 400);
        let t = random_nonzero_i64(&mut rng, 400);
        let (sr, tr) = (BigRational::from_integer(big(s)), BigRational::from_integer(big(t)));
        let mut places = vec![RationalPlace::Infinity, RationalPlace::Prime(big(2))];
        places.extend(odd_prime_factors(s * t).into_iter().map(|p| RationalPlace::Prime(big(p))));
        let mut product = 1i8;
        for v in &places {
            let h = hilbert_rational(&sr, &tr, v);
            if let RationalPlace::Prime(p) = v {
                let p: i64 = p.try_into().unwrap();
                if p <= 7 && p > 2 && s % (p * p) != 0 && t % (p * p) != 0 {
                    let b = brute_hilbert_odd(s.rem_euclid(p * p * p), t.rem_euclid(p * p * p), p);
                    if b != h {
                        return Err(format!("({s}, {t})_{p}: formula {h}, definition {b}"));
                    }
                    brute += 1;
                }
            }
            product *= h;
        }
        if product != 1 {
            return Err(format!("product over places of ({s}, {t}) is {product}"));
        }
        // a place outside 2 s t infinity contributes 1
        if hilbert_rational(&sr, &tr, &RationalPlace::Prime(big(401))) != 1 && (s * t) % 401 != 0 {
            return Err(format!("({s}, {t})_401 != 1"));
        }
    }
    Ok(format!("{cases} pairs, {brute} symbols against the definition"))
}

/// Small odd principal primes of K, one generator per ideal.
pub fn small_primes(k: QuadraticField, bound: i64, max_norm: i64) -> Vec<PrincipalPrime> {
    let mut out: Vec<PrincipalPrime> = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if k.is_rational() && y != 0 {
                continue;
            }
            let e = FieldElement::from_coords(k, &[big(x), big(y)]);
            if e.is_zero() || e.norm().abs() > BigRational::from_integer(big(max_norm)) {
                continue;
            }
            if let Ok(p) = is_principal_prime(&e) {
                if p.is_odd() && !out.iter().any(|q| q.same_ideal(&p)) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Units with coordinates bounded by `bound`, found by their norm.
pub fn small_units(k: QuadraticField, bound: i64) -> Vec<FieldElement> {
    if k.is_rational() || k.is_imaginary() {
        return torsion_units(k);
    }
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let u = FieldElement::from_coords(k, &[big(x), big(y)]);
            if !u.is_zero() && u.norm().abs() == BigRational::from_integer(big(1)) {
                out.push(u);
            }
        }
    }
    out
}

/// For pairs of odd primes with the mod-8 and sign premises, both sides of the
/// biconditional are recomputed by enumerating residues.
pub fn reciprocity_suite(min_per_field: usize) -> Suite {
    let mut summary = Vec::new();
    for k in fields() {
        let units = small_units(k, 8);
        let mut primes = small_primes(k, if k.is_rational() { 120 } else { 20 }, 400);
        primes.sort_by_key(|p| p.cardinality());
        let eight = wacert::nf::ResidueRing::new(&FieldElement::from_i64(k, 8)).unwrap();
        let one_mod_8 = |p: &PrincipalPrime| units.iter().any(|u| eight.congruent(&(u * p.generator()), &FieldElement::one(k)));
        let special: Vec<PrincipalPrime> = primes.iter().filter(|p| one_mod_8(p)).take(4).cloned().collect();
        primes.truncate(10);
        primes.extend(special.into_iter().filter(|p| !primes.iter().any(|q| q.same_ideal(p))).collect::<Vec<_>>());
        let mut ok = 0;
        for s in &primes {
            for t in &primes {
                if s.same_ideal(t) {
                    continue;
                }
                let signs = [FieldElement::one(k), -&FieldElement::one(k)];
                for (u, w) in units.iter().flat_map(|u| signs.iter().map(move |w| (u, w))) {
                    let (sg, tg) = (u * s.generator(), w * t.generator());
                    let Ok(r) = reciprocity_check(&sg, &tg) else { continue };
                    let a = brute_square_mod_prime(&sg, t);
                    let b = brute_square_mod_prime(&tg, s);
                    if a != r.s_square_mod_t || b != r.t_square_mod_s || a != b {
                        return Err(format!("over {k}: s = {sg}, t = {tg}: {a} vs {b}"));
                    }
                    ok += 1;
                }
            }
        }
        if ok < min_per_field {
            return Err(format!("only {ok} admissible pairs over {k}"));
        }
        summary.push(format!("{k}: {ok}"));
    }
    Ok(summary.join(", "))
}

/// y^2 = t mod pi^N for every emitted root, checked by exact division.
pub fn hensel_suite(seed: u64) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0;
    for k in fields() {
        for pi in small_primes(k, 6, 120).into_iter().take(6) {
            for _ in 0..6 {
                let base = random_nonzero(&mut rng, k, 30);
                let t = &base * &base;
                if valuation(&t, &pi).map_err(|e| e.to_string())? != 0 {
                    continue;
                }
                let t = &t + &(pi.generator() * &random_element(&mut rng, k, 5)).pow(2);
                let n = rng.gen_range(1..=10);
                let Ok(r) = hensel_sqrt(&t, &pi, n) else { continue };
                let y = r.value();
                if !divisible(&(&(y * y) - &t), pi.generator(), n) {
                    return Err(format!("root {y} of {t} fails mod {}^{n}", pi.generator()));
                }
                count += 1;
            }
        }
    }
    if count < 50 {
        return Err(format!("only {count} witnesses"));
    }
    Ok(format!("{count} witnesses"))
}

fn norm_oracle(a: &FieldElement) -> BigRational {
    if a.field().is_rational() {
        return a.x().clone();
    }
    let (t, n) = a.field().omega_min_poly();
    let (x, y) = (a.x().clone(), a.y().clone());
    &x * &x + &x * &y * BigRational::from_integer(big(t)) + &y * &y * BigRational::from_integer(big(n))
}

fn valuation_oracle(a: &FieldElement, pi: &FieldElement) -> i64 {
    let mut n = 0;
    while divisible(a, pi, n + 1) {
        n += 1;
    }
    n as i64
}

pub fn norm_valuation_suite(cases: usize, seed: u64) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs = fields();
    let primes: Vec<Vec<PrincipalPrime>> = fs.iter().map(|&k| small_primes(k, 4, 30)).collect();
    for i in 0..cases {
        let j = i % fs.len();
        let k = fs[j];
        let a = random_nonzero(&mut rng, k, 60);
        let b = random_nonzero(&mut rng, k, 60);
        let ab = &a * &b;
        if ab.norm() != a.norm() * b.norm() || a.norm() != norm_oracle(&a) {
            return Err(format!("norm of {a} * {b} over {k}"));
        }
        let pi = &primes[j][rng.gen_range(0..primes[j].len())];
        let va = valuation(&a, pi).map_err(|e| e.to_string())?;
        let vb = valuation(&b, pi).map_err(|e| e.to_string())?;
        let vab = valuation(&ab, pi).map_err(|e| e.to_string())?;
        if vab != va + vb || va != valuation_oracle(&a, pi.generator()) {
            return Err(format!("valuations of {a}, {b} at {} over {k}", pi.generator()));
        }
    }
    Ok(format!("{cases} cases over {} fields", fs.len()))
}

pub fn resultant_suite(cases: usize, seed: u64) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let a: Vec<i64> = (0..m).map(|_| rng.gen_range(-6..=6)).collect();
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
        let lf = random_nonzero_i64(&mut rng, 3);
        let lg = random_nonzero_i64(&mut rng, 3);
        let f = UPoly::from_int_vec(&from_roots(lf, &a));
        let g = UPoly::from_int_vec(&from_roots(lg, &b));
        let want = root_product_resultant(lf, &a, lg, &b);
        let got = resultant(&f, &g);
        if got != want {
            return Err(format!("Res with roots {a:?}, {b:?}: {got} vs {want}"));
        }
    }
    Ok(format!("{cases} cases"))
}

pub fn rational_prime(n: i64) -> bool {
    is_prime(&big(n))
}
