//! Resultants and discriminants with polynomial coefficients.

use num_traits::{One, Zero};

use super::multi::{MultiPoly, Var};
use super::upoly::UPoly;
use super::PolyError;
use crate::arith::Rat;

/// Fraction-free Gaussian elimination; entries must lie in an integral
/// domain where every Bareiss quotient is exact.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::int(1);
    }
    let mut sign = false;
    let mut prev = MultiPoly::int(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss quotient is exact");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Sylvester matrix of f = sum f[i] X^i and g = sum g[i] X^i of the given formal degrees.
pub fn sylvester(f: &[MultiPoly], g: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![MultiPoly::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![MultiPoly::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Res_v(f, g) using the degrees of f and g in v.
pub fn resultant_in(f: &MultiPoly, g: &MultiPoly, v: Var) -> Result<MultiPoly, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    if fc.len() == 1 && gc.len() == 1 {
        return Ok(MultiPoly::int(1));
    }
    if fc.len() == 1 {
        return Ok(fc[0].pow((gc.len() - 1) as u32));
    }
    if gc.len() == 1 {
        return Ok(gc[0].pow((fc.len() - 1) as u32));
    }
    Ok(bareiss_det(sylvester(&fc, &gc)))
}

/// Disc_v(f) = (-1)^(n(n-1)/2) Res_v(f, f_v) / lc_v(f), n the degree in v.
pub fn discriminant_in(f: &MultiPoly, v: Var) -> Result<MultiPoly, PolyError> {
    let n = f.degree_in(v).unwrap_or(0) as usize;
    if n < 1 {
        return Err(PolyError::DegreeTooSmall(f.to_string()));
    }
    let lc = f.coefficients_in(v).pop().unwrap();
    let r = resultant_in(f, &f.derivative(v), v)?;
    let d = r.div_exact(&lc).ok_or_else(|| PolyError::Inexact(r.to_string()))?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -&d } else { d })
}

pub fn resultant(f: &UPoly, g: &UPoly) -> Rat {
    let fm = f.to_multi(Var::X);
    let gm = g.to_multi(Var::X);
    match resultant_in(&fm, &gm, Var::X) {
        Ok(r) => r.constant_value().expect("univariate resultant is constant"),
        Err(_) => Rat::zero(),
    }
}

pub fn discriminant(f: &UPoly) -> Rat {
    discriminant_in(&f.to_multi(Var::X), Var::X)
        .ok()
        .and_then(|d| d.constant_value())
        .unwrap_or_else(Rat::one)
}
