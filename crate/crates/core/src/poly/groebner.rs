//! Buchberger's algorithm over Q in graded-lex order.

use super::multi::{Monomial, MultiPoly};

/// Remainder of p on division by the basis (full reduction).
pub fn normal_form(p: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut p = p.clone();
    let mut rem = MultiPoly::zero();
    while let Some((m, c)) = p.leading() {
        let (m, c) = (m.clone(), c.clone());
        let divisor = basis.iter().find_map(|g| {
            let (gm, gc) = g.leading()?;
            m.div(gm).map(|q| (g, q, &c / gc))
        });
        match divisor {
            Some((g, q, coef)) => p = &p - &g.mul_term(&coef, &q),
            None => {
                let lead = MultiPoly::monomial(c, m);
                rem = &rem + &lead;
                p = &p - &lead;
            }
        }
    }
    rem
}

fn s_poly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fc.recip(), &l.div(fm).unwrap());
    let b = g.mul_term(&gc.recip(), &l.div(gm).unwrap());
    &a - &b
}

/// Reduced Groebner basis, each element monic.
pub fn groebner_basis(generators: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = generators.iter().filter(|g| !g.is_zero()).map(MultiPoly::monic).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (mi, mj) = (basis[i].leading().unwrap().0, basis[j].leading().unwrap().0);
        if mi.is_coprime(mj) {
            continue;
        }
        let r = normal_form(&s_poly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.total_degree() == Some(0) {
            return vec![MultiPoly::int(1)];
        }
        let k = basis.len();
        basis.push(r);
        pairs.extend((0..k).map(|i| (i, k)));
    }
    reduce(basis)
}

fn reduce(basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let leads: Vec<Monomial> = basis.iter().map(|g| g.leading().unwrap().0.clone()).collect();
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, lj)| {
            j != i && leads[i].div(lj).is_some() && (leads[i] != *lj || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        out.push(normal_form(&minimal[i], &others).monic());
    }
    out.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    out
}

/// Whether the ideal generated by the inputs is the unit ideal.
pub fn is_unit_ideal(generators: &[MultiPoly]) -> bool {
    let gb = groebner_basis(generators);
    gb.len() == 1 && gb[0].total_degree() == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::multi::poly;

    #[test]
    fn unit_and_proper_ideals() {
        assert!(is_unit_ideal(&[poly("x*y - 1"), poly("x")]));
        assert!(!is_unit_ideal(&[poly("x^2 + y^2 - 1"), poly("x - y")]));
        assert!(is_unit_ideal(&[poly("x^2 + 1"), poly("x^2 - 1")]));
        // cusp y^2 = x^3 is singular at the origin
        let f = poly("y^2 - x^3");
        assert!(!is_unit_ideal(&[f.clone(), f.derivative(crate::poly::Var::X), f.derivative(crate::poly::Var::Y)]));
    }

    #[test]
    fn basis_of_twisted_cubic_slice() {
        let gb = groebner_basis(&[poly("x^2 - y"), poly("x^3 - z")]);
        for g in ["x^2 - y", "x*y - z", "y^2 - x*z"] {
            assert!(normal_form(&poly(g), &gb).is_zero(), "{g}");
        }
        assert!(!normal_form(&poly("x"), &gb).is_zero());
    }
}
