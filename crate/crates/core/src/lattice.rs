//! Integer lattices of full rank in Z^n (n is 1 or 2 here) kept in row-style
//! Hermite normal form.
//!
//! A basis is upper triangular with positive diagonal and the entries above
//! each pivot reduced into `[0, pivot)`. Reduction of a vector against the
//! basis yields the canonical representative of its coset, with coordinate
//! `j` in `[0, H[j][j])`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::Int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("generators span a lattice of rank {rank} in dimension {dim}")]
    NotFullRank { rank: usize, dim: usize },
    #[error("generator has length {got}, expected {dim}")]
    DimensionMismatch { got: usize, dim: usize },
}

/// Echelon form of a generator matrix together with the unimodular
/// transform: `transform * generators = echelon`.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Int>>,
    pub transform: Vec<Vec<Int>>,
    pub rank: usize,
}

fn sub_scaled(row: &mut [Int], other: &[Int], q: &Int) {
    for (a, b) in row.iter_mut().zip(other) {
        *a -= q * b;
    }
}

/// Row-style Hermite normal form with transform.
pub fn echelon(generators: &[Vec<Int>], dim: usize) -> Echelon {
    let k = generators.len();
    let mut a: Vec<Vec<Int>> = generators.to_vec();
    let mut u: Vec<Vec<Int>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();
    let mut r = 0;
    for j in 0..dim {
        if r == k {
            break;
        }
        loop {
            let pivot = (r..k)
                .filter(|&i| !a[i][j].is_zero())
                .min_by(|&x, &y| a[x][j].abs().cmp(&a[y][j].abs()));
            let Some(p) = pivot else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in (r + 1)..k {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = a[i][j].div_floor(&a[r][j]);
                let (ar, ur) = (a[r].clone(), u[r].clone());
                sub_scaled(&mut a[i], &ar, &q);
                sub_scaled(&mut u[i], &ur, &q);
                if !a[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r == k || a[r][j].is_zero() {
            continue;
        }
        if a[r][j].is_negative() {
            for x in a[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][j].div_floor(&a[r][j]);
            if q.is_zero() {
                continue;
            }
            let (ar, ur) = (a[r].clone(), u[r].clone());
            sub_scaled(&mut a[i], &ar, &q);
            sub_scaled(&mut u[i], &ur, &q);
        }
        r += 1;
    }
    Echelon { rows: a, transform: u, rank: r }
}

/// A full-rank sublattice of Z^dim in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<Vec<Int>>,
}

impl Lattice {
    pub fn from_generators(generators: &[Vec<Int>], dim: usize) -> Result<Self, LatticeError> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(LatticeError::DimensionMismatch { got: g.len(), dim });
        }
        let e = echelon(generators, dim);
        if e.rank < dim || (0..dim).any(|j| e.rows[j][j].is_zero()) {
            return Err(LatticeError::NotFullRank { rank: e.rank, dim });
        }
        Ok(Lattice { basis: e.rows[..dim].to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    /// Index of the lattice in Z^dim.
    pub fn index(&self) -> Int {
        (0..self.dim()).map(|j| self.basis[j][j].clone()).product()
    }

    /// Canonical coset representative of `v`.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut out = v.to_vec();
        for j in 0..self.dim() {
            let q = out[j].div_floor(&self.basis[j][j]);
            if !q.is_zero() {
                sub_scaled(&mut out, &self.basis[j], &q);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_whole_space(&self) -> bool {
        self.index().is_one()
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let gens: Vec<Vec<Int>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::from_generators(&gens, self.dim()).expect("sum of full-rank lattices")
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        let n = self.dim();
        // Kernel of v -> v * [B1; -B2] gives pairs (l, m) with l*B1 = m*B2.
        let stacked: Vec<Vec<Int>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|r| r.iter().map(|x| -x).collect()))
            .collect();
        let e = echelon(&stacked, n);
        let gens: Vec<Vec<Int>> = e.transform[e.rank..]
            .iter()
            .map(|coeffs| {
                let mut v = vec![Int::zero(); n];
                for (c, row) in coeffs[..n].iter().zip(&self.basis) {
                    for (x, b) in v.iter_mut().zip(row) {
                        *x += c * b;
                    }
                }
                v
            })
            .collect();
        Lattice::from_generators(&gens, n).expect("intersection of full-rank lattices")
    }
}

/// Integer coefficients `c` with `sum c_i * generators[i] = target`, if any.
pub fn express(generators: &[Vec<Int>], dim: usize, target: &[Int]) -> Option<Vec<Int>> {
    let e = echelon(generators, dim);
    let mut rest = target.to_vec();
    let mut coeffs = vec![Int::zero(); e.rank];
    let mut row = 0;
    for j in 0..dim {
        if row < e.rank && !e.rows[row][j].is_zero() {
            let (q, r) = rest[j].div_rem(&e.rows[row][j]);
            if !r.is_zero() {
                return None;
            }
            sub_scaled(&mut rest, &e.rows[row], &q);
            coeffs[row] = q;
            row += 1;
        } else if !rest[j].is_zero() {
            return None;
        }
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut out = vec![Int::zero(); generators.len()];
    for (c, urow) in coeffs.iter().zip(&e.transform) {
        for (o, x) in out.iter_mut().zip(urow) {
            *o += c * x;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn hnf_of_gaussian_ideal() {
        // (2+i) Z[i] = span{(2,1), (-1,2)}
        let l = Lattice::from_generators(&[v(&[2, 1]), v(&[-1, 2])], 2).unwrap();
        assert_eq!(l.index(), int(5));
        assert_eq!(l.basis()[1][0], int(0));
        assert!(l.contains(&v(&[5, 0])));
        assert!(!l.contains(&v(&[1, 0])));
        let r = l.reduce(&v(&[7, -3]));
        assert!(r[0] >= int(0) && r[0] < l.basis()[0][0].clone());
    }

    #[test]
    fn sum_and_intersection_in_dimension_one() {
        let a = Lattice::from_generators(&[v(&[8])], 1).unwrap();
        let b = Lattice::from_generators(&[v(&[34])], 1).unwrap();
        assert_eq!(a.sum(&b).index(), int(2));
        assert_eq!(a.intersection(&b).index(), int(136));
    }

    #[test]
    fn express_recovers_combination() {
        let gens = vec![v(&[3, 1]), v(&[1, 4]), v(&[5, 5])];
        let t = v(&[1, 0]);
        let c = express(&gens, 2, &t).unwrap();
        let mut acc = v(&[0, 0]);
        for (ci, g) in c.iter().zip(&gens) {
            acc[0] += ci * &g[0];
            acc[1] += ci * &g[1];
        }
        assert_eq!(acc, t);
        assert!(express(&[v(&[2, 0]), v(&[0, 2])], 2, &v(&[1, 0])).is_none());
    }

    #[test]
    fn rank_deficient_rejected() {
        assert!(matches!(
            Lattice::from_generators(&[v(&[1, 2]), v(&[2, 4])], 2),
            Err(LatticeError::NotFullRank { .. })
        ));
    }
}
