//! Exact dense linear algebra over the rationals.
//!
//! Everything here is sized for the small lattices of this crate
//! (dimension at most a dozen): Gauss-Jordan solve/inverse, right
//! nullspaces, and inertia of symmetric matrices by exact congruence
//! reduction (Sylvester's law), tracking a witness direction when the
//! form is not negative definite.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn is_symmetric(m: &Matrix) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n)
        && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Solves `a x = b` for square `a`. Errors with [`Error::SingularMatrix`].
pub fn solve(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    assert!(b.len() == n && a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for entry in m[col].iter_mut() {
            *entry = &*entry / &p;
        }
        for row in 0..n {
            if row != col && !m[row][col].is_zero() {
                let f = m[row][col].clone();
                for k in col..=n {
                    let delta = &f * &m[col][k];
                    m[row][k] = &m[row][k] - &delta;
                }
            }
        }
    }
    Ok(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Exact inverse of a square matrix.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        cols.push(solve(a, &e)?);
    }
    // cols[j] is the j-th column of the inverse.
    let mut inv = zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            inv[i][j] = v.clone();
        }
    }
    Ok(inv)
}

pub fn mat_vec(a: &Matrix, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (m, v)| acc + m * v)
        })
        .collect()
}

pub fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter()
        .zip(y)
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// Basis of the right nullspace of a (possibly rank-deficient) row set
/// of linear functionals on an `n`-dimensional space.
pub fn nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    for r in &m {
        assert_eq!(r.len(), n);
    }
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let p = m[rank][col].clone();
        for entry in m[rank].iter_mut() {
            *entry = &*entry / &p;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..n {
                    let delta = &f * &m[rank][k];
                    m[r][k] = &m[r][k] - &delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let mut basis = Vec::with_capacity(n - rank);
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix.
///
/// Also returns a direction (in the matrix's own basis) on which the
/// form is nonnegative, when one exists; the witness certifies failure
/// of negative definiteness.
pub fn inertia_with_witness(
    sym: &Matrix,
) -> ((usize, usize, usize), Option<Vec<Rational>>) {
    let k = sym.len();
    debug_assert!(is_symmetric(sym));
    let mut m = sym.clone();
    // Rows of `basis` express the current directions in the original basis.
    let mut basis = identity(k);
    let mut pending: Vec<usize> = (0..k).collect();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    let mut witness: Option<Vec<Rational>> = None;

    while !pending.is_empty() {
        if let Some(&i) = pending.iter().find(|&&i| !m[i][i].is_zero()) {
            let d = m[i][i].clone();
            if d.is_positive() {
                pos += 1;
                if witness.is_none() {
                    witness = Some(basis[i].clone());
                }
            } else {
                neg += 1;
            }
            pending.retain(|&p| p != i);
            let col: Vec<(usize, Rational)> = pending
                .iter()
                .map(|&a| (a, m[a][i].clone()))
                .collect();
            for (a, ca) in &col {
                if ca.is_zero() {
                    continue;
                }
                let f = ca / &d;
                let pivot_row = basis[i].clone();
                for (ba, pv) in basis[*a].iter_mut().zip(&pivot_row) {
                    *ba -= &f * pv;
                }
            }
            for (a, ca) in &col {
                for (b, cb) in &col {
                    let delta = ca * cb / &d;
                    m[*a][*b] = &m[*a][*b] - &delta;
                }
            }
        } else if let Some((i, j)) = first_offdiag(&m, &pending) {
            // Hyperbolic 2x2 block: one positive and one negative direction.
            let a = m[i][j].clone();
            pos += 1;
            neg += 1;
            if witness.is_none() {
                let mut w = basis[i].clone();
                for (wv, bj) in w.iter_mut().zip(&basis[j]) {
                    if a.is_positive() {
                        *wv += bj;
                    } else {
                        *wv -= bj;
                    }
                }
                witness = Some(w);
            }
            pending.retain(|&p| p != i && p != j);
            let coli: Vec<(usize, Rational)> =
                pending.iter().map(|&r| (r, m[r][i].clone())).collect();
            let colj: Vec<(usize, Rational)> =
                pending.iter().map(|&r| (r, m[r][j].clone())).collect();
            for ((r, ci), (_, cj)) in coli.iter().zip(&colj) {
                let x = cj / &a; // coefficient on direction i
                let y = ci / &a; // coefficient on direction j
                let (bi, bj) = (basis[i].clone(), basis[j].clone());
                for ((br, vi), vj) in basis[*r].iter_mut().zip(&bi).zip(&bj) {
                    *br -= &x * vi;
                    *br -= &y * vj;
                }
            }
            for ((r, ci_r), (_, cj_r)) in coli.iter().zip(&colj) {
                for ((s, ci_s), (_, cj_s)) in coli.iter().zip(&colj) {
                    let delta = (cj_r * ci_s + ci_r * cj_s) / &a;
                    m[*r][*s] = &m[*r][*s] - &delta;
                }
            }
        } else {
            // The remaining block is identically zero.
            zero += pending.len();
            if witness.is_none() {
                witness = Some(basis[pending[0]].clone());
            }
            break;
        }
    }
    ((pos, neg, zero), witness)
}

fn first_offdiag(m: &Matrix, pending: &[usize]) -> Option<(usize, usize)> {
    for (a, &i) in pending.iter().enumerate() {
        for &j in &pending[a + 1..] {
            if !m[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Inertia of a symmetric rational matrix.
pub fn inertia(sym: &Matrix) -> (usize, usize, usize) {
    inertia_with_witness(sym).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    #[test]
    fn solve_2x2() {
        let a = m(&[&[-2, 1], &[1, -2]]);
        let x = solve(&a, &[rat(1, 3), rat(1, 3)]).unwrap();
        assert_eq!(x, vec![rat(-1, 3), rat(-1, 3)]);
    }

    #[test]
    fn inverse_matches_solve() {
        let a = m(&[&[-2, 1], &[1, -2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], rat(-2, 3));
        assert_eq!(inv[0][1], rat(-1, 3));
        assert_eq!(inv[1][0], rat(-1, 3));
        assert_eq!(inv[1][1], rat(-2, 3));
    }

    #[test]
    fn singular_detected() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            solve(&a, &[rat_int(1), rat_int(1)]),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn inertia_diag() {
        assert_eq!(inertia(&m(&[&[2, 0], &[0, -3]])), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[-2, 1], &[1, -2]])), (0, 2, 0));
        assert_eq!(inertia(&m(&[&[0, 0], &[0, 0]])), (0, 0, 2));
    }

    #[test]
    fn inertia_hyperbolic_block() {
        // No nonzero diagonal: needs the 2x2 pivot.
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        let ((p, n, z), w) = inertia_with_witness(&m(&[&[0, -5], &[-5, 0]]));
        assert_eq!((p, n, z), (1, 1, 0));
        // Witness direction has nonnegative value: (1, -1) gives +10.
        let w = w.unwrap();
        assert_eq!(w, vec![rat_int(1), rat_int(-1)]);
    }

    #[test]
    fn negative_definite_has_no_witness() {
        let (sig, w) = inertia_with_witness(&m(&[&[-2, 1, 0], &[1, -2, 1], &[0, 1, -2]]));
        assert_eq!(sig, (0, 3, 0));
        assert!(w.is_none());
    }

    #[test]
    fn witness_value_is_nonnegative() {
        let a = m(&[&[1, 2, 0], &[2, -3, 1], &[0, 1, -1]]);
        let ((p, _, _), w) = inertia_with_witness(&a);
        assert!(p > 0);
        let w = w.unwrap();
        let q = dot(&w, &mat_vec(&a, &w));
        assert!(q >= Rational::zero());
    }

    #[test]
    fn nullspace_of_two_functionals() {
        // ker of rows (1,0,1,0) and (0,1,0,-1) in dim 4.
        let rows = vec![
            vec![rat_int(1), rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(0), rat_int(-1)],
        ];
        let basis = nullspace(&rows, 4);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &rows {
                assert!(dot(row, v).is_zero());
            }
        }
    }
}
