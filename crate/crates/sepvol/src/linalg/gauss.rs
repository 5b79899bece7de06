//! Exact Gaussian elimination over the rationals. Internal workhorse for
//! rank, kernels, linear solves, determinants and inverses.

use num_traits::{One, Zero};

use super::Rational;

pub(crate) struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form. Pivot entries are 1, pivot columns are cleared
/// above and below. Zero rows sink to the bottom.
pub(crate) fn rref(mut rows: Vec<Vec<Rational>>) -> Rref {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rows, pivots }
}

pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows.to_vec()).rank()
}

/// Basis of the right kernel {x : M x = 0}. The basis vector for free
/// column f has a 1 in position f, so the result is deterministic.
pub(crate) fn kernel_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let reduced = rref(rows.to_vec());
    let mut is_pivot = vec![false; ncols];
    for &c in &reduced.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[f] = Rational::one();
        for (i, &c) in reduced.pivots.iter().enumerate() {
            v[c] = -reduced.rows[i][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of M x = b, or None if inconsistent. Free variables are 0.
pub(crate) fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len());
    let ncols = rows.first().map_or(0, Vec::len);
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let reduced = rref(augmented);
    if reduced.pivots.last() == Some(&ncols) {
        return None; // pivot in the rhs column
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &c) in reduced.pivots.iter().enumerate() {
        x[c] = reduced.rows[i][ncols].clone();
    }
    Some(x)
}

/// Determinant of a square matrix by fraction elimination.
pub(crate) fn det(mut rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "det needs a square matrix");
    let mut result = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            rows.swap(c, p);
            result = -result;
        }
        let pivot = rows[c][c].clone();
        result *= &pivot;
        for i in c + 1..n {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] / &pivot;
            for j in c..n {
                let delta = &factor * &rows[c][j];
                rows[i][j] = &rows[i][j] - &delta;
            }
        }
    }
    result
}

/// Inverse of a square matrix, or None when singular.
pub(crate) fn invert(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "invert needs a square matrix");
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            r
        })
        .collect();
    let reduced = rref(augmented);
    if reduced.rank() < n {
        return None;
    }
    Some(reduced.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}
