//! Integer-lattice algorithms: Hermite normal form, saturated lattice bases,
//! integer kernels and integer solutions of linear systems.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{gauss, Int, QVector, Rational};

/// Basis of a saturated sublattice of Z^n: integer vectors, linearly
/// independent, generating exactly `span(basis) ∩ Z^n`. Stored in canonical
/// Hermite normal form, so equal lattices have equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLatticeBasis {
    basis: Vec<Vec<Int>>,
    ambient_dim: usize,
}

impl IntLatticeBasis {
    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis_vectors(&self) -> Vec<QVector> {
        self.basis
            .iter()
            .map(|b| QVector::new(b.iter().map(|x| Rational::from_integer(x.clone())).collect()))
            .collect()
    }

    /// Rational coordinates of `x` in this basis, if `x` lies in the span.
    pub fn coordinates_of(&self, x: &QVector) -> Option<Vec<Rational>> {
        assert_eq!(x.dim(), self.ambient_dim);
        // solve  B^T c = x  (columns are basis vectors)
        let rows: Vec<Vec<Rational>> = (0..self.ambient_dim)
            .map(|i| {
                self.basis
                    .iter()
                    .map(|b| Rational::from_integer(b[i].clone()))
                    .collect()
            })
            .collect();
        gauss::solve(&rows, x.coords())
    }
}

/// Basis of `span_R(vectors) ∩ Z^n`, the saturation of the lattice spanned by
/// the (possibly rational) input vectors. Empty input gives the rank-0
/// lattice.
pub fn saturated_lattice_basis(vectors: &[QVector], ambient_dim: usize) -> IntLatticeBasis {
    for v in vectors {
        assert_eq!(v.dim(), ambient_dim, "mixed ambient dimensions");
    }
    let rows: Vec<Vec<Rational>> = vectors
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.coords().to_vec())
        .collect();
    if rows.is_empty() {
        return IntLatticeBasis { basis: Vec::new(), ambient_dim };
    }
    // Orthogonal complement of the span, as integer rows; the saturation is
    // its integer kernel.
    let complement: Vec<Vec<Int>> = gauss::kernel_basis(&rows, ambient_dim)
        .iter()
        .map(|w| primitive_integer(w))
        .collect();
    let basis = if complement.is_empty() {
        (0..ambient_dim)
            .map(|i| {
                let mut e = vec![Int::zero(); ambient_dim];
                e[i] = Int::one();
                e
            })
            .collect()
    } else {
        integer_kernel(&complement, ambient_dim)
    };
    IntLatticeBasis { basis: hnf_rows(basis), ambient_dim }
}

/// Scale a rational vector by the unique positive rational making it a
/// primitive integer vector. The zero vector maps to itself.
pub(crate) fn primitive_integer(v: &[Rational]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut gcd = Int::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() || gcd.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &gcd).collect()
}

/// Row-style Hermite normal form of the lattice generated by the rows:
/// echelon shape, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped. Canonical for the row lattice.
pub(crate) fn hnf_rows(mat: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let ncols = mat.first().map_or(0, Vec::len);
    let (mut rows, _) = hnf_in_place(mat, ncols);
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows
}

/// HNF elimination restricted to pivot columns `0..limit`. Returns the
/// transformed rows and the pivot count. Rows beyond the pivot count have
/// zeros in the first `limit` columns.
fn hnf_in_place(mut rows: Vec<Vec<Int>>, limit: usize) -> (Vec<Vec<Int>>, usize) {
    let nrows = rows.len();
    let mut r = 0;
    for c in 0..limit {
        if r == nrows {
            break;
        }
        // Euclidean elimination below row r in column c.
        loop {
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if !rows[i][c].is_zero()
                    && best.map_or(true, |b| rows[i][c].abs() < rows[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut finished = true;
            for i in r + 1..nrows {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                for j in 0..rows[i].len() {
                    let delta = &q * &rows[r][j];
                    rows[i][j] = &rows[i][j] - delta;
                }
                if !rows[i][c].is_zero() {
                    finished = false;
                }
            }
            if finished {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in 0..rows[i].len() {
                let delta = &q * &rows[r][j];
                rows[i][j] = &rows[i][j] - delta;
            }
        }
        r += 1;
    }
    (rows, r)
}

/// Basis of {x in Z^n : M x = 0} for an integer matrix M. The result is a
/// saturated lattice (Z^n / ker is torsion-free).
pub(crate) fn integer_kernel(mat: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let k = mat.len();
    // Rows of [M^T | I]; unimodular row ops keep the right block a valid
    // change of basis of Z^n.
    let stacked: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut row: Vec<Int> = mat.iter().map(|m| m[i].clone()).collect();
            for j in 0..n {
                row.push(if i == j { Int::one() } else { Int::zero() });
            }
            row
        })
        .collect();
    let (rows, rank) = hnf_in_place(stacked, k);
    rows[rank..]
        .iter()
        .map(|r| {
            debug_assert!(r[..k].iter().all(Zero::is_zero));
            r[k..].to_vec()
        })
        .collect()
}

/// An integer solution of M x = b (M integer, b rational), or None when no
/// integer solution exists.
pub(crate) fn solve_integer(mat: &[Vec<Int>], rhs: &[Rational]) -> Option<Vec<Int>> {
    assert_eq!(mat.len(), rhs.len());
    let n = mat.first().map_or(0, Vec::len);
    if mat.is_empty() {
        return Some(vec![Int::zero(); n]);
    }
    // Integer normals force integer right-hand sides.
    let mut b = Vec::with_capacity(rhs.len());
    for r in rhs {
        if !r.is_integer() {
            return None;
        }
        b.push(r.to_integer());
    }
    let k = mat.len();
    // Row-HNF of [M^T | I] yields rows [H | U] with H = U M^T; solving
    // y^T H = b^T in integers gives x = U^T y.
    let stacked: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut row: Vec<Int> = mat.iter().map(|m| m[i].clone()).collect();
            for j in 0..n {
                row.push(if i == j { Int::one() } else { Int::zero() });
            }
            row
        })
        .collect();
    let (rows, rank) = hnf_in_place(stacked, k);
    let mut y = vec![Int::zero(); n];
    let mut residual = b;
    for i in 0..rank {
        let pivot_col = (0..k).find(|&c| !rows[i][c].is_zero())?;
        let (q, rem) = residual[pivot_col].div_rem(&rows[i][pivot_col]);
        if !rem.is_zero() {
            return None;
        }
        for c in 0..k {
            let delta = &q * &rows[i][c];
            residual[c] = &residual[c] - delta;
        }
        y[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None; // inconsistent system
    }
    let mut x = vec![Int::zero(); n];
    for (i, yi) in y.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        for j in 0..n {
            let delta = yi * &rows[i][k + j];
            x[j] = &x[j] + delta;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{e_vector, rational};

    fn qv(coords: &[(i64, i64)]) -> QVector {
        QVector::new(coords.iter().map(|&(p, q)| rational(p, q)).collect())
    }

    fn int_vec(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn saturation_of_scaled_line() {
        let basis = saturated_lattice_basis(&[qv(&[(1, 3), (1, 3), (1, 3), (-1, 1)])], 4);
        assert_eq!(basis.basis(), &[int_vec(&[1, 1, 1, -3])]);
    }

    #[test]
    fn saturation_of_integer_line() {
        let basis = saturated_lattice_basis(&[qv(&[(1, 1), (1, 1), (-1, 1), (-1, 1)])], 4);
        assert_eq!(basis.basis(), &[int_vec(&[1, 1, -1, -1])]);
        // brute force: integer points of the span inside [-3,3]^4 are exactly
        // the integer multiples of the basis vector
        for m in -3i64..=3 {
            let point = qv(&[(m, 1), (m, 1), (-m, 1), (-m, 1)]);
            let coords = basis.coordinates_of(&point).unwrap();
            assert!(coords.iter().all(Rational::is_integer));
        }
    }

    #[test]
    fn saturation_full_dimensional() {
        let basis = saturated_lattice_basis(&[e_vector(0, 2), e_vector(1, 2)], 2);
        assert_eq!(basis.basis(), &[int_vec(&[1, 0]), int_vec(&[0, 1])]);
    }

    #[test]
    fn empty_input_gives_rank_zero() {
        let basis = saturated_lattice_basis(&[], 3);
        assert_eq!(basis.rank(), 0);
        let zero = QVector::zeros(3);
        let basis2 = saturated_lattice_basis(&[zero], 3);
        assert_eq!(basis2.rank(), 0);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf_rows(vec![int_vec(&[-1, 1, 0]), int_vec(&[-1, 0, 1])]);
        let b = hnf_rows(vec![int_vec(&[0, 1, -1]), int_vec(&[1, 0, -1]), int_vec(&[1, -1, 0])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![int_vec(&[1, 0, -1]), int_vec(&[0, 1, -1])]);
    }

    #[test]
    fn integer_kernel_of_sum() {
        let ker = integer_kernel(&[int_vec(&[1, 1, 1])], 3);
        assert_eq!(hnf_rows(ker), vec![int_vec(&[1, 0, -1]), int_vec(&[0, 1, -1])]);
    }

    #[test]
    fn integer_solve() {
        // x + y = 3 has integer solutions; 2x + 2y = 3 does not
        let sol = solve_integer(&[int_vec(&[1, 1])], &[rational(3, 1)]).unwrap();
        assert_eq!(&sol[0] + &sol[1], Int::from(3));
        assert!(solve_integer(&[int_vec(&[2, 2])], &[rational(3, 1)]).is_none());
        assert!(solve_integer(&[int_vec(&[1, 1])], &[rational(1, 2)]).is_none());
        // inconsistent over Q
        assert!(solve_integer(
            &[int_vec(&[1, 0]), int_vec(&[1, 0])],
            &[rational(0, 1), rational(1, 1)]
        )
        .is_none());
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(
            primitive_integer(&[rational(1, 3), rational(1, 3), rational(1, 3), rational(-1, 1)]),
            int_vec(&[1, 1, 1, -3])
        );
        assert_eq!(primitive_integer(&[rational(2, 1), rational(4, 1)]), int_vec(&[1, 2]));
        assert_eq!(primitive_integer(&[rational(0, 1)]), int_vec(&[0]));
    }
}
