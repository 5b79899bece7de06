//! Exact rational scalars, vectors, matrices, and integer-lattice
//! algorithms. Everything downstream builds on this layer; no floating
//! point appears anywhere in the engine.

pub(crate) mod gauss;
mod lattice;

pub use lattice::{saturated_lattice_basis, IntLatticeBasis};
pub(crate) use lattice::{primitive_integer, solve_integer};

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor for small rationals.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(Int::from(numer), Int::from(denom))
}

/// Format a rational as `p/q`, or just `p` when the denominator is 1.
/// This is the wire format for every rational the CLI emits.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Fixed-length vector of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector {
    coords: Vec<Rational>,
}

impl QVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVector { coords }
    }

    pub fn zeros(n: usize) -> Self {
        QVector { coords: vec![Rational::zero(); n] }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        QVector { coords: values.iter().map(|&x| rational(x, 1)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rational::is_integer)
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &Rational) -> QVector {
        QVector { coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        assert_eq!(self.dim(), rhs.dim());
        QVector { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        assert_eq!(self.dim(), rhs.dim());
        QVector { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector { coords: self.coords.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(x))?;
        }
        write!(f, ")")
    }
}

/// Standard basis vector e_i in dimension n (0-based index).
pub fn e_vector(i: usize, n: usize) -> QVector {
    assert!(i < n, "basis index {i} out of range for dimension {n}");
    let mut v = QVector::zeros(n);
    v.coords[i] = rational(1, 1);
    v
}

/// Indicator vector of a vertex subset: the sum of e_i over i in the set.
/// The empty set gives the zero vector; the full set gives all-ones.
pub fn e_set_vector<I: IntoIterator<Item = usize>>(set: I, n: usize) -> QVector {
    let mut v = QVector::zeros(n);
    let mut seen = BTreeSet::new();
    for i in set {
        assert!(i < n, "set element {i} out of range for dimension {n}");
        assert!(seen.insert(i), "repeated set element {i}");
        v.coords[i] = rational(1, 1);
    }
    v
}

/// All-ones vector.
pub fn ones(n: usize) -> QVector {
    e_set_vector(0..n, n)
}

/// Dense rational matrix, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<QVector>,
}

impl QMatrix {
    pub fn from_rows(rows: Vec<QVector>) -> Self {
        if let Some(first) = rows.first() {
            assert!(rows.iter().all(|r| r.dim() == first.dim()), "ragged rows");
        }
        QMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, QVector::dim)
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        gauss::rank(&self.rows.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>())
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &QVector) -> QVector {
        QVector::new(self.rows.iter().map(|r| r.dot(x)).collect())
    }
}

/// Rank of a list of vectors.
pub fn rank_of(vectors: &[QVector]) -> usize {
    gauss::rank(&vectors.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>())
}

/// Gram determinant det(V V^T): the squared Euclidean d-volume of the
/// parallelepiped spanned by the vectors. Zero exactly when the input is
/// linearly dependent. Callers only ever form ratios of these over a shared
/// span, so no square root is ever taken.
pub fn gram_volume_sq(vectors: &[QVector]) -> Rational {
    let k = vectors.len();
    let gram: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| vectors[i].dot(&vectors[j])).collect())
        .collect();
    let d = gauss::det(gram);
    debug_assert!(!d.is_negative(), "Gram determinant must be nonnegative");
    d
}

/// Greatest common divisor of a nonempty list of positive integers.
pub fn gcd_list(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::InvalidInput("gcd of an empty list".into()));
    }
    assert!(values.iter().all(|&v| v > 0), "gcd_list needs positive integers");
    Ok(values.iter().fold(0u64, |acc, &v| num_integer::gcd(acc, v)))
}

/// Least common multiple of a list of positive integers (1 for the empty list).
pub fn lcm_list(values: &[u64]) -> u64 {
    values.iter().fold(1u64, |acc, &v| num_integer::lcm(acc, v))
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> Int {
    assert!(k <= n, "binomial({n}, {k}) out of range");
    num_integer::binomial(Int::from(n), Int::from(k))
}
