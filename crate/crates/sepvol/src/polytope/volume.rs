//! Volume machinery: fan triangulation, volumes measured in a fixed
//! orthogonal frame of the affine span (so every quantity stays rational),
//! the induced affine lattice, relative volume, and lattice-point counts of
//! half-open parallelepipeds.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    gauss, saturated_lattice_basis, solve_integer, Int, IntLatticeBasis, QVector, Rational,
};

use super::{convex_hull, Polytope};

/// Volume of a polytope measured against a fixed orthogonal (not
/// orthonormal) frame of its affine span. `units` is the exact volume in
/// frame units; the squared Euclidean volume is `units^2 * prod |u_i|^2`,
/// which is rational even though the Euclidean volume itself need not be.
/// Ratios of `units` over the same span are genuine volume ratios.
#[derive(Clone, Debug)]
pub struct SpanVolume {
    frame: Vec<QVector>,
    units: Rational,
}

impl SpanVolume {
    pub fn frame(&self) -> &[QVector] {
        &self.frame
    }

    pub fn units(&self) -> &Rational {
        &self.units
    }

    /// Exact squared Euclidean d-volume.
    pub fn squared_euclidean(&self) -> Rational {
        let mut sq = &self.units * &self.units;
        for u in &self.frame {
            sq *= u.dot(u);
        }
        sq
    }

    /// Coordinates of a span vector in the frame.
    fn coords(&self, w: &QVector) -> Vec<Rational> {
        let cs: Vec<Rational> = self.frame.iter().map(|u| w.dot(u) / u.dot(u)).collect();
        debug_assert_eq!(
            {
                let mut rebuilt = QVector::zeros(w.dim());
                for (c, u) in cs.iter().zip(&self.frame) {
                    rebuilt = &rebuilt + &u.scale(c);
                }
                rebuilt
            },
            *w,
            "vector outside the span"
        );
        cs
    }
}

/// Gram-Schmidt without normalization: an orthogonal rational basis.
fn orthogonal_frame(direction_basis: &[QVector]) -> Vec<QVector> {
    let mut frame: Vec<QVector> = Vec::with_capacity(direction_basis.len());
    for v in direction_basis {
        let mut u = v.clone();
        for w in &frame {
            let c = u.dot(w) / w.dot(w);
            u = &u - &w.scale(&c);
        }
        assert!(!u.is_zero(), "direction basis must be independent");
        frame.push(u);
    }
    frame
}

/// Volume by fan triangulation from the lexicographically least vertex over
/// each non-incident facet, recursing on facets as lower-dimensional
/// polytopes. Requires dim >= 1.
pub fn span_volume(p: &Polytope) -> SpanVolume {
    assert!(p.dim() >= 1, "volume of a point is not defined; rvol handles dim 0");
    let sv = SpanVolume { frame: orthogonal_frame(p.direction_basis()), units: Rational::zero() };
    let mut units = Rational::zero();
    let d = p.dim();
    let mut d_factorial = Rational::one();
    for k in 2..=d {
        d_factorial *= Rational::from_integer(Int::from(k as i64));
    }
    for simplex in triangulate(p) {
        let apex = &simplex[0];
        let rows: Vec<Vec<Rational>> =
            simplex[1..].iter().map(|v| sv.coords(&(v - apex))).collect();
        units += gauss::det(rows).abs();
    }
    SpanVolume { units: units / d_factorial, ..sv }
}

/// Fan triangulation: lists of d+1 affinely independent points. A point
/// polytope yields the single 0-simplex.
fn triangulate(p: &Polytope) -> Vec<Vec<QVector>> {
    if p.dim() == 0 {
        return vec![vec![p.vertices()[0].clone()]];
    }
    let apex_index = 0usize; // vertices are lex sorted
    let apex = p.vertices()[apex_index].clone();
    let mut simplices = Vec::new();
    for f in 0..p.facet_count() {
        let incident = p.facet_vertex_indices(f);
        if incident.binary_search(&apex_index).is_ok() {
            continue;
        }
        let facet_points: Vec<QVector> =
            incident.iter().map(|&v| p.vertices()[v].clone()).collect();
        let facet = convex_hull(&facet_points).expect("facet hull");
        debug_assert_eq!(facet.dim() + 1, p.dim());
        for sub in triangulate(&facet) {
            let mut simplex = Vec::with_capacity(sub.len() + 1);
            simplex.push(apex.clone());
            simplex.extend(sub);
            simplices.push(simplex);
        }
    }
    simplices
}

/// The integer lattice induced on a polytope's affine span: an anchor
/// lattice point of the span plus a saturated basis of the direction space.
#[derive(Clone, Debug)]
pub struct AffineLattice {
    pub anchor: QVector,
    pub basis: IntLatticeBasis,
}

/// Errors when the affine span contains no lattice point.
pub fn affine_lattice(p: &Polytope) -> Result<AffineLattice> {
    let n = p.ambient_dim();
    let eq = p.hrep().equalities();
    let rows: Vec<Vec<Int>> = eq
        .iter()
        .map(|(normal, _)| normal.coords().iter().map(|x| x.to_integer()).collect())
        .collect();
    let rhs: Vec<Rational> = eq.iter().map(|(_, b)| b.clone()).collect();
    let anchor = solve_integer(&rows, &rhs).ok_or(Error::NoLatticePoint)?;
    Ok(AffineLattice {
        anchor: QVector::new(anchor.into_iter().map(Rational::from_integer).collect()),
        basis: saturated_lattice_basis(p.direction_basis(), n),
    })
}

/// Relative volume: Euclidean volume normalized by the fundamental cell of
/// the lattice induced on the affine span. A point has relative volume 1.
pub fn rvol(p: &Polytope) -> Result<Rational> {
    if p.dim() == 0 {
        return if p.vertices()[0].is_integral() {
            Ok(Rational::one())
        } else {
            Err(Error::NoLatticePoint)
        };
    }
    let lattice = affine_lattice(p)?;
    let sv = span_volume(p);
    let cell_rows: Vec<Vec<Rational>> =
        lattice.basis.basis_vectors().iter().map(|b| sv.coords(b)).collect();
    let cell = gauss::det(cell_rows).abs();
    debug_assert!(cell.is_positive());
    Ok(sv.units() / cell)
}

/// Number of integer points in the half-open parallelepiped
/// { sum λ_i v_i : 0 <= λ_i < 1 } spanned by independent integer vectors.
pub fn parallelepiped_lattice_count(vectors: &[QVector]) -> Result<u64> {
    if vectors.is_empty() {
        return Err(Error::InvalidInput("parallelepiped needs at least one vector".into()));
    }
    let n = vectors[0].dim();
    if vectors.iter().any(|v| !v.is_integral()) {
        return Err(Error::InvalidInput("parallelepiped vectors must be integral".into()));
    }
    let k = vectors.len();
    let lattice = saturated_lattice_basis(vectors, n);
    if lattice.rank() != k {
        return Err(Error::InvalidInput("parallelepiped vectors must be independent".into()));
    }
    // Integer coordinates of the spanning vectors in the saturated basis;
    // every lattice point of the parallelepiped lives in that basis too.
    let coeff: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            let c = lattice.coordinates_of(v).expect("spanning vector lies in its own span");
            debug_assert!(c.iter().all(Rational::is_integer));
            c
        })
        .collect();
    let inverse = gauss::invert(&coeff).expect("independent vectors");
    // m ranges over the (closed) coordinate box of the parallelepiped's
    // corners; each candidate is tested exactly via λ = m C^{-1}.
    let mut lo = vec![Int::zero(); k];
    let mut hi = vec![Int::zero(); k];
    for j in 0..k {
        for row in &coeff {
            let e = row[j].to_integer();
            if e.is_negative() {
                lo[j] += e;
            } else {
                hi[j] += e;
            }
        }
    }
    let mut count = 0u64;
    let mut m = lo.clone();
    'outer: loop {
        let lambdas: Vec<Rational> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| Rational::from_integer(m[j].clone()) * &inverse[j][i])
                    .sum::<Rational>()
            })
            .collect();
        if lambdas.iter().all(|l| !l.is_negative() && l < &Rational::one()) {
            count += 1;
        }
        // odometer over the box
        for j in 0..k {
            m[j] += 1;
            if m[j] <= hi[j] {
                continue 'outer;
            }
            m[j] = lo[j].clone();
        }
        break;
    }
    Ok(count)
}
