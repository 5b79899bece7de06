//! Exact convex-hull geometry: V- to H-representation conversion, vertex
//! extraction, facet adjacency, membership, triangulation volume, and
//! lattice-normalized (relative) volume.

mod hull;
mod volume;

pub use hull::convex_hull;
pub use volume::{
    affine_lattice, parallelepiped_lattice_count, rvol, span_volume, AffineLattice, SpanVolume,
};

use num_traits::{Signed, Zero};
use serde_json::json;

use crate::linalg::{format_rational, gauss, primitive_integer, QVector, Rational};

/// Halfspace description of a polytope.
///
/// Equalities pin the affine hull exactly. Each inequality `normal · x <= rhs`
/// is facet-defining and canonicalized: the normal is the unique
/// representative of its class modulo the equality span that is orthogonal
/// to every equality normal, scaled to a primitive integer vector.
/// Equalities are the reduced echelon basis of the equality space, scaled
/// primitive with positive leading entry. Both lists are sorted, so equal
/// point sets produced by the hull have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    ambient_dim: usize,
    equalities: Vec<(QVector, Rational)>,
    inequalities: Vec<(QVector, Rational)>,
}

impl HPolytope {
    pub fn new(
        ambient_dim: usize,
        equalities: Vec<(QVector, Rational)>,
        inequalities: Vec<(QVector, Rational)>,
    ) -> Self {
        for (n, _) in equalities.iter().chain(&inequalities) {
            assert_eq!(n.dim(), ambient_dim, "constraint dimension mismatch");
        }
        HPolytope { ambient_dim, equalities, inequalities }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn equalities(&self) -> &[(QVector, Rational)] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[(QVector, Rational)] {
        &self.inequalities
    }

    /// Exact membership: all equalities hold, all inequalities hold weakly.
    pub fn contains(&self, x: &QVector) -> bool {
        assert_eq!(x.dim(), self.ambient_dim, "point dimension mismatch");
        self.equalities.iter().all(|(n, b)| &n.dot(x) == b)
            && self.inequalities.iter().all(|(n, b)| &n.dot(x) <= b)
    }

    /// Strict membership in the relative interior: equalities hold, every
    /// inequality is strict.
    pub fn contains_relative_interior(&self, x: &QVector) -> bool {
        assert_eq!(x.dim(), self.ambient_dim, "point dimension mismatch");
        self.equalities.iter().all(|(n, b)| &n.dot(x) == b)
            && self.inequalities.iter().all(|(n, b)| &n.dot(x) < b)
    }

    /// The dilate tP: same normals, right-hand sides scaled by t.
    pub fn scaled(&self, t: &Rational) -> HPolytope {
        assert!(t.is_positive(), "dilation factor must be positive");
        HPolytope {
            ambient_dim: self.ambient_dim,
            equalities: self.equalities.iter().map(|(n, b)| (n.clone(), b * t)).collect(),
            inequalities: self.inequalities.iter().map(|(n, b)| (n.clone(), b * t)).collect(),
        }
    }

    /// Canonical form of a valid inequality `normal · x <= SEP rhs` modulo the
    /// equality span: the normal is replaced by its orthogonal projection
    /// onto the complement of the equality space, then scaled primitive.
    /// Two inequalities that agree on the affine hull map to the same pair.
    pub fn canonical_inequality(&self, normal: &QVector, rhs: &Rational) -> (QVector, Rational) {
        canonicalize_inequality(&self.equalities, normal, rhs)
    }
}

/// Project `normal` orthogonally to the span of the equality normals and
/// adjust the right-hand side so the constraint is unchanged on the affine
/// hull, then scale to a primitive integer normal. `equalities` must be
/// consistent (the affine hull nonempty).
fn canonicalize_inequality(
    equalities: &[(QVector, Rational)],
    normal: &QVector,
    rhs: &Rational,
) -> (QVector, Rational) {
    let mut a = normal.clone();
    let mut b = rhs.clone();
    if !equalities.is_empty() {
        // Gram-Schmidt over the equality normals; project the normal off.
        let mut ortho: Vec<QVector> = Vec::with_capacity(equalities.len());
        let mut ortho_rhs: Vec<Rational> = Vec::with_capacity(equalities.len());
        for (n, r) in equalities {
            let mut u = n.clone();
            let mut ur = r.clone();
            for (v, vr) in ortho.iter().zip(&ortho_rhs) {
                let c = u.dot(v) / v.dot(v);
                u = &u - &v.scale(&c);
                ur -= &c * vr;
            }
            if !u.is_zero() {
                ortho_rhs.push(ur);
                ortho.push(u);
            }
        }
        for (u, ur) in ortho.iter().zip(&ortho_rhs) {
            let c = a.dot(u) / u.dot(u);
            a = &a - &u.scale(&c);
            // subtracting c*u from the normal subtracts c*(u·x) = c*ur on the hull
            b -= &c * ur;
        }
    }
    let ints = primitive_integer(a.coords());
    // the scale factor relating a to its primitive form applies to rhs too
    let scale = ints
        .iter()
        .zip(a.coords())
        .find(|(_, orig)| !orig.is_zero())
        .map(|(p, orig)| Rational::from_integer(p.clone()) / orig)
        .unwrap_or_else(num_traits::One::one);
    debug_assert!(scale.is_positive());
    (
        QVector::new(ints.into_iter().map(Rational::from_integer).collect()),
        b * scale,
    )
}

/// Bounded convex polytope carrying both representations plus the
/// facet-vertex incidence computed by the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    dim: usize,
    /// Extreme points, lexicographically sorted.
    vertices: Vec<QVector>,
    hrep: HPolytope,
    /// For each inequality (same order), the sorted vertex indices on it.
    facet_vertices: Vec<Vec<usize>>,
    /// Canonical rational basis of the direction space of the affine hull.
    direction_basis: Vec<QVector>,
}

impl Polytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull; a single point has dimension 0.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn hrep(&self) -> &HPolytope {
        &self.hrep
    }

    pub fn facet_count(&self) -> usize {
        self.hrep.inequalities.len()
    }

    pub fn facet_vertex_indices(&self, facet: usize) -> &[usize] {
        &self.facet_vertices[facet]
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.hrep.contains(x)
    }

    pub(crate) fn direction_basis(&self) -> &[QVector] {
        &self.direction_basis
    }

    /// Facets are adjacent when their shared vertices span a face of
    /// dimension exactly dim - 2 (a ridge). A facet is not adjacent to
    /// itself.
    pub fn facets_adjacent(&self, f1: usize, f2: usize) -> bool {
        if f1 == f2 || self.dim < 2 {
            return false;
        }
        let a = &self.facet_vertices[f1];
        let b = &self.facet_vertices[f2];
        let shared: Vec<&QVector> = a
            .iter()
            .filter(|i| b.binary_search(i).is_ok())
            .map(|&i| &self.vertices[i])
            .collect();
        let Some(first) = shared.first() else {
            return false;
        };
        let diffs: Vec<Vec<Rational>> =
            shared[1..].iter().map(|v| (*v - first).into_coords()).collect();
        gauss::rank(&diffs) == self.dim - 2
    }

    /// Canonical JSON form: rationals as `p/q` strings, everything in the
    /// sorted order fixed by the hull. Byte-stable across runs.
    pub fn to_json(&self) -> serde_json::Value {
        let vec_strings =
            |v: &QVector| -> Vec<String> { v.coords().iter().map(format_rational).collect() };
        let constraints = |list: &[(QVector, Rational)]| -> Vec<serde_json::Value> {
            list.iter()
                .map(|(n, b)| json!({"normal": vec_strings(n), "rhs": format_rational(b)}))
                .collect()
        };
        json!({
            "ambient": self.ambient_dim,
            "vertices": self.vertices.iter().map(vec_strings).collect::<Vec<_>>(),
            "equalities": constraints(&self.hrep.equalities),
            "inequalities": constraints(&self.hrep.inequalities),
        })
    }

    pub(crate) fn from_parts(
        ambient_dim: usize,
        dim: usize,
        vertices: Vec<QVector>,
        hrep: HPolytope,
        facet_vertices: Vec<Vec<usize>>,
        direction_basis: Vec<QVector>,
    ) -> Self {
        Polytope { ambient_dim, dim, vertices, hrep, facet_vertices, direction_basis }
    }
}
