//! Incremental beneath-beyond convex hull with exact rational pivoting.
//!
//! The hull is computed inside the affine hull of the input: after an
//! initial rank computation the points are projected onto the pivot
//! coordinates of the direction space (a linear isomorphism of the affine
//! hull onto R^d, so faces are preserved), a simplicial boundary complex is
//! grown by inserting points in lexicographic order, and coplanar boundary
//! simplices are merged into true facets at the end. Exact arithmetic makes
//! the coplanarity and visibility tests decisions, not estimates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{gauss, primitive_integer, Int, QVector, Rational};

use super::{canonicalize_inequality, HPolytope, Polytope};

struct SimplicialFacet {
    /// Sorted point indices; always d affinely independent points.
    verts: Vec<usize>,
    normal: Vec<Rational>,
    rhs: Rational,
}

/// Convex hull of a nonempty point set: exact vertices and a facet-defining,
/// irredundant halfspace description, both canonically ordered.
pub fn convex_hull(points: &[QVector]) -> Result<Polytope> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("convex hull of an empty point set".into()));
    };
    let n = first.dim();
    if points.iter().any(|p| p.dim() != n) {
        return Err(Error::InvalidInput("points of mixed ambient dimension".into()));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();

    let base = pts[0].clone();
    let diffs: Vec<Vec<Rational>> = pts[1..].iter().map(|p| (p - &base).into_coords()).collect();
    let reduced = gauss::rref(diffs);
    let d = reduced.rank();
    let direction_basis: Vec<QVector> =
        reduced.rows[..d].iter().map(|r| QVector::new(r.clone())).collect();
    let pivot_cols = reduced.pivots.clone();

    // Affine hull equations: reduced echelon basis of the orthogonal
    // complement of the direction space, scaled primitive.
    let equalities: Vec<(QVector, Rational)> = {
        let dir_rows: Vec<Vec<Rational>> =
            direction_basis.iter().map(|v| v.coords().to_vec()).collect();
        let complement = gauss::kernel_basis(&dir_rows, n);
        let canon = gauss::rref(complement);
        canon.rows[..n - d]
            .iter()
            .map(|w| {
                let normal = QVector::new(
                    primitive_integer(w).into_iter().map(Rational::from_integer).collect(),
                );
                let rhs = normal.dot(&base);
                (normal, rhs)
            })
            .collect()
    };

    if d == 0 {
        let hrep = HPolytope::new(n, equalities, Vec::new());
        return Ok(Polytope::from_parts(n, 0, vec![base], hrep, Vec::new(), Vec::new()));
    }

    // Work in the projected coordinates.
    let proj: Vec<Vec<Rational>> = pts
        .iter()
        .map(|p| pivot_cols.iter().map(|&j| p.get(j).clone()).collect())
        .collect();

    // Initial simplex: first d+1 affinely independent points in lex order.
    let mut simplex = vec![0usize];
    let mut span_rows: Vec<Vec<Rational>> = Vec::new();
    for i in 1..proj.len() {
        if simplex.len() == d + 1 {
            break;
        }
        let mut candidate = span_rows.clone();
        candidate.push(sub(&proj[i], &proj[0]));
        if gauss::rank(&candidate) > span_rows.len() {
            span_rows = candidate;
            simplex.push(i);
        }
    }
    debug_assert_eq!(simplex.len(), d + 1);

    // Interior reference point for orienting facet normals.
    let centroid: Vec<Rational> = {
        let k = Rational::new(Int::from(simplex.len() as i64), Int::from(1));
        (0..d)
            .map(|c| simplex.iter().map(|&i| proj[i][c].clone()).sum::<Rational>() / &k)
            .collect()
    };

    let mut facets: Vec<SimplicialFacet> = Vec::new();
    for omit in 0..simplex.len() {
        let verts: Vec<usize> =
            simplex.iter().enumerate().filter(|&(k, _)| k != omit).map(|(_, &v)| v).collect();
        facets.push(oriented_facet(verts, &proj, &centroid, d));
    }

    let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
    for i in 0..pts.len() {
        if in_simplex.contains(&i) {
            continue;
        }
        let visible: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| dot(&f.normal, &proj[i]) > f.rhs)
            .map(|(k, _)| k)
            .collect();
        if visible.is_empty() {
            continue; // already inside the current hull
        }
        // Horizon ridges occur exactly once among the visible facets; their
        // other side is an invisible facet.
        let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for &fi in &visible {
            for omit in 0..facets[fi].verts.len() {
                let mut ridge = facets[fi].verts.clone();
                ridge.remove(omit);
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        let horizon: Vec<Vec<usize>> =
            ridge_count.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r).collect();
        debug_assert!(!horizon.is_empty());

        let visible_set: BTreeSet<usize> = visible.into_iter().collect();
        let mut kept: Vec<SimplicialFacet> = Vec::with_capacity(facets.len());
        for (k, f) in facets.into_iter().enumerate() {
            if !visible_set.contains(&k) {
                kept.push(f);
            }
        }
        facets = kept;
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(i);
            verts.sort_unstable();
            facets.push(oriented_facet(verts, &proj, &centroid, d));
        }
    }

    // Merge boundary simplices sharing a supporting hyperplane. The key is
    // the primitive integer scaling of (normal, rhs), which preserves
    // orientation.
    let mut merged: BTreeMap<(Vec<Int>, Rational), ()> = BTreeMap::new();
    for f in &facets {
        merged.insert(canonical_halfspace(&f.normal, &f.rhs), ());
    }
    let hyperplanes: Vec<(Vec<Rational>, Rational)> = merged
        .into_keys()
        .map(|(ints, rhs)| (ints.into_iter().map(Rational::from_integer).collect(), rhs))
        .collect();

    // A point is a vertex exactly when its active facet normals span the
    // full projected space.
    let mut vertex_ids: Vec<usize> = Vec::new();
    for (i, q) in proj.iter().enumerate() {
        let active: Vec<Vec<Rational>> = hyperplanes
            .iter()
            .filter(|(normal, rhs)| &dot(normal, q) == rhs)
            .map(|(normal, _)| normal.clone())
            .collect();
        if active.len() >= d && gauss::rank(&active) == d {
            vertex_ids.push(i);
        }
    }
    let vertices: Vec<QVector> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();

    // Facet incidences, ambient pullback, canonical ordering.
    let mut facet_data: Vec<(QVector, Rational, Vec<usize>)> = hyperplanes
        .into_iter()
        .map(|(normal, rhs)| {
            let incident: Vec<usize> = vertex_ids
                .iter()
                .enumerate()
                .filter(|&(_, &p)| dot(&normal, &proj[p]) == rhs)
                .map(|(v, _)| v)
                .collect();
            debug_assert!(incident.len() >= d, "facet with too few vertices");
            let mut ambient = vec![Rational::zero(); n];
            for (k, &j) in pivot_cols.iter().enumerate() {
                ambient[j] = normal[k].clone();
            }
            let (cn, cb) = canonicalize_inequality(&equalities, &QVector::new(ambient), &rhs);
            (cn, cb, incident)
        })
        .collect();
    facet_data.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));

    let inequalities: Vec<(QVector, Rational)> =
        facet_data.iter().map(|(n, b, _)| (n.clone(), b.clone())).collect();
    let facet_vertices: Vec<Vec<usize>> =
        facet_data.into_iter().map(|(_, _, verts)| verts).collect();

    let hrep = HPolytope::new(n, equalities, inequalities);
    debug_assert!(vertices.iter().all(|v| hrep.contains(v)));
    Ok(Polytope::from_parts(n, d, vertices, hrep, facet_vertices, direction_basis))
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Primitive integer scaling of (normal, rhs) by a positive rational.
fn canonical_halfspace(normal: &[Rational], rhs: &Rational) -> (Vec<Int>, Rational) {
    let ints = primitive_integer(normal);
    let scale = ints
        .iter()
        .zip(normal)
        .find(|(_, orig)| !orig.is_zero())
        .map(|(p, orig)| Rational::from_integer(p.clone()) / orig)
        .expect("facet normal is nonzero");
    (ints, rhs * scale)
}

/// Hyperplane through the d points, oriented so the reference interior
/// point satisfies normal . x < rhs.
fn oriented_facet(
    verts: Vec<usize>,
    proj: &[Vec<Rational>],
    interior: &[Rational],
    d: usize,
) -> SimplicialFacet {
    debug_assert_eq!(verts.len(), d);
    let rows: Vec<Vec<Rational>> =
        verts[1..].iter().map(|&v| sub(&proj[v], &proj[verts[0]])).collect();
    let kernel = gauss::kernel_basis(&rows, d);
    assert_eq!(kernel.len(), 1, "facet points must span a hyperplane");
    let mut normal = kernel.into_iter().next().unwrap();
    let mut rhs = dot(&normal, &proj[verts[0]]);
    let at_interior = dot(&normal, interior);
    assert_ne!(at_interior, rhs, "interior reference point on a facet hyperplane");
    if at_interior > rhs {
        normal = normal.iter().map(|x| -x).collect();
        rhs = -rhs;
    }
    SimplicialFacet { verts, normal, rhs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{e_set_vector, e_vector, rational};
    use num_traits::One;
    use proptest::prelude::*;

    fn qv(coords: &[(i64, i64)]) -> QVector {
        QVector::new(coords.iter().map(|&(p, q)| rational(p, q)).collect())
    }

    /// Generators of the symmetric edge polytope of the complete graph K_3.
    fn k3_generators() -> Vec<QVector> {
        let mut gens = Vec::new();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let v = &e_vector(i, 3) - &e_vector(j, 3);
            gens.push(v.clone());
            gens.push(-&v);
        }
        gens
    }

    #[test]
    fn hexagon_from_k3_generators() {
        let p = convex_hull(&k3_generators()).unwrap();
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.hrep().equalities().len(), 1);
        assert_eq!(p.hrep().equalities()[0], (QVector::from_ints(&[1, 1, 1]), rational(0, 1)));
        assert_eq!(p.facet_count(), 6);
    }

    #[test]
    fn redundant_generator_is_dropped() {
        let p = convex_hull(&[
            qv(&[(0, 1), (0, 1)]),
            qv(&[(1, 1), (0, 1)]),
            qv(&[(0, 1), (1, 1)]),
            qv(&[(1, 4), (1, 4)]),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn segment() {
        let p = convex_hull(&[qv(&[(1, 1), (-1, 1)]), qv(&[(-1, 1), (1, 1)])]).unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.facet_count(), 2);
    }

    #[test]
    fn single_point() {
        let p = convex_hull(&[qv(&[(1, 2), (3, 1)])]).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.vertices().len(), 1);
        assert_eq!(p.hrep().equalities().len(), 2);
        assert_eq!(p.facet_count(), 0);
        assert!(p.contains(&qv(&[(1, 2), (3, 1)])));
        assert!(!p.contains(&qv(&[(1, 2), (2, 1)])));
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(convex_hull(&[]).is_err());
    }

    #[test]
    fn membership_examples() {
        let p = convex_hull(&k3_generators()).unwrap();
        assert!(p.contains(&QVector::zeros(3)));
        assert!(p.contains(&QVector::from_ints(&[1, 0, -1])));
        assert!(!p.contains(&QVector::from_ints(&[2, -2, 0])));
        // off the affine hull
        assert!(!p.contains(&QVector::from_ints(&[1, 0, 0])));
    }

    #[test]
    fn facet_adjacency_on_the_hexagon() {
        let p = convex_hull(&k3_generators()).unwrap();
        let find = |subset: &[usize]| -> usize {
            let (n, b) = p
                .hrep()
                .canonical_inequality(&e_set_vector(subset.iter().copied(), 3), &Rational::one());
            p.hrep().inequalities().iter().position(|c| c == &(n.clone(), b.clone())).unwrap()
        };
        let f1 = find(&[0]);
        let f12 = find(&[0, 1]);
        let f23 = find(&[1, 2]);
        assert!(p.facets_adjacent(f1, f12));
        assert!(!p.facets_adjacent(f1, f23));
        assert!(!p.facets_adjacent(f1, f1));
    }

    #[test]
    fn all_facet_labels_of_the_hexagon_are_subset_indicators() {
        let p = convex_hull(&k3_generators()).unwrap();
        let mut expected: Vec<(QVector, Rational)> = Vec::new();
        for s in [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]] {
            expected.push(
                p.hrep().canonical_inequality(&e_set_vector(s.into_iter(), 3), &Rational::one()),
            );
        }
        expected.sort();
        assert_eq!(p.hrep().inequalities(), &expected[..]);
    }

    #[test]
    fn golden_json_for_the_hexagon() {
        let p = convex_hull(&k3_generators()).unwrap();
        let expected = serde_json::json!({
            "ambient": 3,
            "vertices": [
                ["-1", "0", "1"], ["-1", "1", "0"], ["0", "-1", "1"],
                ["0", "1", "-1"], ["1", "-1", "0"], ["1", "0", "-1"],
            ],
            "equalities": [ {"normal": ["1", "1", "1"], "rhs": "0"} ],
            "inequalities": [
                {"normal": ["-2", "1", "1"], "rhs": "3"},
                {"normal": ["-1", "-1", "2"], "rhs": "3"},
                {"normal": ["-1", "2", "-1"], "rhs": "3"},
                {"normal": ["1", "-2", "1"], "rhs": "3"},
                {"normal": ["1", "1", "-2"], "rhs": "3"},
                {"normal": ["2", "-1", "-1"], "rhs": "3"},
            ],
        });
        assert_eq!(p.to_json(), expected);
    }

    /// Exact phase-1 simplex with Bland's rule: is x a convex combination of
    /// the given points? Independent of the hull construction.
    fn in_convex_hull(x: &QVector, points: &[QVector]) -> bool {
        let m = x.dim() + 1; // coordinates plus the convex-combination row
        let k = points.len();
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        for c in 0..x.dim() {
            let mut row: Vec<Rational> = points.iter().map(|p| p.get(c).clone()).collect();
            row.push(x.get(c).clone());
            rows.push(row);
        }
        let mut ones_row = vec![Rational::one(); k];
        ones_row.push(Rational::one());
        rows.push(ones_row);
        // make right-hand sides nonnegative
        for row in rows.iter_mut() {
            if row[k] < Rational::zero() {
                for entry in row.iter_mut() {
                    *entry = -&*entry;
                }
            }
        }
        // tableau with artificial basis; objective = sum of artificials
        let total = k + m;
        let mut tableau: Vec<Vec<Rational>> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut t: Vec<Rational> = row[..k].to_vec();
                for j in 0..m {
                    t.push(if i == j { Rational::one() } else { Rational::zero() });
                }
                t.push(row[k].clone());
                t
            })
            .collect();
        let mut basis: Vec<usize> = (k..k + m).collect();
        let mut iterations = 0usize;
        loop {
            iterations += 1;
            assert!(iterations < 100_000, "phase-1 simplex failed to terminate");
            // Reduced cost of a candidate column: how much the artificial
            // total drops per unit. Artificials never re-enter, and Bland's
            // smallest-index rule prevents cycling.
            let reduced = |j: usize| -> Rational {
                (0..m).filter(|&i| basis[i] >= k).map(|i| tableau[i][j].clone()).sum()
            };
            let Some(enter) =
                (0..k).find(|&j| !basis.contains(&j) && reduced(j) > Rational::zero())
            else {
                break;
            };
            let mut leave: Option<usize> = None;
            for i in 0..m {
                if tableau[i][enter] <= Rational::zero() {
                    continue;
                }
                let ratio = &tableau[i][total] / &tableau[i][enter];
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let best = &tableau[l][total] / &tableau[l][enter];
                        ratio < best || (ratio == best && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            let Some(leave) = leave else {
                break; // unbounded cannot happen in phase 1
            };
            let pivot = tableau[leave][enter].clone();
            for entry in tableau[leave].iter_mut() {
                *entry = &*entry / &pivot;
            }
            for i in 0..m {
                if i == leave || tableau[i][enter].is_zero() {
                    continue;
                }
                let factor = tableau[i][enter].clone();
                for j in 0..=total {
                    let delta = &factor * &tableau[leave][j];
                    tableau[i][j] = &tableau[i][j] - &delta;
                }
            }
            basis[leave] = enter;
        }
        let residual: Rational =
            (0..m).filter(|&i| basis[i] >= k).map(|i| tableau[i][total].clone()).sum();
        residual.is_zero()
    }

    #[test]
    fn lp_oracle_sanity() {
        let square = [qv(&[(0, 1), (0, 1)]), qv(&[(1, 1), (0, 1)]), qv(&[(0, 1), (1, 1)]), qv(&[(1, 1), (1, 1)])];
        assert!(in_convex_hull(&qv(&[(1, 2), (1, 2)]), &square));
        assert!(in_convex_hull(&qv(&[(1, 1), (1, 1)]), &square));
        assert!(!in_convex_hull(&qv(&[(3, 2), (1, 2)]), &square));
        assert!(!in_convex_hull(&qv(&[(-1, 5), (0, 1)]), &square));
    }

    fn small_points(dim: usize) -> impl Strategy<Value = Vec<QVector>> {
        proptest::collection::vec(
            proptest::collection::vec((-2i64..=2, 1i64..=2), dim)
                .prop_map(|cs| QVector::new(cs.into_iter().map(|(p, q)| rational(p, q)).collect())),
            1..=7,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn hull_agrees_with_lp_membership(points in small_points(3), sample in proptest::collection::vec((-2i64..=2, 1i64..=2), 3)) {
            let p = convex_hull(&points).unwrap();
            // every vertex satisfies the halfspace description and is tight
            // on at least dim facets
            for v in p.vertices() {
                prop_assert!(p.contains(v));
                let tight = p.hrep().inequalities().iter().filter(|(n, b)| &n.dot(v) == b).count();
                prop_assert!(tight >= p.dim() || p.dim() == 0);
            }
            // H-membership of an arbitrary rational point agrees with an
            // independent exact LP feasibility check against the input points
            let x = QVector::new(sample.into_iter().map(|(a, b)| rational(a, b)).collect());
            prop_assert_eq!(p.contains(&x), in_convex_hull(&x, &points));
        }

        #[test]
        fn hull_of_vertices_is_idempotent(points in small_points(2)) {
            let p = convex_hull(&points).unwrap();
            let q = convex_hull(p.vertices()).unwrap();
            prop_assert_eq!(p.vertices(), q.vertices());
            prop_assert_eq!(p.hrep(), q.hrep());
        }
    }
}
