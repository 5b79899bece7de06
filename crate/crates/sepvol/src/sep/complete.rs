//! Facet calculus for symmetric edge polytopes of complete graphs: subset
//! facet labels, label adjacency, the halfspace description by subset
//! indicators, block-union labels of fixed subpolytopes, and the census of
//! automorphisms induced by signed coordinate permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;

use crate::combinat::{Graph, Permutation};
use crate::error::{Error, Result};
use crate::linalg::{e_set_vector, ones, QVector, Rational};
use crate::polytope::HPolytope;

use super::{fixed_polytope, sep_build, sep_vertex_set, Census, CensusEntry};

/// A facet of the complete graph's symmetric edge polytope, labeled by the
/// nonempty proper vertex subset S with supporting hyperplane
/// `indicator(S) . x = 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FacetLabel {
    members: BTreeSet<usize>,
    n: usize,
}

impl FacetLabel {
    pub fn new<I: IntoIterator<Item = usize>>(members: I, n: usize) -> FacetLabel {
        let members: BTreeSet<usize> = members.into_iter().collect();
        assert!(!members.is_empty() && members.len() < n, "label must be nonempty and proper");
        assert!(members.iter().all(|&v| v < n), "label member out of range");
        FacetLabel { members, n }
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // labels are nonempty by construction
    }

    pub fn complement(&self) -> FacetLabel {
        FacetLabel::new((0..self.n).filter(|v| !self.members.contains(v)), self.n)
    }

    /// The subset indicator vector, the facet's supporting normal.
    pub fn normal(&self) -> QVector {
        e_set_vector(self.members.iter().copied(), self.n)
    }

    pub fn symmetric_difference_size(&self, other: &FacetLabel) -> usize {
        assert_eq!(self.n, other.n);
        self.members.symmetric_difference(&other.members).count()
    }
}

impl fmt::Display for FacetLabel {
    /// 1-based set notation, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FacetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn all_proper_subsets(n: usize) -> Vec<FacetLabel> {
    let mut labels = Vec::with_capacity((1usize << n) - 2);
    for mask in 1..(1u32 << n) - 1 {
        labels.push(FacetLabel::new((0..n).filter(|v| mask & (1 << v) != 0), n));
    }
    labels.sort();
    labels
}

/// The 2^n - 2 facet labels of the complete graph's symmetric edge
/// polytope, verified against the geometric halfspace description: each
/// label's inequality `indicator(S) . x <= 1` matches exactly one computed
/// facet, and the counts agree. Needs n >= 3 (the segment for n = 2 has
/// degenerate facet structure).
pub fn facet_labels(n: usize) -> Result<Vec<FacetLabel>> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "facet labels need n >= 3, got {n}; the n = 2 segment is handled separately"
        )));
    }
    let labels = all_proper_subsets(n);
    let sep = sep_build(&Graph::complete(n))?;
    let hrep = sep.poly().hrep();
    assert_eq!(
        hrep.inequalities().len(),
        labels.len(),
        "complete graph must have 2^n - 2 facets"
    );
    let mut seen = BTreeSet::new();
    for label in &labels {
        let key = hrep.canonical_inequality(&label.normal(), &Rational::one());
        let position = hrep
            .inequalities()
            .iter()
            .position(|c| *c == key)
            .expect("label inequality must be a facet of the hull");
        assert!(seen.insert(position), "two labels matched the same facet");
    }
    Ok(labels)
}

/// Label adjacency: facets of the complete graph's polytope are adjacent
/// exactly when their labels differ in one element.
pub fn labels_adjacent(a: &FacetLabel, b: &FacetLabel) -> bool {
    a != b && a.symmetric_difference_size(b) == 1
}

/// The 2^m - 2 facet labels of the fixed subpolytope under sigma with m
/// blocks: the nonempty proper unions of blocks. Verified geometrically:
/// the fixed polytope has exactly 2^m - 2 facets and each label's
/// hyperplane meets it in exactly one of them.
pub fn fixed_facet_labels(n: usize, sigma: &Permutation) -> Result<Vec<FacetLabel>> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("fixed facet labels need n >= 3, got {n}")));
    }
    assert_eq!(sigma.n(), n);
    let blocks = sigma.cycle_blocks();
    let m = blocks.block_count();
    if m < 2 {
        return Err(Error::InvalidInput(
            "a single block fixes only the origin, which has no facets".into(),
        ));
    }
    let mut labels = Vec::with_capacity((1usize << m) - 2);
    for mask in 1..(1u32 << m) - 1 {
        let members = (0..m)
            .filter(|k| mask & (1 << k) != 0)
            .flat_map(|k| blocks.block(k).iter().copied());
        labels.push(FacetLabel::new(members, n));
    }
    labels.sort();

    let sep = sep_build(&Graph::complete(n))?;
    let fixed = fixed_polytope(&sep, sigma)?;
    let poly = fixed.poly();
    assert_eq!(
        poly.facet_count(),
        labels.len(),
        "fixed subpolytope must have 2^m - 2 facets"
    );
    let mut matched = BTreeSet::new();
    for label in &labels {
        let normal = label.normal();
        let on_hyperplane: Vec<usize> = poly
            .vertices()
            .iter()
            .enumerate()
            .filter(|(_, v)| normal.dot(v).is_one())
            .map(|(i, _)| i)
            .collect();
        let facet = (0..poly.facet_count())
            .find(|&f| poly.facet_vertex_indices(f) == on_hyperplane.as_slice())
            .expect("label hyperplane must support exactly one facet");
        assert!(matched.insert(facet), "two labels matched the same facet");
    }
    Ok(labels)
}

/// Halfspace description of the complete graph's symmetric edge polytope:
/// sum(x) = 0 together with |indicator(S) . x| <= 1 over nonempty subsets
/// with |S| <= n/2 (one representative per complementary pair when
/// |S| = n/2). Verified to describe the same point set as the computed
/// hull: the hull's vertices satisfy it, and each hull facet inequality is
/// one of its halfspaces modulo the hyperplane.
pub fn h_description(n: usize) -> HPolytope {
    assert!(n >= 2, "halfspace description needs n >= 2");
    let mut inequalities = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        let size = mask.count_ones() as usize;
        if 2 * size > n {
            continue;
        }
        // at half size keep the representative containing vertex 0
        if 2 * size == n && mask & 1 == 0 {
            continue;
        }
        let normal = e_set_vector((0..n).filter(|v| mask & (1 << v) != 0), n);
        inequalities.push((normal.clone(), Rational::one()));
        inequalities.push((-&normal, Rational::one()));
    }
    inequalities.sort();
    let described =
        HPolytope::new(n, vec![(ones(n), Rational::from_integer(0.into()))], inequalities);

    // point-set equality against the hull
    let sep = sep_build(&Graph::complete(n)).expect("complete graph has edges");
    for v in sep.poly().vertices() {
        assert!(described.contains(v), "hull vertex violates the subset description");
    }
    let canonical: BTreeSet<_> = described
        .inequalities()
        .iter()
        .map(|(a, b)| described.canonical_inequality(a, b))
        .collect();
    for facet in sep.poly().hrep().inequalities() {
        assert!(
            canonical.contains(facet),
            "hull facet missing from the subset description"
        );
    }
    described
}

/// Enumerate all signed permutation matrices (coordinate permutation times
/// a global sign) and count the distinct bijections they induce on the
/// vertex set of the complete graph's symmetric edge polytope. For n > 2
/// all 2 n! candidates act distinctly; for n = 2 negation and the swap act
/// identically, which the distinctness check detects.
pub fn automorphism_census(n: usize) -> Result<Census> {
    if !(2..=6).contains(&n) {
        return Err(Error::Unsupported(format!(
            "automorphism census is capped at 2 <= n <= 6, got {n}"
        )));
    }
    let vertices = sep_vertex_set(&Graph::complete(n));
    let index: BTreeMap<&QVector, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut distinct: BTreeMap<Vec<usize>, CensusEntry> = BTreeMap::new();
    for sigma in Permutation::all(n) {
        for negated in [false, true] {
            let mut map = Vec::with_capacity(vertices.len());
            for v in &vertices {
                let mut image = sigma.act_vector(v);
                if negated {
                    image = -&image;
                }
                let target = index
                    .get(&image)
                    .expect("signed permutations preserve the vertex set of the complete graph");
                map.push(*target);
            }
            distinct
                .entry(map)
                .or_insert_with(|| CensusEntry { sigma: sigma.clone(), negated });
        }
    }
    Ok(Census { count: distinct.len(), maps: distinct.into_values().collect() })
}

/// Number of vertices on the facet with the given label: |S| * |S^C|.
pub fn facet_vertex_count(label: &FacetLabel) -> usize {
    label.len() * (label.n() - label.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn labels_for_small_n() {
        let labels = facet_labels(3).unwrap();
        assert_eq!(labels.len(), 6);
        let rendered: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(rendered, ["{1}", "{1,2}", "{1,3}", "{2}", "{2,3}", "{3}"]);
        assert_eq!(facet_labels(4).unwrap().len(), 14);
        assert!(facet_labels(2).is_err());
    }

    #[test]
    fn size_one_labels_have_n_minus_one_vertices() {
        let n = 4;
        let sep = sep_build(&Graph::complete(n)).unwrap();
        for label in facet_labels(n).unwrap() {
            let key = sep
                .poly()
                .hrep()
                .canonical_inequality(&label.normal(), &Rational::one());
            let facet = sep.poly().hrep().inequalities().iter().position(|c| *c == key).unwrap();
            assert_eq!(
                sep.poly().facet_vertex_indices(facet).len(),
                facet_vertex_count(&label)
            );
        }
    }

    #[test]
    fn adjacency_criterion() {
        let n = 3;
        let l1 = FacetLabel::new([0], n);
        let l12 = FacetLabel::new([0, 1], n);
        let l23 = FacetLabel::new([1, 2], n);
        assert!(labels_adjacent(&l1, &l12));
        assert!(!labels_adjacent(&l1, &l23));
        let l13 = FacetLabel::new([0, 2], 4);
        let l12_4 = FacetLabel::new([0, 1], 4);
        assert!(!labels_adjacent(&l12_4, &l13));
        assert!(!labels_adjacent(&l1, &l1));
    }

    #[test]
    fn adjacency_matches_geometry_on_k4() {
        let n = 4;
        let sep = sep_build(&Graph::complete(n)).unwrap();
        let labels = facet_labels(n).unwrap();
        let facet_of = |label: &FacetLabel| -> usize {
            let key = sep
                .poly()
                .hrep()
                .canonical_inequality(&label.normal(), &Rational::one());
            sep.poly().hrep().inequalities().iter().position(|c| *c == key).unwrap()
        };
        for a in &labels {
            for b in &labels {
                assert_eq!(
                    labels_adjacent(a, b),
                    sep.poly().facets_adjacent(facet_of(a), facet_of(b)),
                    "labels {a} and {b}"
                );
            }
        }
    }

    #[test]
    fn fixed_labels_for_k4() {
        let labels = fixed_facet_labels(4, &perm("(1 2)", 4)).unwrap();
        let rendered: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(rendered, ["{1,2}", "{1,2,3}", "{1,2,4}", "{3}", "{3,4}", "{4}"]);

        let segment = fixed_facet_labels(4, &perm("(1 2)(3 4)", 4)).unwrap();
        let rendered: Vec<String> = segment.iter().map(|l| l.to_string()).collect();
        assert_eq!(rendered, ["{1,2}", "{3,4}"]);

        // closed under complement
        for label in &labels {
            assert!(labels.contains(&label.complement()));
        }

        assert!(fixed_facet_labels(4, &perm("(1 2 3 4)", 4)).is_err());
    }

    #[test]
    fn h_description_counts() {
        // n = 3: three +/- pairs; n = 4: complementary half-size pairs collapse
        assert_eq!(h_description(3).inequalities().len(), 6);
        assert_eq!(h_description(4).inequalities().len(), 14);
        assert_eq!(h_description(2).inequalities().len(), 2);
    }

    #[test]
    fn census_counts() {
        assert_eq!(automorphism_census(2).unwrap().count, 2);
        assert_eq!(automorphism_census(3).unwrap().count, 12);
        assert_eq!(automorphism_census(4).unwrap().count, 48);
        assert!(automorphism_census(7).is_err());
        assert!(automorphism_census(1).is_err());
    }
}
