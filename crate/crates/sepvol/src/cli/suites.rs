//! Verification suites: each one sweeps a corpus of (graph, permutation)
//! cases and reports exact expected/actual comparisons. Cases run in
//! parallel and the report is assembled in a fixed order, so output is
//! deterministic.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::combinat::{Graph, Permutation};
use crate::ehrhart;
use crate::linalg::{e_set_vector, e_vector, format_rational, QVector, Rational};
use crate::polytope::{convex_hull, parallelepiped_lattice_count, rvol};
use crate::sep::{
    complete, contraction_matrix, fixed_polytope, fixed_vertex_formula, orbit_average,
    rvol_complete_fixed_formula, rvol_fixed_formula, sep_build, sep_vertex_set, SepPolytope,
};

use super::corpus::{self, CorpusSpec};
use super::report::{CaseId, CaseReport, Check, VerifyReport};

/// Ehrhart channel ceiling inside the agreement suite.
const EHRHART_DIM_CAP: usize = 3;
/// Geometric ridge checks and per-sigma facet sweeps stop here.
const RIDGE_N_CAP: usize = 5;
/// The census and facet counting stop here.
const CENSUS_N_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Three-channel relative volume agreement for every automorphism.
    ThmSubVol,
    /// Hull of projected vertices equals the closed-form vertex set; the
    /// contraction map is a vertex bijection.
    VertDesc,
    /// Facet counts, subset labels, adjacency and block-union labels for
    /// complete graphs.
    FacetsKn,
    /// Distinct automorphism counts induced by signed permutations.
    AutoCensus,
    /// Graph-side and polytope-side invariance agree for every permutation.
    PropInvariance,
    /// Lattice-point counts of the proof parallelepipeds match the
    /// closed-form products.
    Parallelepiped,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::ThmSubVol => "thm-sub-vol",
            Suite::VertDesc => "vert-desc",
            Suite::FacetsKn => "facets-kn",
            Suite::AutoCensus => "auto-census",
            Suite::PropInvariance => "prop-invariance",
            Suite::Parallelepiped => "parallelepiped",
        }
    }
}

pub fn run_suite(suite: Suite, spec: &CorpusSpec) -> VerifyReport {
    let cases = match suite {
        Suite::ThmSubVol => automorphism_cases(spec)
            .into_par_iter()
            .map(|(name, sep, sigma)| volume_agreement_case(&name, &sep, &sigma))
            .collect(),
        Suite::VertDesc => automorphism_cases(spec)
            .into_par_iter()
            .map(|(name, sep, sigma)| vertex_description_case(&name, &sep, &sigma))
            .collect(),
        Suite::FacetsKn => facets_cases(spec),
        Suite::AutoCensus => census_cases(spec),
        Suite::PropInvariance => invariance_cases(spec),
        Suite::Parallelepiped => parallelepiped_cases(),
    };
    VerifyReport::new(suite.name(), spec.n_max, spec.random_seed, cases)
}

fn graph_case_id(name: &str, graph: &Graph, sigma: &str) -> CaseId {
    let mut value = graph.to_file_json();
    value["name"] = json!(name);
    CaseId { graph: value, sigma: sigma.to_string() }
}

fn bare_case_id(name: &str, sigma: &str) -> CaseId {
    CaseId { graph: json!({ "name": name }), sigma: sigma.to_string() }
}

/// All (graph, automorphism) pairs of the corpus, with the symmetric edge
/// polytope built once per graph.
fn automorphism_cases(spec: &CorpusSpec) -> Vec<(String, Arc<SepPolytope>, Permutation)> {
    let mut cases = Vec::new();
    for (name, graph) in corpus::generate(spec) {
        let sep = Arc::new(sep_build(&graph).expect("corpus graphs have edges"));
        for sigma in Permutation::all(graph.n()) {
            if graph.is_invariant_under(&sigma) {
                cases.push((name.clone(), Arc::clone(&sep), sigma));
            }
        }
    }
    cases
}

fn rational_or_error(result: crate::Result<Rational>) -> String {
    match result {
        Ok(v) => format_rational(&v),
        Err(e) => format!("error: {e}"),
    }
}

fn volume_agreement_case(name: &str, sep: &SepPolytope, sigma: &Permutation) -> CaseReport {
    let fixed = fixed_polytope(sep, sigma).expect("sigma is an automorphism");
    let hull = rational_or_error(rvol(fixed.poly()));
    let formula = rational_or_error(rvol_fixed_formula(sep.graph(), sigma));
    let mut checks = vec![Check::new("rvol_formula_eq_hull", &formula, &hull)];
    if fixed.poly().dim() <= EHRHART_DIM_CAP {
        let ehr = rational_or_error(ehrhart::leading_coefficient(fixed.poly()));
        checks.push(Check::new("rvol_ehrhart_eq_hull", &ehr, &hull));
    }
    CaseReport::new(graph_case_id(name, sep.graph(), &sigma.to_string()), checks)
}

fn render_vertices(vertices: &[QVector]) -> String {
    let parts: Vec<String> = vertices.iter().map(QVector::to_string).collect();
    parts.join(" ")
}

fn vertex_description_case(name: &str, sep: &SepPolytope, sigma: &Permutation) -> CaseReport {
    let graph = sep.graph();
    let n = graph.n();

    // hull of the projected vertices, compared against the closed form
    let projected: Vec<QVector> =
        sep.poly().vertices().iter().map(|v| orbit_average(sigma, v)).collect();
    let hull = convex_hull(&projected).expect("projected vertices are nonempty");
    let formula = {
        let f = fixed_vertex_formula(graph, sigma);
        if f.is_empty() {
            vec![QVector::zeros(n)]
        } else {
            f
        }
    };
    let mut checks = vec![Check::new(
        "vertex_set_matches_closed_form",
        render_vertices(&formula),
        render_vertices(hull.vertices()),
    )];

    // every vertex of the fixed polytope is fixed by sigma
    let unfixed = hull.vertices().iter().filter(|v| &sigma.act_vector(v) != *v).count();
    checks.push(Check::new("vertices_fixed_by_sigma", 0, unfixed));

    // the contraction map is a vertex bijection onto the contracted SEP,
    // and facet counts agree
    let blocks = sigma.cycle_blocks();
    let contracted = graph.contract(&blocks);
    if contracted.edge_count() > 0 {
        let phi = contraction_matrix(&blocks);
        let mut images: Vec<QVector> = hull.vertices().iter().map(|v| phi.apply(v)).collect();
        let image_count = images.len();
        images.sort();
        images.dedup();
        let target = sep_vertex_set(&contracted);
        checks.push(Check::judged(
            "contraction_map_bijects_vertices",
            format!("{} distinct images", target.len()),
            format!("{} distinct images", images.len()),
            images == target && image_count == target.len(),
        ));
        let contracted_sep = sep_build(&contracted).expect("contraction has edges");
        checks.push(Check::new(
            "facet_count_matches_contraction",
            contracted_sep.poly().facet_count(),
            hull.facet_count(),
        ));
        // combinatorial equivalence at the incidence level: the multiset of
        // facet vertex counts agrees
        let mut ours: Vec<usize> =
            (0..hull.facet_count()).map(|f| hull.facet_vertex_indices(f).len()).collect();
        let mut theirs: Vec<usize> = (0..contracted_sep.poly().facet_count())
            .map(|f| contracted_sep.poly().facet_vertex_indices(f).len())
            .collect();
        ours.sort_unstable();
        theirs.sort_unstable();
        checks.push(Check::new(
            "facet_vertex_count_multiset",
            format!("{theirs:?}"),
            format!("{ours:?}"),
        ));
    } else {
        checks.push(Check::new("fixed_polytope_is_origin", 0, hull.dim()));
    }
    CaseReport::new(graph_case_id(name, graph, &sigma.to_string()), checks)
}

fn invariance_cases(spec: &CorpusSpec) -> Vec<CaseReport> {
    let mut inputs = Vec::new();
    for (name, graph) in corpus::generate(spec) {
        let vertices = Arc::new(sep_vertex_set(&graph));
        let graph = Arc::new(graph);
        for sigma in Permutation::all(graph.n()) {
            inputs.push((name.clone(), Arc::clone(&graph), Arc::clone(&vertices), sigma));
        }
    }
    inputs
        .into_par_iter()
        .map(|(name, graph, vertices, sigma)| {
            let graph_side = graph.is_invariant_under(&sigma);
            let mut mapped: Vec<QVector> = vertices.iter().map(|v| sigma.act_vector(v)).collect();
            mapped.sort();
            let polytope_side = mapped == *vertices;
            let checks = vec![Check::new(
                "graph_side_eq_polytope_side",
                graph_side,
                polytope_side,
            )];
            CaseReport::new(graph_case_id(&name, &graph, &sigma.to_string()), checks)
        })
        .collect()
}

fn facets_cases(spec: &CorpusSpec) -> Vec<CaseReport> {
    let sizes: Vec<usize> = (3..=spec.n_max.min(CENSUS_N_CAP)).collect();
    let mut cases: Vec<CaseReport> =
        sizes.par_iter().map(|&n| complete_facets_case(n)).collect();

    // per-sigma block-union labels, on the smaller cap
    let mut sigma_inputs = Vec::new();
    for n in 3..=spec.n_max.min(RIDGE_N_CAP) {
        for sigma in Permutation::all(n) {
            sigma_inputs.push((n, sigma));
        }
    }
    cases.par_extend(
        sigma_inputs.into_par_iter().map(|(n, sigma)| fixed_facets_case(n, &sigma)),
    );
    cases
}

fn complete_facets_case(n: usize) -> CaseReport {
    let graph = Graph::complete(n);
    let sep = sep_build(&graph).expect("complete graph has edges");
    let hrep = sep.poly().hrep();
    let expected_count = (1usize << n) - 2;
    let mut checks = vec![Check::new("facet_count_is_2^n_minus_2", expected_count, sep.poly().facet_count())];

    // every nonempty proper subset indicator supports exactly one facet
    let labels = complete::facet_labels(n).expect("n >= 3");
    let mut matched = std::collections::BTreeSet::new();
    let mut vertex_count_mismatches = 0usize;
    let mut facet_of = Vec::with_capacity(labels.len());
    for label in &labels {
        let key = hrep.canonical_inequality(&label.normal(), &Rational::from_integer(1.into()));
        match hrep.inequalities().iter().position(|c| *c == key) {
            Some(f) => {
                matched.insert(f);
                facet_of.push(Some(f));
                if sep.poly().facet_vertex_indices(f).len() != complete::facet_vertex_count(label) {
                    vertex_count_mismatches += 1;
                }
            }
            None => facet_of.push(None),
        }
    }
    checks.push(Check::new("subset_labels_biject_onto_facets", labels.len(), matched.len()));
    checks.push(Check::new("facet_vertex_counts_are_|S||Sc|", 0, vertex_count_mismatches));

    if n <= RIDGE_N_CAP {
        let mut mismatches = 0usize;
        for (a, la) in labels.iter().enumerate() {
            for (b, lb) in labels.iter().enumerate() {
                let by_label = complete::labels_adjacent(la, lb);
                let by_geometry = match (facet_of[a], facet_of[b]) {
                    (Some(fa), Some(fb)) => sep.poly().facets_adjacent(fa, fb),
                    _ => false,
                };
                if by_label != by_geometry {
                    mismatches += 1;
                }
            }
        }
        checks.push(Check::new("label_adjacency_matches_ridges", 0, mismatches));
    }

    // subset halfspace description describes the same point set
    let described = complete::h_description(n);
    let canonical: std::collections::BTreeSet<_> = described
        .inequalities()
        .iter()
        .map(|(a, b)| described.canonical_inequality(a, b))
        .collect();
    let covered = hrep.inequalities().iter().filter(|c| canonical.contains(*c)).count();
    let vertices_inside =
        sep.poly().vertices().iter().filter(|v| described.contains(v)).count();
    checks.push(Check::new("hull_facets_covered_by_subset_halfspaces", hrep.inequalities().len(), covered));
    checks.push(Check::new("hull_vertices_satisfy_subset_halfspaces", sep.poly().vertices().len(), vertices_inside));

    CaseReport::new(graph_case_id(&format!("complete_{n}"), &graph, ""), checks)
}

fn fixed_facets_case(n: usize, sigma: &Permutation) -> CaseReport {
    let graph = Graph::complete(n);
    let m = sigma.cycle_blocks().block_count();
    let sep = sep_build(&graph).expect("complete graph has edges");
    let fixed = fixed_polytope(&sep, sigma).expect("every permutation fixes the complete graph");
    let mut checks = Vec::new();
    if m < 2 {
        checks.push(Check::new("single_block_fixes_only_the_origin", 0, fixed.poly().dim()));
    } else {
        let expected = (1usize << m) - 2;
        checks.push(Check::new("fixed_facet_count_is_2^m_minus_2", expected, fixed.poly().facet_count()));
        let labels = complete::fixed_facet_labels(n, sigma).expect("m >= 2");
        checks.push(Check::new("block_union_labels", expected, labels.len()));
        let closed_under_complement = labels.iter().all(|l| labels.contains(&l.complement()));
        checks.push(Check::judged("labels_closed_under_complement", true, closed_under_complement, closed_under_complement));
    }
    CaseReport::new(graph_case_id(&format!("complete_{n}"), &graph, &sigma.to_string()), checks)
}

fn census_cases(spec: &CorpusSpec) -> Vec<CaseReport> {
    (2..=spec.n_max.min(CENSUS_N_CAP))
        .into_par_iter()
        .map(|n| {
            let census = complete::automorphism_census(n).expect("n within cap");
            let expected = if n == 2 { 2 } else { 2 * (1..=n).product::<usize>() };
            let checks = vec![Check::new("distinct_induced_automorphisms", expected, census.count)];
            CaseReport::new(bare_case_id(&format!("complete_{n}"), ""), checks)
        })
        .collect()
}

fn parallelepiped_cases() -> Vec<CaseReport> {
    let mut inputs: Vec<Vec<u64>> = Vec::new();
    for m in 2..=3usize {
        let mut sizes = vec![1u64; m];
        loop {
            inputs.push(sizes.clone());
            let mut k = 0;
            loop {
                sizes[k] += 1;
                if sizes[k] <= 4 {
                    break;
                }
                sizes[k] = 1;
                k += 1;
                if k == m {
                    break;
                }
            }
            if k == m {
                break;
            }
        }
    }
    inputs.into_par_iter().map(|sizes| parallelepiped_case(&sizes)).collect()
}

/// Verify the two lattice-point counts from the volume identity's proof:
/// the parallelepiped on |B_m| e_{B_i} - |B_i| e_{B_m} holds
/// |B_m|^(m-2) gcd(sizes) lattice points, its image under the contraction
/// map holds |B_m|^(m-2) prod(sizes).
fn parallelepiped_case(sizes: &[u64]) -> CaseReport {
    let m = sizes.len();
    let n: usize = sizes.iter().map(|&s| s as usize).sum();
    let sigma = block_rotation(sizes);
    let blocks = sigma.cycle_blocks();
    debug_assert_eq!(blocks.block_sizes(), sizes);

    let last = m - 1;
    let source: Vec<QVector> = (0..last)
        .map(|i| {
            let a = e_set_vector(blocks.block(i).iter().copied(), n)
                .scale(&Rational::from_integer((sizes[last] as i64).into()));
            let b = e_set_vector(blocks.block(last).iter().copied(), n)
                .scale(&Rational::from_integer((sizes[i] as i64).into()));
            &a - &b
        })
        .collect();
    let image: Vec<QVector> = (0..last)
        .map(|i| {
            let scale = Rational::from_integer(((sizes[i] * sizes[last]) as i64).into());
            (&e_vector(i, m) - &e_vector(last, m)).scale(&scale)
        })
        .collect();

    let gcd = crate::linalg::gcd_list(sizes).expect("nonempty sizes");
    let product: u64 = sizes.iter().product();
    let power = sizes[last].pow(m as u32 - 2);

    let checks = vec![
        Check::new(
            "source_parallelepiped_count",
            power * gcd,
            parallelepiped_lattice_count(&source).expect("independent integer vectors"),
        ),
        Check::new(
            "image_parallelepiped_count",
            power * product,
            parallelepiped_lattice_count(&image).expect("independent integer vectors"),
        ),
    ];
    let name = format!(
        "blocks_{}",
        sizes.iter().map(u64::to_string).collect::<Vec<_>>().join("_")
    );
    CaseReport::new(bare_case_id(&name, &sigma.to_string()), checks)
}

/// The permutation rotating each of the consecutive blocks of the given
/// sizes; its orbit partition is exactly those blocks in order.
fn block_rotation(sizes: &[u64]) -> Permutation {
    let n: usize = sizes.iter().map(|&s| s as usize).sum();
    let mut images: Vec<usize> = (0..n).collect();
    let mut start = 0usize;
    for &s in sizes {
        let s = s as usize;
        for k in 0..s {
            images[start + k] = start + (k + 1) % s;
        }
        start += s;
    }
    Permutation::from_images(images).expect("block rotation is a bijection")
}

/// The closed-form complete-graph volume rvol(SEP(K_m)) =
/// binom(2(m-1), m-1) / (m-1)!, as the identity case of the fixed-volume
/// formula.
pub fn complete_rvol_closed_form(m: usize) -> Rational {
    rvol_complete_fixed_formula(m, &Permutation::identity(m))
}
