//! Symmetric edge polytopes: construction from a graph, orbit-averaging
//! projection onto the subspace fixed by a permutation, the closed-form
//! vertex description of fixed subpolytopes, the linear equivalence with the
//! symmetric edge polytope of the contracted graph, and the gcd volume
//! formula. Identities are verified at the point of use: a mismatch panics,
//! because it would mean the engine itself is broken.

pub mod complete;

use num_traits::One;

use crate::combinat::{CycleBlocks, Graph, Permutation};
use crate::error::{Error, Result};
use crate::linalg::{
    binomial, e_set_vector, e_vector, gcd_list, QMatrix, QVector, Rational,
};
use crate::polytope::{convex_hull, rvol, Polytope};

/// A graph together with the convex hull of { ±(e_i - e_j) : {i,j} edge }.
/// The generators are exactly the vertices, the polytope lies in the
/// hyperplane sum(x) = 0, and it is centrally symmetric.
#[derive(Clone, Debug)]
pub struct SepPolytope {
    graph: Graph,
    poly: Polytope,
}

impl SepPolytope {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn poly(&self) -> &Polytope {
        &self.poly
    }
}

/// The canonical vertex set of the symmetric edge polytope: every generator
/// ±(e_i - e_j) is extreme (it uniquely maximizes its own linear
/// functional over the generator set), so no hull is required.
pub fn sep_vertex_set(graph: &Graph) -> Vec<QVector> {
    let n = graph.n();
    let mut vertices = Vec::with_capacity(2 * graph.edge_count());
    for (i, j) in graph.edges() {
        let v = &e_vector(i, n) - &e_vector(j, n);
        vertices.push(v.clone());
        vertices.push(-&v);
    }
    vertices.sort();
    vertices
}

/// Build the symmetric edge polytope of a graph with at least one edge.
pub fn sep_build(graph: &Graph) -> Result<SepPolytope> {
    if graph.edge_count() == 0 {
        return Err(Error::Degenerate(
            "the symmetric edge polytope of an edgeless graph is empty".into(),
        ));
    }
    let generators = sep_vertex_set(graph);
    let poly = convex_hull(&generators)?;
    assert_eq!(
        poly.vertices(),
        &generators[..],
        "every generator of a simple graph's symmetric edge polytope is a vertex"
    );
    Ok(SepPolytope { graph: graph.clone(), poly })
}

/// Orbit average of a vector under the cyclic group generated by the
/// permutation: the projection onto the fixed subspace. Computed both as
/// the literal average over sigma^1 .. sigma^{order} and by the block
/// closed form (block mean times block indicator); the two must agree.
pub fn orbit_average(sigma: &Permutation, x: &QVector) -> QVector {
    let n = sigma.n();
    assert_eq!(x.dim(), n, "vector length must match the permutation degree");
    let blocks = sigma.cycle_blocks();
    let order = blocks.group_order();

    let mut sum = QVector::zeros(n);
    let mut image = x.clone();
    for _ in 0..order {
        image = sigma.act_vector(&image);
        sum = &sum + &image;
    }
    let averaged = sum.scale(&Rational::new(1.into(), i64::try_from(order).unwrap().into()));

    let mut by_blocks = QVector::zeros(n);
    for block in blocks.blocks() {
        let total: Rational = block.iter().map(|&j| x.get(j).clone()).sum();
        let mean = total / Rational::from_integer((block.len() as i64).into());
        by_blocks = &by_blocks + &e_set_vector(block.iter().copied(), n).scale(&mean);
    }
    assert_eq!(averaged, by_blocks, "orbit average disagrees with its block closed form");
    averaged
}

/// Closed-form vertex set of the fixed subpolytope: one vector
/// e_B/|B| - e_C/|C| for every ordered pair of distinct blocks joined by an
/// edge. Empty exactly when every edge is intra-block (the fixed polytope
/// is then the origin).
pub fn fixed_vertex_formula(graph: &Graph, sigma: &Permutation) -> Vec<QVector> {
    let n = graph.n();
    assert_eq!(sigma.n(), n);
    let blocks = sigma.cycle_blocks();
    let contracted = graph.contract(&blocks);
    let indicator = |k: usize| -> QVector {
        let block = blocks.block(k);
        e_set_vector(block.iter().copied(), n)
            .scale(&Rational::new(1.into(), (block.len() as i64).into()))
    };
    let mut vertices = Vec::new();
    for (a, b) in contracted.edges() {
        let v = &indicator(a) - &indicator(b);
        vertices.push(v.clone());
        vertices.push(-&v);
    }
    vertices.sort();
    vertices
}

/// Two-sided invariance test: the graph side (edge set fixed setwise) and
/// the polytope side (vertex set fixed setwise under the coordinate action)
/// are computed independently and must agree.
pub fn invariance_check(graph: &Graph, sigma: &Permutation) -> bool {
    let graph_side = graph.is_invariant_under(sigma);
    let vertices = sep_vertex_set(graph);
    let mut mapped: Vec<QVector> = vertices.iter().map(|v| sigma.act_vector(v)).collect();
    mapped.sort();
    let polytope_side = mapped == vertices;
    assert_eq!(
        graph_side, polytope_side,
        "graph-side and polytope-side invariance disagree for sigma = {sigma}"
    );
    graph_side
}

/// The subpolytope of a symmetric edge polytope fixed pointwise by a
/// permutation, together with the data that produced it.
#[derive(Clone, Debug)]
pub struct FixedPolytope {
    sigma: Permutation,
    blocks: CycleBlocks,
    poly: Polytope,
}

impl FixedPolytope {
    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn blocks(&self) -> &CycleBlocks {
        &self.blocks
    }

    pub fn poly(&self) -> &Polytope {
        &self.poly
    }
}

/// Fixed subpolytope as the hull of the orbit averages of the vertices.
/// Rejects permutations that are not automorphisms of the graph (the fixed
/// subset of a non-invariant polytope is not the object these formulas
/// describe). The hull's vertex set is checked against the closed-form
/// description, and every vertex against sigma-fixedness.
pub fn fixed_polytope(sep: &SepPolytope, sigma: &Permutation) -> Result<FixedPolytope> {
    let graph = &sep.graph;
    if sigma.n() != graph.n() {
        return Err(Error::InvalidInput(format!(
            "permutation degree {} does not match vertex count {}",
            sigma.n(),
            graph.n()
        )));
    }
    if !invariance_check(graph, sigma) {
        return Err(Error::NotAutomorphism(format!(
            "sigma = {sigma} does not fix the graph (graph side and polytope side both reject it)"
        )));
    }
    let projected: Vec<QVector> =
        sep.poly.vertices().iter().map(|v| orbit_average(sigma, v)).collect();
    let poly = convex_hull(&projected)?;
    let formula = fixed_vertex_formula(graph, sigma);
    if formula.is_empty() {
        assert_eq!(
            poly.vertices(),
            &[QVector::zeros(graph.n())],
            "with all edges intra-block the fixed polytope must be the origin"
        );
    } else {
        assert_eq!(
            poly.vertices(),
            &formula[..],
            "hull of the projected vertices disagrees with the closed-form vertex set"
        );
    }
    for v in poly.vertices() {
        assert_eq!(&sigma.act_vector(v), v, "fixed-polytope vertex not fixed by sigma");
    }
    Ok(FixedPolytope { sigma: sigma.clone(), blocks: sigma.cycle_blocks(), poly })
}

/// The linear map carrying the fixed subpolytope onto the symmetric edge
/// polytope of the contracted graph: row k is the indicator of block k, so
/// the block indicator e_B maps to |B| e_k.
pub fn contraction_matrix(blocks: &CycleBlocks) -> QMatrix {
    let n = blocks.n();
    let rows = blocks
        .blocks()
        .iter()
        .map(|block| e_set_vector(block.iter().copied(), n))
        .collect();
    QMatrix::from_rows(rows)
}

/// Relative volume of the fixed subpolytope via the contraction identity:
/// gcd of the block sizes over their product, times the relative volume of
/// the contracted graph's symmetric edge polytope (triangulation channel).
/// When the contraction is edgeless the fixed polytope is a point and the
/// value is 1.
pub fn rvol_fixed_formula(graph: &Graph, sigma: &Permutation) -> Result<Rational> {
    let blocks = sigma.cycle_blocks();
    let contracted = graph.contract(&blocks);
    if contracted.edge_count() == 0 {
        return Ok(Rational::one());
    }
    let sizes = blocks.block_sizes();
    let gcd = gcd_list(&sizes)?;
    let product: Rational = sizes
        .iter()
        .map(|&s| Rational::from_integer((s as i64).into()))
        .product();
    let contracted_rvol = rvol(sep_build(&contracted)?.poly())?;
    Ok(Rational::from_integer((gcd as i64).into()) / product * contracted_rvol)
}

/// Closed form for complete graphs: gcd of the block sizes over
/// (m-1)! times their product, times binomial(2(m-1), m-1), where m is the
/// number of blocks. A single block gives the point convention 1.
pub fn rvol_complete_fixed_formula(n: usize, sigma: &Permutation) -> Rational {
    assert!(n >= 2, "complete-graph formula needs n >= 2");
    assert_eq!(sigma.n(), n);
    let blocks = sigma.cycle_blocks();
    let m = blocks.block_count();
    if m == 1 {
        return Rational::one();
    }
    let sizes = blocks.block_sizes();
    let gcd = gcd_list(&sizes).expect("nonempty block list");
    let mut denominator: Rational = sizes
        .iter()
        .map(|&s| Rational::from_integer((s as i64).into()))
        .product();
    for k in 2..m {
        denominator *= Rational::from_integer((k as i64).into());
    }
    Rational::from_integer((gcd as i64).into())
        * Rational::from_integer(binomial(2 * (m as u64 - 1), m as u64 - 1))
        / denominator
}

/// Distinct automorphisms induced on a polytope's vertex set by signed
/// coordinate permutations.
#[derive(Clone, Debug)]
pub struct Census {
    pub count: usize,
    pub maps: Vec<CensusEntry>,
}

/// One distinct induced vertex bijection, with the signed permutation that
/// first produced it.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub sigma: Permutation,
    pub negated: bool,
}
