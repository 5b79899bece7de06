use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{CycleBlocks, Permutation};

/// Simple undirected graph on vertices `0..n`. Edges are stored as ordered
/// pairs `(i, j)` with `i < j`; vertex labels in files and reports are
/// 1-based, the library is 0-based throughout.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// 1-based on-disk form: `{"n": 4, "edges": [[1,2],[3,4]]}`.
#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Build a graph from an edge list. Parallel edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidInput("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {}", a + 1)));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) out of range for {} vertices",
                    a + 1,
                    b + 1,
                    n
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(n, edges).expect("complete graph is valid")
    }

    /// Path 1 - 2 - ... - n.
    pub fn path(n: usize) -> Graph {
        Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).expect("path is valid")
    }

    /// Cycle on n >= 3 vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is valid")
    }

    /// Star with the given number of spokes: center 1, leaves 2..=spokes+1.
    pub fn star(spokes: usize) -> Graph {
        assert!(spokes >= 1, "star needs at least one spoke");
        Graph::new(spokes + 1, (1..=spokes).map(|i| (0, i))).expect("star is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// True iff the edge set is setwise fixed by the vertex permutation:
    /// {σ(i), σ(j)} is an edge exactly when {i, j} is. Since σ is a
    /// bijection of a finite edge set, checking the forward direction on
    /// every edge suffices.
    pub fn is_invariant_under(&self, p: &Permutation) -> bool {
        assert_eq!(p.n(), self.n, "permutation degree must match vertex count");
        self.edges.iter().all(|&(a, b)| self.has_edge(p.apply(a), p.apply(b)))
    }

    /// Contraction by a partition: block k becomes vertex k (blocks in
    /// canonical order), intra-block edges are dropped and parallel edges
    /// merged, so the result is simple again.
    pub fn contract(&self, blocks: &CycleBlocks) -> Graph {
        assert_eq!(blocks.n(), self.n, "partition must cover the vertex set");
        let edges = self.edges.iter().filter_map(|&(a, b)| {
            let (ba, bb) = (blocks.block_of(a), blocks.block_of(b));
            (ba != bb).then_some((ba, bb))
        });
        Graph::new(blocks.block_count(), edges).expect("contraction of a valid graph is valid")
    }

    /// Parse either the JSON graph format or plain text lines `i j`
    /// (1-based). Plain text infers the vertex count from the largest label.
    pub fn parse(text: &str) -> Result<Graph> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let file: GraphFile = serde_json::from_str(trimmed)
                .map_err(|e| Error::Parse(format!("bad graph JSON: {e}")))?;
            return Self::from_one_based(file.n, &file.edges);
        }
        let mut edges = Vec::new();
        let mut n = 0;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let parse_endpoint = |tok: Option<&str>| -> Result<usize> {
                tok.and_then(|t| t.parse::<usize>().ok()).ok_or_else(|| {
                    Error::Parse(format!("line {}: expected \"i j\", got {line:?}", lineno + 1))
                })
            };
            let a = parse_endpoint(parts.next())?;
            let b = parse_endpoint(parts.next())?;
            if parts.next().is_some() {
                return Err(Error::Parse(format!("line {}: trailing tokens", lineno + 1)));
            }
            n = n.max(a).max(b);
            edges.push((a, b));
        }
        if n == 0 {
            return Err(Error::Parse("no edges found".into()));
        }
        Self::from_one_based(n, &edges)
    }

    fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut shifted = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == 0 || b == 0 {
                return Err(Error::Parse("vertex labels are 1-based".into()));
            }
            shifted.push((a - 1, b - 1));
        }
        Graph::new(n, shifted)
    }

    /// 1-based JSON value matching the on-disk graph format.
    pub fn to_file_json(&self) -> serde_json::Value {
        let edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
        serde_json::to_value(GraphFile { n: self.n, edges }).expect("graph serializes")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_set()
            .entries(self.edges.iter().map(|&(a, b)| (a + 1, b + 1)))
            .finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.edge_count(), 6);
        let p3 = Graph::path(3);
        assert_eq!(p3.edge_count(), 2);
        let c4 = Graph::cycle(4);
        assert_eq!(c4.edge_count(), 4);
        let s3 = Graph::star(3);
        assert_eq!(s3.n(), 4);
        assert!(s3.has_edge(0, 3));
        assert!(!s3.has_edge(1, 2));
    }

    #[test]
    fn rejects_loops_and_range() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        // duplicates collapse
        let g = Graph::new(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn invariance() {
        let k4 = Graph::complete(4);
        for p in Permutation::all(4) {
            assert!(k4.is_invariant_under(&p));
        }
        let s3 = Graph::star(3);
        // swapping two leaves fixes the star; swapping center and leaf does not
        assert!(s3.is_invariant_under(&Permutation::parse_cycles("(2 3)", 4).unwrap()));
        assert!(!s3.is_invariant_under(&Permutation::parse_cycles("(1 2)", 4).unwrap()));
    }

    #[test]
    fn contraction() {
        let k4 = Graph::complete(4);
        let swap = Permutation::parse_cycles("(1 2)", 4).unwrap();
        assert_eq!(k4.contract(&swap.cycle_blocks()), Graph::complete(3));

        let s3 = Graph::star(3);
        let p = Permutation::parse_cycles("(2 3)", 4).unwrap();
        let contracted = s3.contract(&p.cycle_blocks());
        assert_eq!(contracted, Graph::new(3, [(0, 1), (0, 2)]).unwrap());

        // identity partition leaves the graph unchanged
        let id = Permutation::identity(4);
        assert_eq!(k4.contract(&id.cycle_blocks()), k4);

        // intra-block edges vanish
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let whole = Permutation::parse_cycles("(1 2)", 2).unwrap();
        assert_eq!(g.contract(&whole.cycle_blocks()).edge_count(), 0);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::complete(4).is_connected());
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_connected());
    }

    #[test]
    fn parse_json_and_text() {
        let g = Graph::parse(r#"{"n": 4, "edges": [[1,2],[2,3],[3,4]]}"#).unwrap();
        assert_eq!(g, Graph::path(4));
        let g2 = Graph::parse("1 2\n2 3\n3 4\n").unwrap();
        assert_eq!(g2, Graph::path(4));
        assert!(Graph::parse("1 2 3\n").is_err());
        assert!(Graph::parse("0 1\n").is_err());
        assert!(Graph::parse("nonsense").is_err());
    }

    #[test]
    fn file_json_roundtrip() {
        let g = Graph::star(3);
        let text = g.to_file_json().to_string();
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }
}
