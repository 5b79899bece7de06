//! Deterministic graph corpus generation: the named families plus seeded
//! random connected graphs. Identical spec and seed always produce the
//! identical corpus.

use rand_core::{RngCore, SeedableRng};

use crate::combinat::Graph;

/// Largest vertex count the corpus generator accepts.
pub const MAX_N: usize = 7;

/// Random graphs are small enough for the exhaustive sigma sweeps.
pub const RANDOM_MAX_N: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    Random,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Path, Family::Cycle, Family::Star, Family::Complete, Family::Random];
}

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub families: Vec<Family>,
    pub n_max: usize,
    pub random_count: usize,
    pub random_seed: u64,
}

impl CorpusSpec {
    pub fn new(n_max: usize, random_seed: u64) -> CorpusSpec {
        assert!((2..=MAX_N).contains(&n_max), "corpus needs 2 <= n_max <= {MAX_N}");
        CorpusSpec {
            families: Family::ALL.to_vec(),
            n_max,
            random_count: 20,
            random_seed,
        }
    }
}

/// Generate the corpus in a fixed order: family graphs by size, then the
/// seeded random connected graphs (edge probability 1/2, resampled until
/// connected; n is capped at RANDOM_MAX_N).
pub fn generate(spec: &CorpusSpec) -> Vec<(String, Graph)> {
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for family in &spec.families {
        match family {
            Family::Path => {
                for n in 2..=spec.n_max {
                    corpus.push((format!("path_{n}"), Graph::path(n)));
                }
            }
            Family::Cycle => {
                for n in 3..=spec.n_max {
                    corpus.push((format!("cycle_{n}"), Graph::cycle(n)));
                }
            }
            Family::Star => {
                for spokes in 2..spec.n_max {
                    corpus.push((format!("star_{spokes}"), Graph::star(spokes)));
                }
            }
            Family::Complete => {
                for n in 2..=spec.n_max {
                    corpus.push((format!("complete_{n}"), Graph::complete(n)));
                }
            }
            Family::Random => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(spec.random_seed);
                let n_cap = spec.n_max.min(RANDOM_MAX_N);
                for k in 0..spec.random_count {
                    let g = random_connected(&mut rng, n_cap);
                    corpus.push((format!("random_{k:02}"), g));
                }
            }
        }
    }
    corpus
}

fn random_connected(rng: &mut rand_chacha::ChaCha8Rng, n_cap: usize) -> Graph {
    loop {
        let n = 2 + (rng.next_u64() as usize) % (n_cap - 1);
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        let chosen: Vec<(usize, usize)> = edges.filter(|_| rng.next_u64() & 1 == 1).collect();
        let g = Graph::new(n, chosen).expect("generated edges are valid");
        if g.edge_count() > 0 && g.is_connected() {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let spec = CorpusSpec::new(5, 12345);
        let a = generate(&spec);
        let b = generate(&spec);
        assert_eq!(a, b);
        let other = generate(&CorpusSpec::new(5, 54321));
        assert_ne!(a, other);
    }

    #[test]
    fn random_graphs_are_connected_and_small() {
        let spec = CorpusSpec::new(6, 7);
        for (name, g) in generate(&spec) {
            if name.starts_with("random_") {
                assert!(g.is_connected());
                assert!(g.n() <= RANDOM_MAX_N);
                assert!(g.edge_count() >= 1);
            }
        }
    }

    #[test]
    fn family_sizes() {
        let spec = CorpusSpec::new(6, 0);
        let corpus = generate(&spec);
        // paths 2..=6, cycles 3..=6, stars 2..=5 spokes, complete 2..=6, 20 random
        assert_eq!(corpus.len(), 5 + 4 + 4 + 5 + 20);
    }
}
