use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{lcm_list, QVector};

/// Permutation of `0..n`, stored as its image table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput("image table is not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parse 1-based cycle notation, e.g. `(1 2)(3 4)`. Elements omitted
    /// from every cycle are fixed; the empty string and `()` are the
    /// identity. Entries may be separated by spaces or commas.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = stripped.find(')') else {
                return Err(Error::Parse("unbalanced parenthesis".into()));
            };
            let body = &stripped[..close];
            rest = stripped[close + 1..].trim_start();
            let mut cycle = Vec::new();
            for token in body.split(|c: char| c.is_whitespace() || c == ',') {
                if token.is_empty() {
                    continue;
                }
                let value: usize = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad cycle entry {token:?}")))?;
                if value == 0 || value > n {
                    return Err(Error::Parse(format!(
                        "cycle entry {value} out of range 1..={n}"
                    )));
                }
                let v = value - 1;
                if used[v] {
                    return Err(Error::Parse(format!("repeated element {value}")));
                }
                used[v] = true;
                cycle.push(v);
            }
            for (k, &v) in cycle.iter().enumerate() {
                images[v] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Composition applying `other` first: `a.compose(&b)` maps i to a(b(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: (0..self.n()).map(|i| self.apply(other.apply(i))).collect() }
    }

    /// Orbit partition of `0..n`, fixed points included as singletons.
    pub fn cycle_blocks(&self) -> CycleBlocks {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                orbit.push(v);
                v = self.apply(v);
            }
            orbit.sort_unstable();
            blocks.push(orbit);
        }
        // scanning from the minimum of each fresh orbit already yields
        // blocks ordered by minimum element
        CycleBlocks { blocks, n }
    }

    /// Order of the permutation in the symmetric group.
    pub fn order(&self) -> u64 {
        self.cycle_blocks().group_order()
    }

    /// Coordinate action consistent with mapping e_i to e_{σ(i)}:
    /// the image y satisfies y[σ(i)] = x[i].
    pub fn act_vector(&self, x: &QVector) -> QVector {
        assert_eq!(self.n(), x.dim(), "vector length must match degree");
        let mut coords = vec![num_traits::Zero::zero(); x.dim()];
        for (i, value) in x.coords().iter().enumerate() {
            coords[self.apply(i)] = value.clone();
        }
        QVector::new(coords)
    }

    /// Every permutation of `0..n` in lexicographic order of image tables.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..n)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.cycle_blocks();
        let mut wrote = false;
        for block in blocks.blocks() {
            if block.len() < 2 {
                continue;
            }
            // walk the cycle starting from its minimum
            write!(f, "(")?;
            let mut v = block[0];
            for k in 0..block.len() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", v + 1)?;
                v = self.apply(v);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Orbit partition of a permutation: disjoint blocks covering `0..n`,
/// each block sorted, blocks ordered by minimum element. Fixed points are
/// singleton blocks, so `block_count` counts them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBlocks {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

impl CycleBlocks {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &[usize] {
        &self.blocks[k]
    }

    /// Number of blocks, singletons included.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.len() as u64).collect()
    }

    /// Order of the underlying permutation: lcm of the block sizes.
    pub fn group_order(&self) -> u64 {
        lcm_list(&self.block_sizes())
    }

    /// Index of the block containing vertex v.
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&v).is_ok())
            .expect("blocks partition the vertex set")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::e_vector;
    use proptest::prelude::*;

    #[test]
    fn parse_and_blocks() {
        let p = Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(1), 0);
        let blocks = p.cycle_blocks();
        assert_eq!(blocks.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(blocks.block_count(), 2);
        assert_eq!(blocks.group_order(), 2);

        let q = Permutation::parse_cycles("(1 2 3)", 4).unwrap();
        assert_eq!(q.apply(2), 0);
        assert_eq!(q.apply(3), 3);
        let qb = q.cycle_blocks();
        assert_eq!(qb.blocks(), &[vec![0, 1, 2], vec![3]]);
        assert_eq!(qb.group_order(), 3);

        let id = Permutation::parse_cycles("", 3).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.cycle_blocks().block_count(), 3);
        assert_eq!(id.cycle_blocks().group_order(), 1);
        assert!(Permutation::parse_cycles("()", 3).unwrap().is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("1 2)", 3).is_err());
    }

    #[test]
    fn action_on_vectors() {
        let p = Permutation::parse_cycles("(1 2)", 4).unwrap();
        assert_eq!(
            p.act_vector(&QVector::from_ints(&[1, 0, -1, 0])),
            QVector::from_ints(&[0, 1, -1, 0])
        );
        let id = Permutation::identity(4);
        let x = QVector::from_ints(&[3, 1, 4, 1]);
        assert_eq!(id.act_vector(&x), x);
        // the defining relation: (1 2 3) sends e_1 to e_2
        let r = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        assert_eq!(r.act_vector(&e_vector(0, 3)), e_vector(1, 3));
    }

    #[test]
    fn display_roundtrip() {
        for text in ["(1 2)(3 4)", "(1 2 3)", "()"] {
            let p = Permutation::parse_cycles(text, 4).unwrap();
            assert_eq!(p, Permutation::parse_cycles(&p.to_string(), 4).unwrap());
        }
    }

    #[test]
    fn enumeration() {
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(1).len(), 1);
    }

    fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|images| Permutation { images })
    }

    proptest! {
        #[test]
        fn blocks_partition_and_are_orbits(p in arb_permutation(6)) {
            let blocks = p.cycle_blocks();
            let mut all: Vec<usize> = blocks.blocks().iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..6).collect::<Vec<_>>());
            for block in blocks.blocks() {
                // applying p maps each block onto itself
                let mut image: Vec<usize> = block.iter().map(|&v| p.apply(v)).collect();
                image.sort_unstable();
                prop_assert_eq!(&image, block);
            }
            // group order is the true order of p
            let order = blocks.group_order();
            let mut power = Permutation::identity(6);
            for _ in 0..order {
                power = p.compose(&power);
            }
            prop_assert!(power.is_identity());
            for divisor in 1..order {
                if order % divisor != 0 {
                    continue;
                }
                let mut q = Permutation::identity(6);
                for _ in 0..divisor {
                    q = p.compose(&q);
                }
                prop_assert!(!q.is_identity());
            }
        }

        #[test]
        fn act_vector_roundtrip(p in arb_permutation(5), xs in proptest::collection::vec(-5i64..=5, 5)) {
            let x = QVector::from_ints(&xs);
            let there_and_back = p.act_vector(&p.inverse().act_vector(&x));
            prop_assert_eq!(there_and_back, x);
        }

        #[test]
        fn invariance_matches_inverse(p in arb_permutation(5), mask in 0u16..1024) {
            // random graph on 5 vertices from the mask bits
            let pairs: Vec<(usize, usize)> =
                (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &e)| e);
            let g = crate::combinat::Graph::new(5, edges).unwrap();
            prop_assert_eq!(g.is_invariant_under(&p), g.is_invariant_under(&p.inverse()));
        }
    }
}
