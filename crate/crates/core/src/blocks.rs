//! Block systems: the maximal pre-blocks of a tolerance.

use std::cmp::Ordering;

use serde::{Deserialize, Deserializer, Serialize};

use crate::cliques::maximal_cliques;
use crate::error::{Error, Result};
use crate::sets::IndexSet;
use crate::tolerance::Tolerance;

/// A covering antichain of subsets of `0..universe_size`, kept in canonical
/// order (minimum element, then size, then lexicographic).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    universe_size: usize,
    blocks: Vec<IndexSet>,
}

fn canonical(a: &IndexSet, b: &IndexSet) -> Ordering {
    a.first()
        .cmp(&b.first())
        .then(a.len().cmp(&b.len()))
        .then_with(|| a.cmp(b))
}

impl BlockSystem {
    /// Validates cover and maximality, then sorts canonically.
    pub fn new(universe_size: usize, mut blocks: Vec<IndexSet>) -> Result<Self> {
        if universe_size == 0 {
            return Err(Error::Parameter(
                "block system over an empty universe".into(),
            ));
        }
        let mut cover = IndexSet::with_capacity(universe_size);
        for b in &blocks {
            match b.last() {
                None => return Err(Error::Parameter("empty block".into())),
                Some(m) if m >= universe_size => {
                    return Err(Error::Bounds {
                        index: m,
                        size: universe_size,
                    })
                }
                Some(_) => cover.union_with(b),
            }
        }
        if cover.len() != universe_size {
            let missing = cover
                .complement(universe_size)
                .first()
                .expect("uncovered element");
            return Err(Error::Parameter(format!(
                "element {missing} lies in no block"
            )));
        }
        blocks.sort_by(canonical);
        for (i, a) in blocks.iter().enumerate() {
            for (j, b) in blocks.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    return Err(Error::Parameter(format!(
                        "block {:?} is contained in block {:?}",
                        a, b
                    )));
                }
            }
        }
        Ok(Self {
            universe_size,
            blocks,
        })
    }

    /// Keeps only the inclusion-maximal nonempty candidates, dropping
    /// duplicates, and builds a block system from them.
    pub fn from_candidates(universe_size: usize, candidates: Vec<IndexSet>) -> Result<Self> {
        let mut sets: Vec<IndexSet> = candidates.into_iter().filter(|s| !s.is_empty()).collect();
        sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut kept: Vec<IndexSet> = Vec::with_capacity(sets.len());
        for s in sets {
            if !kept.iter().any(|k| s.is_subset(k)) {
                kept.push(s);
            }
        }
        Self::new(universe_size, kept)
    }

    /// The blocks of `t`, i.e. the maximal cliques of its graph.
    pub fn of_tolerance(t: &Tolerance) -> Self {
        let n = t.size();
        let adjacency: Vec<IndexSet> = (0..n)
            .map(|v| {
                let mut row = t.neighbourhood(v).clone();
                row.remove(v);
                row
            })
            .collect();
        let mut blocks = maximal_cliques(&adjacency);
        blocks.sort_by(canonical);
        Self {
            universe_size: n,
            blocks,
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Co-membership in some block.
    pub fn induced_tolerance(&self) -> Tolerance {
        let mut rows = vec![IndexSet::with_capacity(self.universe_size); self.universe_size];
        for b in &self.blocks {
            for x in b {
                rows[x].union_with(b);
            }
        }
        Tolerance::from_fn(self.universe_size, |i, j| rows[i].contains(j))
    }

    /// Checks the block system against a generating tolerance: every block
    /// must be a block of `t` and every block of `t` must be listed.
    pub fn is_block_system_of(&self, t: &Tolerance) -> Result<bool> {
        if t.size() != self.universe_size {
            return Err(Error::Dimension {
                expected: self.universe_size,
                found: t.size(),
            });
        }
        for b in &self.blocks {
            if !t.is_block(b)? {
                return Ok(false);
            }
        }
        Ok(*self == Self::of_tolerance(t))
    }
}

/// The blocks of a tolerance.
pub fn blocks(t: &Tolerance) -> BlockSystem {
    BlockSystem::of_tolerance(t)
}

#[derive(Deserialize)]
struct BlockSystemRepr {
    universe_size: usize,
    blocks: Vec<IndexSet>,
}

impl<'de> Deserialize<'de> for BlockSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = BlockSystemRepr::deserialize(deserializer)?;
        BlockSystem::new(repr.universe_size, repr.blocks).map_err(serde::de::Error::custom)
    }
}
