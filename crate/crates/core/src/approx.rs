//! Granular lower and upper approximations and the rough objects built from
//! them.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blocks::BlockSystem;
use crate::error::{Error, Result};
use crate::sets::IndexSet;

/// One side of an approximation together with the blocks that formed it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approximation {
    pub set: IndexSet,
    /// Indices into the block system.
    pub blocks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GranularApproximation {
    pub query: IndexSet,
    pub lower: IndexSet,
    pub upper: IndexSet,
    pub lower_blocks: Vec<usize>,
    pub upper_blocks: Vec<usize>,
}

fn check_query(bs: &BlockSystem, x: &IndexSet) -> Result<()> {
    match x.last() {
        Some(m) if m >= bs.universe_size() => Err(Error::Bounds {
            index: m,
            size: bs.universe_size(),
        }),
        _ => Ok(()),
    }
}

fn collect(bs: &BlockSystem, keep: impl Fn(&IndexSet) -> bool) -> Approximation {
    let mut set = IndexSet::with_capacity(bs.universe_size());
    let mut blocks = Vec::new();
    for (i, b) in bs.blocks().iter().enumerate() {
        if keep(b) {
            set.union_with(b);
            blocks.push(i);
        }
    }
    Approximation { set, blocks }
}

/// Union of the blocks contained in `x`.
pub fn lower(bs: &BlockSystem, x: &IndexSet) -> Result<Approximation> {
    check_query(bs, x)?;
    Ok(collect(bs, |b| b.is_subset(x)))
}

/// Union of the blocks meeting `x`.
pub fn upper(bs: &BlockSystem, x: &IndexSet) -> Result<Approximation> {
    check_query(bs, x)?;
    Ok(collect(bs, |b| b.intersects(x)))
}

pub fn approximate(bs: &BlockSystem, x: &IndexSet) -> Result<GranularApproximation> {
    let l = lower(bs, x)?;
    let u = upper(bs, x)?;
    Ok(GranularApproximation {
        query: x.clone(),
        lower: l.set,
        upper: u.set,
        lower_blocks: l.blocks,
        upper_blocks: u.blocks,
    })
}

/// `lower(x) = x = upper(x)`.
pub fn is_definite(bs: &BlockSystem, x: &IndexSet) -> Result<bool> {
    let a = approximate(bs, x)?;
    Ok(a.lower == *x && a.upper == *x)
}

/// Rough inclusion degree `|b \ a| / |b|`.
pub fn xi5(a: &IndexSet, b: &IndexSet) -> Result<f64> {
    if b.is_empty() {
        return Err(Error::Undefined(
            "inclusion degree with an empty second set".into(),
        ));
    }
    Ok(b.difference(a).len() as f64 / b.len() as f64)
}

/// `|lower(x)| / |upper(x)|`, and 1 for the empty set.
pub fn accuracy(bs: &BlockSystem, x: &IndexSet) -> Result<f64> {
    let a = approximate(bs, x)?;
    if a.upper.is_empty() {
        return Ok(1.0);
    }
    Ok(a.lower.len() as f64 / a.upper.len() as f64)
}

/// Largest universe enumerated exhaustively by default.
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

/// How subsets of the universe are visited when building rough objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Enumeration {
    /// Every subset; fails above `bound` elements.
    Exhaustive { bound: usize },
    /// `samples` random subsets plus the empty set and the universe.
    Sampled { samples: usize, seed: u64 },
}

impl Default for Enumeration {
    fn default() -> Self {
        Enumeration::Exhaustive {
            bound: DEFAULT_ENUMERATION_BOUND,
        }
    }
}

fn subsets(n: usize, mode: Enumeration) -> Result<Box<dyn Iterator<Item = IndexSet>>> {
    match mode {
        Enumeration::Exhaustive { bound } => {
            if n > bound || n >= 63 {
                return Err(Error::Capacity(format!(
                    "exhaustive subset enumeration over {n} elements exceeds the bound of {bound}"
                )));
            }
            Ok(Box::new((0u64..1 << n).map(move |mask| {
                (0..n).filter(|i| mask >> i & 1 == 1).collect()
            })))
        }
        Enumeration::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let random: Vec<IndexSet> = (0..samples)
                .map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect())
                .collect();
            Ok(Box::new(
                [IndexSet::new(), IndexSet::full(n)]
                    .into_iter()
                    .chain(random),
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RoughObjectKind {
    /// Pairs `(lower(x), upper(x))`.
    E1,
    /// Sets fixed by the upper approximation.
    E2,
    /// Sets that are no set's lower or upper approximation.
    F,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RoughObject {
    Pair(IndexSet, IndexSet),
    Set(IndexSet),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoughObjectSpace {
    pub kind: RoughObjectKind,
    /// Whether every subset was visited; membership in `F` is only certified
    /// when this holds.
    pub exhaustive: bool,
    pub members: Vec<RoughObject>,
}

fn pair_set(bs: &BlockSystem, mode: Enumeration) -> Result<BTreeSet<(IndexSet, IndexSet)>> {
    let mut pairs = BTreeSet::new();
    for x in subsets(bs.universe_size(), mode)? {
        let a = approximate(bs, &x)?;
        pairs.insert((a.lower, a.upper));
    }
    Ok(pairs)
}

/// Distinct `(lower(x), upper(x))` pairs.
pub fn rough_pairs(bs: &BlockSystem, mode: Enumeration) -> Result<RoughObjectSpace> {
    let members = pair_set(bs, mode)?
        .into_iter()
        .map(|(l, u)| RoughObject::Pair(l, u))
        .collect();
    Ok(RoughObjectSpace {
        kind: RoughObjectKind::E1,
        exhaustive: matches!(mode, Enumeration::Exhaustive { .. }),
        members,
    })
}

/// Sets `b` with `upper(b) = b`.
pub fn upper_definite_sets(bs: &BlockSystem, mode: Enumeration) -> Result<RoughObjectSpace> {
    let mut members = BTreeSet::new();
    for x in subsets(bs.universe_size(), mode)? {
        if upper(bs, &x)?.set == x {
            members.insert(x);
        }
    }
    Ok(RoughObjectSpace {
        kind: RoughObjectKind::E2,
        exhaustive: matches!(mode, Enumeration::Exhaustive { .. }),
        members: members.into_iter().map(RoughObject::Set).collect(),
    })
}

/// Every lower or upper approximation of some subset.
pub fn approximation_sets(bs: &BlockSystem, bound: usize) -> Result<BTreeSet<IndexSet>> {
    let mut out = BTreeSet::new();
    for (l, u) in pair_set(bs, Enumeration::Exhaustive { bound })? {
        out.insert(l);
        out.insert(u);
    }
    Ok(out)
}

/// Subsets that are nobody's approximation. Always exhaustive.
pub fn non_approximations(bs: &BlockSystem, bound: usize) -> Result<RoughObjectSpace> {
    let approximations = approximation_sets(bs, bound)?;
    let members = subsets(bs.universe_size(), Enumeration::Exhaustive { bound })?
        .filter(|x| !approximations.contains(x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(RoughObject::Set)
        .collect();
    Ok(RoughObjectSpace {
        kind: RoughObjectKind::F,
        exhaustive: true,
        members,
    })
}

/// A minimal `(lower(x), upper(x))` pair whose components contain `a`.
///
/// Partial: `a` must itself be an approximation. Among several minimal pairs
/// the one with the smallest upper component wins, then the
/// lexicographically smallest pair.
pub fn minimal_cover_rrf1(
    bs: &BlockSystem,
    a: &IndexSet,
    bound: usize,
) -> Result<(IndexSet, IndexSet)> {
    check_query(bs, a)?;
    let pairs = pair_set(bs, Enumeration::Exhaustive { bound })?;
    if !pairs.iter().any(|(l, u)| l == a || u == a) {
        return Err(Error::Domain(format!(
            "{a:?} is not a lower or upper approximation"
        )));
    }
    let covers: Vec<&(IndexSet, IndexSet)> = pairs.iter().filter(|(l, _)| a.is_subset(l)).collect();
    let minimal = covers.iter().filter(|(l, u)| {
        !covers
            .iter()
            .any(|(l2, u2)| (l2, u2) != (l, u) && l2.is_subset(l) && u2.is_subset(u))
    });
    minimal
        .min_by(|x, y| {
            x.1.len()
                .cmp(&y.1.len())
                .then_with(|| x.0.cmp(&y.0))
                .then_with(|| x.1.cmp(&y.1))
        })
        .map(|p| (*p).clone())
        .ok_or_else(|| Error::Domain(format!("no rough pair covers {a:?}")))
}
