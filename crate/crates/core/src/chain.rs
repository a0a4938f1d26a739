//! Tolerances on finite chains `L_n = {0 < 1 < .. < n-1}`.
//!
//! A block system of a chain tolerance is a sequence of intervals
//! `[n_1, m_1], .., [n_k, m_k]` with `n_1 = 0`, `m_k = n - 1` and
//! `n_i < n_{i+1} <= m_i + 1`, `m_i < m_{i+1}`. Glued tolerances additionally
//! require consecutive blocks to overlap; congruences require them to abut.

use serde::{Deserialize, Deserializer, Serialize};

use crate::blocks::BlockSystem;
use crate::error::{Error, Result};
use crate::sets::IndexSet;
use crate::tolerance::{ProductIndex, Tolerance};

/// Closed integer interval `[start, end]`.
pub type Interval = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChainBlockSystem {
    n: usize,
    intervals: Vec<Interval>,
}

impl ChainBlockSystem {
    /// Checks the interval inequalities for a tolerance on `L_n`.
    pub fn new(n: usize, intervals: Vec<Interval>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("chain length must be positive".into()));
        }
        let (first, last) = match (intervals.first(), intervals.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::Parameter("no intervals".into())),
        };
        if let Some(&(a, b)) = intervals.iter().find(|(a, b)| a > b || *b >= n) {
            return Err(Error::Parameter(format!(
                "malformed interval [{a}, {b}] on L_{n}"
            )));
        }
        if first.0 != 0 || last.1 != n - 1 {
            return Err(Error::Parameter(format!(
                "intervals must start at 0 and end at {}",
                n - 1
            )));
        }
        for w in intervals.windows(2) {
            let ((n_i, m_i), (n_j, m_j)) = (w[0], w[1]);
            if !(n_i < n_j && n_j <= m_i + 1 && m_i < m_j) {
                return Err(Error::Parameter(format!(
                    "intervals [{n_i}, {m_i}] and [{n_j}, {m_j}] violate n_i < n_(i+1) <= m_i + 1, m_i < m_(i+1)"
                )));
            }
        }
        Ok(Self { n, intervals })
    }

    /// The total tolerance `{[0, n-1]}`.
    pub fn total(n: usize) -> Result<Self> {
        Self::new(n, vec![(0, n.saturating_sub(1))])
    }

    /// The identity congruence `{[0,0], .., [n-1,n-1]}`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|i| (i, i)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Consecutive blocks share at least one element.
    pub fn is_glued(&self) -> bool {
        self.intervals.windows(2).all(|w| w[1].0 <= w[0].1)
    }

    /// Consecutive blocks abut exactly.
    pub fn is_congruence(&self) -> bool {
        self.intervals.windows(2).all(|w| w[1].0 == w[0].1 + 1)
    }

    /// `x T y` iff some interval contains both.
    pub fn tolerance(&self) -> Tolerance {
        Tolerance::from_fn(self.n, |i, j| {
            self.intervals.iter().any(|&(a, b)| a <= i && j <= b)
        })
    }

    pub fn block_system(&self) -> BlockSystem {
        BlockSystem::new(
            self.n,
            self.intervals
                .iter()
                .map(|&(a, b)| IndexSet::interval(a, b))
                .collect(),
        )
        .expect("chain intervals form an antichain cover")
    }

    /// Indices of the intervals containing `x`.
    pub fn intervals_containing(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.intervals
            .iter()
            .enumerate()
            .filter(move |(_, &(a, b))| a <= x && x <= b)
            .map(|(i, _)| i)
    }
}

#[derive(Deserialize)]
struct ChainRepr {
    n: usize,
    intervals: Vec<Interval>,
}

impl<'de> Deserialize<'de> for ChainBlockSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ChainRepr::deserialize(deserializer)?;
        ChainBlockSystem::new(repr.n, repr.intervals).map_err(serde::de::Error::custom)
    }
}

/// Block systems of a family of tolerances on one chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalBlockDistribution {
    pub n: usize,
    pub systems: Vec<ChainBlockSystem>,
}

impl UniversalBlockDistribution {
    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Tolerance,
    Glued,
    Congruence,
}

/// Largest chain the enumerators accept; Catalan(18) is already ~4.8e8.
pub const MAX_ENUMERATION_LENGTH: usize = 16;

fn enumerate(n: usize, family: Family) -> Result<UniversalBlockDistribution> {
    if n == 0 {
        return Err(Error::Parameter("chain length must be positive".into()));
    }
    if n > MAX_ENUMERATION_LENGTH {
        return Err(Error::Capacity(format!(
            "enumeration of chain tolerances limited to n <= {MAX_ENUMERATION_LENGTH}, got {n}"
        )));
    }
    let mut systems = Vec::new();
    let mut current = Vec::new();
    for m1 in 0..n {
        current.push((0, m1));
        extend(n, family, &mut current, &mut systems);
        current.pop();
    }
    systems.sort_by(|a: &ChainBlockSystem, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.intervals.cmp(&b.intervals))
    });
    Ok(UniversalBlockDistribution { n, systems })
}

fn extend(n: usize, family: Family, current: &mut Vec<Interval>, out: &mut Vec<ChainBlockSystem>) {
    let (n_i, m_i) = *current.last().expect("nonempty");
    if m_i == n - 1 {
        out.push(ChainBlockSystem {
            n,
            intervals: current.clone(),
        });
        return;
    }
    let starts = match family {
        Family::Tolerance => n_i + 1..=m_i + 1,
        Family::Glued => n_i + 1..=m_i,
        Family::Congruence => m_i + 1..=m_i + 1,
    };
    for start in starts {
        for end in m_i + 1..n {
            current.push((start, end));
            extend(n, family, current, out);
            current.pop();
        }
    }
}

/// All block systems of tolerances on `L_n`, ordered by block count and then
/// lexicographically by interval list. Index 0 is the total tolerance.
pub fn enumerate_chain_tolerances(n: usize) -> Result<UniversalBlockDistribution> {
    enumerate(n, Family::Tolerance)
}

/// Block systems of glued tolerances on `L_n`.
pub fn enumerate_chain_glued(n: usize) -> Result<UniversalBlockDistribution> {
    enumerate(n, Family::Glued)
}

/// Block systems of congruences on `L_n` (partitions into intervals).
pub fn enumerate_chain_congruences(n: usize) -> Result<UniversalBlockDistribution> {
    enumerate(n, Family::Congruence)
}

/// First violated condition of the interval characterisation of lattice blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum LatticeBlockViolation {
    /// `element` lies in no interval.
    Cover { element: usize },
    /// Two intervals share a left endpoint but not a right one.
    SameStartDifferentEnd { first: usize, second: usize },
    /// No interval starts at `a_i ∨ a_j` and reaches `b_i ∨ b_j`.
    Join { first: usize, second: usize },
}

/// Checks a candidate interval family on `L_n` against the characterisation
/// of block systems of lattice tolerances, with `∨ = max`. Returns the first
/// failing condition, or `None` when the family is valid.
pub fn validate_lattice_blocks(
    n: usize,
    intervals: &[Interval],
) -> Result<Option<LatticeBlockViolation>> {
    if let Some(&(a, b)) = intervals.iter().find(|(a, b)| a > b || *b >= n) {
        return Err(Error::Parameter(format!(
            "malformed interval [{a}, {b}] on L_{n}"
        )));
    }
    for x in 0..n {
        if !intervals.iter().any(|&(a, b)| a <= x && x <= b) {
            return Ok(Some(LatticeBlockViolation::Cover { element: x }));
        }
    }
    for (i, &(ai, bi)) in intervals.iter().enumerate() {
        for (j, &(aj, bj)) in intervals.iter().enumerate().skip(i + 1) {
            if ai == aj && bi != bj {
                return Ok(Some(LatticeBlockViolation::SameStartDifferentEnd {
                    first: i,
                    second: j,
                }));
            }
        }
    }
    for (i, &(ai, bi)) in intervals.iter().enumerate() {
        for (j, &(aj, bj)) in intervals.iter().enumerate() {
            let (a, b) = (ai.max(aj), bi.max(bj));
            if !intervals.iter().any(|&(ak, bk)| ak == a && b <= bk) {
                return Ok(Some(LatticeBlockViolation::Join {
                    first: i,
                    second: j,
                }));
            }
        }
    }
    Ok(None)
}

/// Blocks of the product of chain tolerances, as Cartesian products of factor
/// intervals encoded row-major. Each block is paired with its factor
/// interval indices.
pub fn product_blocks(factors: &[ChainBlockSystem]) -> Result<(BlockSystem, Vec<Vec<usize>>)> {
    let index = ProductIndex::new(factors.iter().map(ChainBlockSystem::n).collect())?;
    let mut choice = vec![0; factors.len()];
    let mut out = Vec::new();
    loop {
        let mut block = IndexSet::with_capacity(index.len());
        let ranges: Vec<Interval> = choice
            .iter()
            .zip(factors)
            .map(|(&c, f)| f.intervals[c])
            .collect();
        let mut tuple: Vec<usize> = ranges.iter().map(|r| r.0).collect();
        'cells: loop {
            block.insert(index.encode(&tuple));
            for pos in (0..tuple.len()).rev() {
                if tuple[pos] < ranges[pos].1 {
                    tuple[pos] += 1;
                    return_to_start(&mut tuple[pos + 1..], &ranges[pos + 1..]);
                    continue 'cells;
                }
            }
            break;
        }
        out.push((block, choice.clone()));
        if !advance(&mut choice, factors) {
            break;
        }
    }
    let system = BlockSystem::new(index.len(), out.iter().map(|(b, _)| b.clone()).collect())?;
    let tags = system
        .blocks()
        .iter()
        .map(|b| {
            out.iter()
                .find(|(c, _)| c == b)
                .map(|(_, t)| t.clone())
                .expect("block came from a factor tuple")
        })
        .collect();
    Ok((system, tags))
}

fn return_to_start(tuple: &mut [usize], ranges: &[Interval]) {
    for (t, r) in tuple.iter_mut().zip(ranges) {
        *t = r.0;
    }
}

/// Odometer over interval choices, last factor fastest.
fn advance(choice: &mut [usize], factors: &[ChainBlockSystem]) -> bool {
    for pos in (0..choice.len()).rev() {
        if choice[pos] + 1 < factors[pos].len() {
            choice[pos] += 1;
            for c in &mut choice[pos + 1..] {
                *c = 0;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cbs(n: usize, iv: &[Interval]) -> ChainBlockSystem {
        ChainBlockSystem::new(n, iv.to_vec()).unwrap()
    }

    #[test]
    fn tolerance_enumeration_small_cases() {
        let u1 = enumerate_chain_tolerances(1).unwrap();
        assert_eq!(u1.systems, vec![cbs(1, &[(0, 0)])]);
        let u2 = enumerate_chain_tolerances(2).unwrap();
        assert_eq!(
            u2.systems,
            vec![cbs(2, &[(0, 1)]), cbs(2, &[(0, 0), (1, 1)])]
        );
        let u3 = enumerate_chain_tolerances(3).unwrap();
        assert_eq!(
            u3.systems,
            vec![
                cbs(3, &[(0, 2)]),
                cbs(3, &[(0, 0), (1, 2)]),
                cbs(3, &[(0, 1), (1, 2)]),
                cbs(3, &[(0, 1), (2, 2)]),
                cbs(3, &[(0, 0), (1, 1), (2, 2)]),
            ]
        );
        assert_eq!(enumerate_chain_tolerances(4).unwrap().len(), 14);
        assert!(matches!(
            enumerate_chain_tolerances(0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn glued_enumeration() {
        assert_eq!(
            enumerate_chain_glued(1).unwrap().systems,
            vec![cbs(1, &[(0, 0)])]
        );
        assert_eq!(
            enumerate_chain_glued(2).unwrap().systems,
            vec![cbs(2, &[(0, 1)])]
        );
        assert_eq!(
            enumerate_chain_glued(3).unwrap().systems,
            vec![cbs(3, &[(0, 2)]), cbs(3, &[(0, 1), (1, 2)])]
        );
    }

    #[test]
    fn congruence_enumeration() {
        assert_eq!(
            enumerate_chain_congruences(3).unwrap().systems,
            vec![
                cbs(3, &[(0, 2)]),
                cbs(3, &[(0, 0), (1, 2)]),
                cbs(3, &[(0, 1), (2, 2)]),
                cbs(3, &[(0, 0), (1, 1), (2, 2)]),
            ]
        );
        assert_eq!(enumerate_chain_congruences(1).unwrap().len(), 1);
        assert_eq!(enumerate_chain_congruences(4).unwrap().len(), 8);
    }

    #[test]
    fn constructor_enforces_inequalities() {
        assert!(ChainBlockSystem::new(3, vec![(0, 1), (0, 2)]).is_err());
        assert!(ChainBlockSystem::new(3, vec![(0, 0), (2, 2)]).is_err());
        assert!(ChainBlockSystem::new(3, vec![(0, 2), (1, 2)]).is_err());
        assert!(ChainBlockSystem::new(3, vec![(1, 2)]).is_err());
        assert!(ChainBlockSystem::new(3, vec![(0, 3)]).is_err());
        assert!(ChainBlockSystem::new(0, vec![]).is_err());
        assert!(cbs(3, &[(0, 1), (1, 2)]).is_glued());
        assert!(cbs(3, &[(0, 0), (1, 2)]).is_congruence());
    }

    #[test]
    fn lattice_block_validation() {
        for s in enumerate_chain_tolerances(4).unwrap().systems {
            assert_eq!(validate_lattice_blocks(4, s.intervals()).unwrap(), None);
        }
        assert_eq!(
            validate_lattice_blocks(2, &[(0, 0), (0, 1)]).unwrap(),
            Some(LatticeBlockViolation::SameStartDifferentEnd {
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            validate_lattice_blocks(3, &[(0, 0), (2, 2)]).unwrap(),
            Some(LatticeBlockViolation::Cover { element: 1 })
        );
        // [0,2] ∨ [1,1] = [1, 2] needs an interval starting at 1 reaching 2
        assert_eq!(
            validate_lattice_blocks(3, &[(0, 2), (1, 1)]).unwrap(),
            Some(LatticeBlockViolation::Join {
                first: 0,
                second: 1
            })
        );
        assert!(validate_lattice_blocks(3, &[(2, 1)]).is_err());
    }

    #[test]
    fn chain_tolerance_and_blocks_agree() {
        let s = cbs(4, &[(0, 1), (1, 3)]);
        let t = s.tolerance();
        assert_eq!(t.pairs(), vec![(0, 1), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(crate::blocks::blocks(&t), s.block_system());
        assert!(t.is_compatible_on_chain());
        assert_eq!(s.intervals_containing(1).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn product_blocks_by_hand() {
        // {[0,1],[1,2]} × {[0,0],[1,1]} on L3 × L2, row-major index 2*x + y
        let a = cbs(3, &[(0, 1), (1, 2)]);
        let b = cbs(2, &[(0, 0), (1, 1)]);
        let (bs, tags) = product_blocks(&[a.clone(), b.clone()]).unwrap();
        let expected: Vec<Vec<usize>> = vec![vec![0, 2], vec![1, 3], vec![2, 4], vec![3, 5]];
        assert_eq!(
            bs.blocks().iter().map(IndexSet::to_vec).collect::<Vec<_>>(),
            expected
        );
        assert_eq!(tags, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let (t, _) = crate::tolerance::product_tolerance(&[a.tolerance(), b.tolerance()]).unwrap();
        assert_eq!(crate::blocks::blocks(&t), bs);
    }

    #[test]
    fn json_shape() {
        let s = cbs(5, &[(0, 2), (2, 4)]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":5,"intervals":[[0,2],[2,4]]}"#);
        assert_eq!(serde_json::from_str::<ChainBlockSystem>(&json).unwrap(), s);
        assert!(
            serde_json::from_str::<ChainBlockSystem>(r#"{"n":3,"intervals":[[0,0],[2,2]]}"#)
                .is_err()
        );
    }
}
