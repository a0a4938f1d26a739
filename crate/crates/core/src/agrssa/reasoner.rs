//! Large-minded reasoners: partial maps from tuples of per-attribute chain
//! block systems to table-level block systems, and the exhaustive scheme
//! that ranks every tuple in their domain.

use std::collections::{BTreeMap, BTreeSet};
use std::thread;

use serde::{Deserialize, Serialize};

use super::{
    combine, decision_quality, total_variation, ubd_chain, ModelSource, TableChains, ToleranceModel,
};
use crate::blocks::BlockSystem;
use crate::chain::ChainBlockSystem;
use crate::error::{Error, Result};
use crate::table::{InformationTable, Value};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Largest universal block distribution listed for a reasoner regardless of
/// the cap, since filtering happens only after listing.
const MATERIALIZE_LIMIT: usize = 1_000_000;

pub(crate) fn default_cap() -> usize {
    DEFAULT_CAP
}

/// Conjunction of per-attribute allowlists over candidate positions.
/// An empty filter, or `None` for an attribute, admits everything.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainFilter {
    pub allow: Vec<Option<BTreeSet<usize>>>,
}

impl DomainFilter {
    pub fn all() -> Self {
        DomainFilter::default()
    }

    fn admits(&self, attribute: usize, position: usize) -> bool {
        match self.allow.get(attribute) {
            Some(Some(list)) => list.contains(&position),
            _ => true,
        }
    }

    pub fn accepts(&self, tuple: &[usize]) -> bool {
        tuple.iter().enumerate().all(|(i, &p)| self.admits(i, p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargeMindedReasoner {
    /// Candidate chain block systems per conditional attribute.
    pub candidates: Vec<Vec<ChainBlockSystem>>,
    #[serde(default)]
    pub filter: DomainFilter,
}

impl LargeMindedReasoner {
    pub fn new(candidates: Vec<Vec<ChainBlockSystem>>, filter: DomainFilter) -> Result<Self> {
        for (i, list) in candidates.iter().enumerate() {
            let Some(first) = list.first() else {
                return Err(Error::Parameter(format!(
                    "attribute {i} has no candidate systems"
                )));
            };
            if list.iter().any(|s| s.n() != first.n()) {
                return Err(Error::Parameter(format!(
                    "candidates for attribute {i} live on chains of different lengths"
                )));
            }
        }
        if !filter.allow.is_empty() && filter.allow.len() != candidates.len() {
            return Err(Error::Dimension {
                expected: candidates.len(),
                found: filter.allow.len(),
            });
        }
        Ok(LargeMindedReasoner { candidates, filter })
    }

    /// Every chain tolerance on every attribute, with no filter.
    pub fn full_ubd(chain_lengths: &[usize]) -> Result<Self> {
        let candidates = chain_lengths
            .iter()
            .map(|&k| ubd_chain(k).map(|u| u.systems))
            .collect::<Result<_>>()?;
        LargeMindedReasoner::new(candidates, DomainFilter::all())
    }

    pub fn in_domain(&self, tuple: &[usize]) -> bool {
        tuple.len() == self.candidates.len()
            && tuple
                .iter()
                .zip(&self.candidates)
                .all(|(&p, c)| p < c.len())
            && self.filter.accepts(tuple)
    }
}

/// Applies `psi` to a tuple of candidate positions, one per attribute.
///
/// Returns the table block system together with the interval-index tuples
/// behind each block, or a domain error outside `dom(psi)`.
pub fn lmr_apply(
    psi: &LargeMindedReasoner,
    tuple: &[usize],
    ranks: &[Vec<usize>],
) -> Result<(BlockSystem, Vec<Vec<Vec<usize>>>)> {
    if !psi.in_domain(tuple) {
        return Err(Error::Domain(format!(
            "tuple {tuple:?} outside the reasoner's domain"
        )));
    }
    let systems: Vec<ChainBlockSystem> = tuple
        .iter()
        .zip(&psi.candidates)
        .map(|(&p, c)| c[p].clone())
        .collect();
    let n = ranks.first().map_or(0, Vec::len);
    combine(&systems, ranks, n)
}

/// Reasoner description in a config file. Indices refer to the enumeration
/// order of each attribute's universal block distribution.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiConfig {
    /// Candidate systems by attribute; an absent attribute takes its whole UBD.
    #[serde(default)]
    pub candidates: BTreeMap<String, Vec<usize>>,
    /// Allowlists by attribute, conjoined.
    #[serde(default)]
    pub allow: BTreeMap<String, Vec<usize>>,
}

fn catalan(n: usize) -> u128 {
    // C(i+1) = C(i)·2(2i+1)/(i+2); each division is exact
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c.saturating_mul(2 * (2 * i + 1)) / (i + 2);
    }
    c
}

impl PsiConfig {
    pub fn build(&self, chains: &TableChains, cap: usize) -> Result<LargeMindedReasoner> {
        for name in self.candidates.keys().chain(self.allow.keys()) {
            if !chains.attributes.contains(name) {
                return Err(Error::Unknown {
                    what: "attribute",
                    name: name.clone(),
                });
            }
        }
        let mut candidates = Vec::new();
        let mut allow = Vec::new();
        for (attribute, values) in chains.attributes.iter().zip(&chains.values) {
            let k = values.len();
            let full = catalan(k);
            if !self.candidates.contains_key(attribute)
                && full > (cap.max(MATERIALIZE_LIMIT)) as u128
            {
                return Err(Error::Capacity(format!(
                    "attribute `{attribute}` has {k} values; its universal block distribution \
                     ({full} systems) is too large to list"
                )));
            }
            let ubd = ubd_chain(k)?;
            let chosen: Vec<usize> = match self.candidates.get(attribute) {
                Some(list) => list.clone(),
                None => (0..ubd.len()).collect(),
            };
            if let Some(&bad) = chosen.iter().find(|&&i| i >= ubd.len()) {
                return Err(Error::Parameter(format!(
                    "candidate index {bad} out of range for `{attribute}` ({} systems)",
                    ubd.len()
                )));
            }
            candidates.push(chosen.iter().map(|&i| ubd.systems[i].clone()).collect());
            allow.push(self.allow.get(attribute).map(|list| {
                chosen
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| list.contains(u))
                    .map(|(p, _)| p)
                    .collect()
            }));
        }
        LargeMindedReasoner::new(candidates, DomainFilter { allow })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    /// Every tuple attaining the best quality.
    #[default]
    MaxQuality,
    TopK(usize),
    Threshold(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedTuple {
    pub tuple: Vec<usize>,
    pub quality: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LmrOutcome {
    /// Number of in-domain tuples evaluated.
    pub evaluated: usize,
    /// Candidate positions dropped per attribute by the decision-change test.
    pub eliminated: Vec<Vec<usize>>,
    pub notice: Option<String>,
    /// Every evaluated tuple, best first.
    pub ranking: Vec<RankedTuple>,
    pub models: Vec<ToleranceModel>,
}

/// Chain positions where `system` separates neighbouring ranks.
fn cut_positions(system: &ChainBlockSystem) -> Vec<usize> {
    let k = system.n();
    let mut cuts: Vec<usize> = system
        .intervals()
        .iter()
        .flat_map(|&(lo, hi)| [lo, hi + 1])
        .filter(|&c| 0 < c && c < k)
        .collect();
    cuts.sort_unstable();
    cuts.dedup();
    cuts
}

/// Whether every cut of `system` sees a decision change of at least `delta`
/// between the ranks up to the previous cut and those up to the next.
fn survives(system: &ChainBlockSystem, ranks: &[usize], decisions: &[Value], delta: f64) -> bool {
    if delta == 0.0 {
        return true;
    }
    let cuts = cut_positions(system);
    cuts.iter().enumerate().all(|(j, &c)| {
        let prev = if j == 0 { 0 } else { cuts[j - 1] };
        let next = cuts.get(j + 1).copied().unwrap_or(system.n());
        let side = |lo: usize, hi: usize| {
            ranks
                .iter()
                .zip(decisions)
                .filter(move |(&r, _)| lo <= r && r < hi)
                .map(|(_, d)| d)
        };
        total_variation(side(prev, c), side(c, next)) >= delta
    })
}

fn tuples(positions: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for list in positions {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&p| {
                    let mut t = prefix.clone();
                    t.push(p);
                    t
                })
            })
            .collect();
    }
    out
}

fn evaluate(
    psi: &LargeMindedReasoner,
    chains: &TableChains,
    domain: &[Vec<usize>],
) -> Result<Vec<f64>> {
    let quality = |t: &Vec<usize>| -> Result<f64> {
        let (bs, _) = lmr_apply(psi, t, &chains.ranks)?;
        decision_quality(&bs, &chains.classes)
    };
    let workers = thread::available_parallelism()
        .map_or(1, usize::from)
        .min(domain.len() / 64 + 1);
    if workers <= 1 {
        return domain.iter().map(quality).collect();
    }
    let chunk = domain.len().div_ceil(workers);
    thread::scope(|s| {
        let handles: Vec<_> = domain
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(quality).collect::<Result<Vec<f64>>>()))
            .collect();
        let mut out = Vec::with_capacity(domain.len());
        for h in handles {
            out.extend(h.join().expect("evaluation worker panicked")?);
        }
        Ok(out)
    })
}

/// Evaluates every in-domain tuple that survives the decision-change test,
/// ranks by decision quality (ties by tuple, ascending) and keeps the models
/// chosen by `selection`.
pub fn agrssa_lmr(
    t: &InformationTable,
    psi: &LargeMindedReasoner,
    delta: f64,
    selection: Selection,
    cap: usize,
) -> Result<LmrOutcome> {
    let chains = TableChains::new(t)?;
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::Parameter(format!(
            "delta must lie in [0, 1], got {delta}"
        )));
    }
    match selection {
        Selection::TopK(0) => return Err(Error::Parameter("top-k needs k >= 1".into())),
        Selection::Threshold(th) if !(0.0..=1.0).contains(&th) => {
            return Err(Error::Parameter(format!(
                "threshold must lie in [0, 1], got {th}"
            )))
        }
        _ => {}
    }
    if psi.candidates.len() != chains.attributes.len() {
        return Err(Error::Dimension {
            expected: chains.attributes.len(),
            found: psi.candidates.len(),
        });
    }
    for (i, list) in psi.candidates.iter().enumerate() {
        let k = chains.values[i].len();
        if list[0].n() != k {
            return Err(Error::Parameter(format!(
                "candidates for `{}` live on a chain of length {}, the attribute has {k} values",
                chains.attributes[i],
                list[0].n()
            )));
        }
    }

    let mut eliminated = Vec::new();
    let mut positions = Vec::new();
    for (i, list) in psi.candidates.iter().enumerate() {
        let (keep, drop): (Vec<usize>, Vec<usize>) = (0..list.len())
            .filter(|&p| psi.filter.admits(i, p))
            .partition(|&p| survives(&list[p], &chains.ranks[i], &chains.decisions, delta));
        eliminated.push(drop);
        positions.push(keep);
    }
    let sizes: Vec<usize> = positions.iter().map(Vec::len).collect();
    let count = sizes
        .iter()
        .fold(1u128, |acc, &s| acc.saturating_mul(s as u128));
    if count > cap as u128 {
        let named: Vec<String> = chains
            .attributes
            .iter()
            .zip(&sizes)
            .map(|(a, s)| format!("{a}: {s}"))
            .collect();
        return Err(Error::Capacity(format!(
            "{count} candidate tuples ({}) exceed the cap {cap}",
            named.join(" x ")
        )));
    }
    if count == 0 {
        return Ok(LmrOutcome {
            evaluated: 0,
            eliminated,
            notice: Some("empty domain: no candidate tuple is admitted".into()),
            ranking: Vec::new(),
            models: Vec::new(),
        });
    }

    let domain = tuples(&positions);
    let qualities = evaluate(psi, &chains, &domain)?;
    let mut ranking: Vec<RankedTuple> = domain
        .into_iter()
        .zip(qualities)
        .map(|(tuple, quality)| RankedTuple { tuple, quality })
        .collect();
    ranking.sort_by(|a, b| {
        b.quality
            .total_cmp(&a.quality)
            .then_with(|| a.tuple.cmp(&b.tuple))
    });

    let chosen: Vec<usize> = match selection {
        Selection::MaxQuality => {
            let best = ranking[0].quality;
            (0..ranking.len())
                .take_while(|&i| ranking[i].quality == best)
                .collect()
        }
        Selection::TopK(k) => (0..ranking.len().min(k)).collect(),
        Selection::Threshold(th) => (0..ranking.len())
            .take_while(|&i| ranking[i].quality >= th)
            .collect(),
    };
    let models = chosen
        .into_iter()
        .map(|rank| {
            let tuple = &ranking[rank].tuple;
            let choices = tuple
                .iter()
                .zip(&psi.candidates)
                .map(|(&p, c)| (p, c[p].clone()))
                .collect();
            let source = ModelSource::Lmr {
                tuple: tuple.clone(),
                delta,
                rank,
            };
            ToleranceModel::build(&chains, choices, source)
        })
        .collect::<Result<_>>()?;
    Ok(LmrOutcome {
        evaluated: ranking.len(),
        eliminated,
        notice: None,
        ranking,
        models,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{agrssa_m, agrssa_m_candidates, combine, AgrssaConfig};
    use super::*;
    use crate::sets::IndexSet;

    fn set(xs: &[usize]) -> IndexSet {
        xs.iter().copied().collect()
    }

    /// Nine objects on a 3x3 grid of two three-valued attributes.
    fn nine() -> InformationTable {
        numeric_table(
            &[
                ("a", vec![1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 3.0, 3.0]),
                ("b", vec![1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 1.0, 2.0, 3.0]),
            ],
            &["p", "p", "q", "p", "p", "q", "q", "q", "q"],
        )
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<u128> = (0..8).map(catalan).collect();
        assert_eq!(c, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn apply_extremes() {
        let chains = TableChains::new(&six()).unwrap();
        let psi = LargeMindedReasoner::full_ubd(&chains.chain_lengths()).unwrap();
        let (top, _) = lmr_apply(&psi, &[0, 0], &chains.ranks).unwrap();
        assert_eq!(top.blocks(), &[IndexSet::full(6)]);
        let bottom = [psi.candidates[0].len() - 1, psi.candidates[1].len() - 1];
        let (bs, _) = lmr_apply(&psi, &bottom, &chains.ranks).unwrap();
        assert_eq!(bs.len(), 6);
        assert!(bs.blocks().iter().all(|b| b.len() == 1));
    }

    #[test]
    fn apply_hand_product() {
        let chains = TableChains::new(&six()).unwrap();
        let psi = LargeMindedReasoner::full_ubd(&chains.chain_lengths()).unwrap();
        let a = psi.candidates[0]
            .iter()
            .position(|s| s.intervals() == [(0, 1), (1, 2)])
            .unwrap();
        let (bs, _) = lmr_apply(&psi, &[a, 1], &chains.ranks).unwrap();
        assert_eq!(
            bs.blocks(),
            &[set(&[0, 2]), set(&[1, 3]), set(&[2, 4]), set(&[3, 5])]
        );
    }

    #[test]
    fn apply_outside_domain() {
        let chains = TableChains::new(&six()).unwrap();
        let mut psi = LargeMindedReasoner::full_ubd(&chains.chain_lengths()).unwrap();
        psi.filter = DomainFilter {
            allow: vec![Some([0].into()), None],
        };
        assert!(lmr_apply(&psi, &[0, 1], &chains.ranks).is_ok());
        assert!(matches!(
            lmr_apply(&psi, &[1, 1], &chains.ranks),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            lmr_apply(&psi, &[0, 9], &chains.ranks),
            Err(Error::Domain(_))
        ));
    }

    fn brute_force(t: &InformationTable) -> Vec<(Vec<usize>, f64)> {
        // Independent path: object tolerance from interval co-membership,
        // blocks by brute-force maximal cliques, quality from definitions.
        let chains = TableChains::new(t).unwrap();
        let ubd_a = ubd_chain(3).unwrap().systems;
        let ubd_b = ubd_chain(3).unwrap().systems;
        let n = chains.num_objects();
        let mut out = Vec::new();
        for (i, sa) in ubd_a.iter().enumerate() {
            for (j, sb) in ubd_b.iter().enumerate() {
                let near = |s: &ChainBlockSystem, x: usize, y: usize| {
                    s.intervals()
                        .iter()
                        .any(|&(lo, hi)| lo <= x && x <= hi && lo <= y && y <= hi)
                };
                let rel = |x: usize, y: usize| {
                    near(sa, chains.ranks[0][x], chains.ranks[0][y])
                        && near(sb, chains.ranks[1][x], chains.ranks[1][y])
                };
                let cliques: Vec<Vec<usize>> = (1u32..1 << n)
                    .map(|m| (0..n).filter(|&o| m >> o & 1 == 1).collect::<Vec<_>>())
                    .filter(|c| c.iter().all(|&x| c.iter().all(|&y| rel(x, y))))
                    .collect();
                let maximal: Vec<&Vec<usize>> = cliques
                    .iter()
                    .filter(|c| {
                        !cliques
                            .iter()
                            .any(|d| d.len() > c.len() && c.iter().all(|x| d.contains(x)))
                    })
                    .collect();
                let mut positive = vec![false; n];
                for class in &chains.classes {
                    for b in &maximal {
                        if b.iter().all(|&o| class.contains(o)) {
                            for &o in b.iter() {
                                positive[o] = true;
                            }
                        }
                    }
                }
                let q = positive.iter().filter(|&&p| p).count() as f64 / n as f64;
                out.push((vec![i, j], q));
            }
        }
        out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    #[test]
    fn nine_object_ranking_matches_brute_force() {
        let t = nine();
        let psi = LargeMindedReasoner::full_ubd(&[3, 3]).unwrap();
        let out = agrssa_lmr(&t, &psi, 0.0, Selection::TopK(100), DEFAULT_CAP).unwrap();
        assert_eq!(out.evaluated, 25);
        let expected = brute_force(&t);
        let got: Vec<(Vec<usize>, f64)> = out
            .ranking
            .iter()
            .map(|r| (r.tuple.clone(), r.quality))
            .collect();
        assert_eq!(got, expected);
        let best = agrssa_lmr(&t, &psi, 0.0, Selection::MaxQuality, DEFAULT_CAP).unwrap();
        assert!(best
            .models
            .iter()
            .all(|m| m.decision_quality == expected[0].1));
        assert_eq!(expected[0].1, 1.0);
    }

    #[test]
    fn singleton_domain_matches_agrssa_m() {
        let t = eight();
        let cfg = AgrssaConfig::default();
        let m = agrssa_m(&t, &cfg).unwrap();
        let cands = agrssa_m_candidates(&t, &cfg).unwrap();
        let psi = LargeMindedReasoner::new(
            cands.iter().map(|c| vec![c.systems[0].clone()]).collect(),
            DomainFilter::all(),
        )
        .unwrap();
        let out = agrssa_lmr(&t, &psi, 0.0, Selection::MaxQuality, DEFAULT_CAP).unwrap();
        assert_eq!(out.models.len(), 1);
        assert_eq!(out.models[0].table_blocks, m.table_blocks);
        assert_eq!(out.models[0].per_attribute, m.per_attribute);
        assert_eq!(out.models[0].decision_quality, m.decision_quality);
    }

    #[test]
    fn empty_domain_notice() {
        let psi = LargeMindedReasoner::new(
            vec![ubd_chain(8).unwrap().systems, ubd_chain(8).unwrap().systems],
            DomainFilter {
                allow: vec![Some(BTreeSet::new()), None],
            },
        )
        .unwrap();
        let out = agrssa_lmr(&eight(), &psi, 0.0, Selection::MaxQuality, DEFAULT_CAP).unwrap();
        assert!(out.models.is_empty());
        assert_eq!(out.evaluated, 0);
        assert!(out.notice.is_some());
    }

    #[test]
    fn cap_exceeded_names_sizes() {
        let t = numeric_table(
            &[
                ("a", vec![1.0, 2.0, 3.0, 4.0]),
                ("b", vec![4.0, 3.0, 2.0, 1.0]),
            ],
            &["p", "q", "p", "q"],
        );
        let psi = LargeMindedReasoner::full_ubd(&[4, 4]).unwrap();
        match agrssa_lmr(&t, &psi, 0.0, Selection::MaxQuality, 10) {
            Err(Error::Capacity(msg)) => assert!(msg.contains("a: 14 x b: 14"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn delta_eliminates_candidates() {
        let t = numeric_table(&[("a", vec![1.0, 2.0, 3.0, 4.0])], &["p", "p", "q", "q"]);
        let psi = LargeMindedReasoner::full_ubd(&[4]).unwrap();
        let out = agrssa_lmr(&t, &psi, 1.0, Selection::TopK(50), DEFAULT_CAP).unwrap();
        // survivors: the total system and {[0,1],[2,3]} (the only cut at 2)
        let kept: Vec<&[(usize, usize)]> = out
            .ranking
            .iter()
            .map(|r| psi.candidates[0][r.tuple[0]].intervals())
            .collect();
        assert_eq!(kept.len(), 2);
        assert!(kept.contains(&&[(0, 1), (2, 3)][..]));
        assert!(kept.contains(&&[(0, 3)][..]));
        assert_eq!(out.models[0].decision_quality, 1.0);
    }

    #[test]
    fn coarsening_overlapping_blocks_can_raise_quality() {
        // ranks (a, b): (0,0) (1,1) (2,2) (3,3) (3,1) (3,0)
        let t = numeric_table(
            &[
                ("a", vec![0.0, 1.0, 2.0, 3.0, 3.0, 3.0]),
                ("b", vec![0.0, 1.0, 2.0, 3.0, 1.0, 0.0]),
            ],
            &["y", "y", "y", "y", "n", "n"],
        );
        let chains = TableChains::new(&t).unwrap();
        let a = ChainBlockSystem::new(4, vec![(0, 2), (1, 3)]).unwrap();
        let fine = ChainBlockSystem::new(4, vec![(0, 0), (1, 3)]).unwrap();
        let coarse = ChainBlockSystem::total(4).unwrap();
        let quality = |b: &ChainBlockSystem| {
            let (bs, _) = combine(&[a.clone(), b.clone()], &chains.ranks, 6).unwrap();
            let q = decision_quality(&bs, &chains.classes).unwrap();
            (bs, q)
        };
        let (fine_blocks, q_fine) = quality(&fine);
        let (coarse_blocks, q_coarse) = quality(&coarse);
        assert_eq!(
            fine_blocks.blocks(),
            &[set(&[0]), set(&[1, 2, 3, 4]), set(&[5])]
        );
        assert_eq!(
            coarse_blocks.blocks(),
            &[set(&[0, 1, 2]), set(&[1, 2, 3, 4, 5])]
        );
        // {0,1,2} lies inside the y class only once b is coarsened
        assert_eq!((q_fine, q_coarse), (2.0 / 6.0, 3.0 / 6.0));
    }

    #[test]
    fn psi_config_maps_ubd_indices() {
        let chains = TableChains::new(&six()).unwrap();
        let cfg: PsiConfig =
            serde_json::from_str(r#"{"candidates": {"a": [0, 4]}, "allow": {"a": [4], "b": [1]}}"#)
                .unwrap();
        let psi = cfg.build(&chains, DEFAULT_CAP).unwrap();
        assert_eq!(psi.candidates[0].len(), 2);
        assert_eq!(psi.candidates[1].len(), 2);
        assert!(psi.in_domain(&[1, 1]));
        assert!(!psi.in_domain(&[0, 1]));
        assert!(!psi.in_domain(&[1, 0]));
        let bad: PsiConfig = serde_json::from_str(r#"{"candidates": {"a": [5]}}"#).unwrap();
        assert!(matches!(
            bad.build(&chains, DEFAULT_CAP),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn selection_rules() {
        let t = nine();
        let psi = LargeMindedReasoner::full_ubd(&[3, 3]).unwrap();
        let top = agrssa_lmr(&t, &psi, 0.0, Selection::TopK(3), DEFAULT_CAP).unwrap();
        assert_eq!(top.models.len(), 3);
        let th = agrssa_lmr(&t, &psi, 0.0, Selection::Threshold(0.0), DEFAULT_CAP).unwrap();
        assert_eq!(th.models.len(), 25);
        assert!(agrssa_lmr(&t, &psi, 0.0, Selection::TopK(0), DEFAULT_CAP).is_err());
        assert!(agrssa_lmr(&t, &psi, 0.0, Selection::Threshold(2.0), DEFAULT_CAP).is_err());
        let qs: Vec<f64> = th.models.iter().map(|m| m.decision_quality).collect();
        assert!(qs.windows(2).all(|w| w[0] >= w[1]));
    }
}
