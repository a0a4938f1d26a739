//! Quantile-driven discovery of chain tolerances per attribute and their
//! combination into table-level block systems.

mod boundaries;
mod explain;
mod reasoner;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use boundaries::{
    intervals_to_chain_blocks, prune_boundaries, quantile_boundaries, total_variation,
    BoundarySpec, Cut, Discretization, SpreadMode, DEFAULT_E_FRACTION,
};
pub use explain::{explain, Explanation, InterpretedReasoner};
pub use reasoner::{
    agrssa_lmr, lmr_apply, DomainFilter, LargeMindedReasoner, LmrOutcome, PsiConfig, Selection,
    DEFAULT_CAP,
};

use crate::approx::lower;
use crate::blocks::BlockSystem;
use crate::chain::{enumerate_chain_tolerances, ChainBlockSystem, UniversalBlockDistribution};
use crate::error::{Error, Result};
use crate::sets::IndexSet;
use crate::table::{InformationTable, Value};

/// Universal block distribution of the chain `0 < 1 < … < n−1`.
pub fn ubd_chain(n: usize) -> Result<UniversalBlockDistribution> {
    enumerate_chain_tolerances(n)
}

/// The conditional attributes of a table seen as value chains, plus the
/// decision classes.
#[derive(Debug, Clone, PartialEq)]
pub struct TableChains {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    /// Distinct values per attribute in chain order.
    pub values: Vec<Vec<Value>>,
    /// `ranks[a][o]` is the chain position of object `o` on attribute `a`.
    pub ranks: Vec<Vec<usize>>,
    pub decisions: Vec<Value>,
    pub classes: Vec<IndexSet>,
}

impl TableChains {
    pub fn new(t: &InformationTable) -> Result<Self> {
        let decision = t
            .decision_attribute()
            .ok_or_else(|| Error::Parameter("a decision attribute is required".into()))?;
        let decisions: Vec<Value> = t.column(decision)?.into_iter().cloned().collect();
        let mut by_class: BTreeMap<&Value, IndexSet> = BTreeMap::new();
        for (o, d) in decisions.iter().enumerate() {
            by_class.entry(d).or_default().insert(o);
        }
        let classes = by_class.into_values().collect();
        let attributes: Vec<String> = t
            .conditional_attributes()
            .into_iter()
            .map(String::from)
            .collect();
        if attributes.is_empty() {
            return Err(Error::Schema("no conditional attributes".into()));
        }
        let mut values = Vec::new();
        let mut ranks = Vec::new();
        for a in &attributes {
            let (v, r) = t.chain(a)?;
            values.push(v);
            ranks.push(r);
        }
        Ok(TableChains {
            objects: t.objects().to_vec(),
            attributes,
            values,
            ranks,
            decisions,
            classes,
        })
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn chain_lengths(&self) -> Vec<usize> {
        self.values.iter().map(Vec::len).collect()
    }
}

/// Table blocks from one chain block system per attribute.
///
/// Object `o` lies in the image of a product block `∏ bᵢ` iff its rank on
/// each attribute `i` falls in `bᵢ`. The table blocks are the maximal
/// nonempty images; each comes with every interval-index tuple producing it,
/// in lexicographic order.
pub fn combine(
    systems: &[ChainBlockSystem],
    ranks: &[Vec<usize>],
    num_objects: usize,
) -> Result<(BlockSystem, Vec<Vec<Vec<usize>>>)> {
    if systems.len() != ranks.len() {
        return Err(Error::Dimension {
            expected: ranks.len(),
            found: systems.len(),
        });
    }
    let mut members: Vec<Vec<IndexSet>> = Vec::with_capacity(systems.len());
    for (sys, r) in systems.iter().zip(ranks) {
        if r.len() != num_objects {
            return Err(Error::Dimension {
                expected: num_objects,
                found: r.len(),
            });
        }
        if let Some(&bad) = r.iter().find(|&&x| x >= sys.n()) {
            return Err(Error::Contract(format!(
                "rank {bad} outside a chain of length {}",
                sys.n()
            )));
        }
        members.push(
            sys.intervals()
                .iter()
                .map(|&(lo, hi)| {
                    (0..num_objects)
                        .filter(|&o| lo <= r[o] && r[o] <= hi)
                        .collect()
                })
                .collect(),
        );
    }
    let mut images: BTreeMap<IndexSet, Vec<Vec<usize>>> = BTreeMap::new();
    let mut tuple = Vec::with_capacity(systems.len());
    descend(
        &members,
        IndexSet::full(num_objects),
        &mut tuple,
        &mut images,
    );
    let table = BlockSystem::from_candidates(num_objects, images.keys().cloned().collect())?;
    let factors = table.blocks().iter().map(|b| images[b].clone()).collect();
    Ok((table, factors))
}

fn descend(
    members: &[Vec<IndexSet>],
    acc: IndexSet,
    tuple: &mut Vec<usize>,
    images: &mut BTreeMap<IndexSet, Vec<Vec<usize>>>,
) {
    let depth = tuple.len();
    if depth == members.len() {
        images.entry(acc).or_default().push(tuple.clone());
        return;
    }
    for (j, set) in members[depth].iter().enumerate() {
        let next = acc.intersection(set);
        if next.is_empty() {
            continue;
        }
        tuple.push(j);
        descend(members, next, tuple, images);
        tuple.pop();
    }
}

/// `|⋃ⱼ lower(Dⱼ)| / |U|` over the decision classes `Dⱼ`.
pub fn decision_quality(bs: &BlockSystem, classes: &[IndexSet]) -> Result<f64> {
    let n = bs.universe_size();
    let mut positive = IndexSet::with_capacity(n);
    for d in classes {
        positive.union_with(&lower(bs, d)?.set);
    }
    Ok(positive.len() as f64 / n as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeChoice {
    pub attribute: String,
    /// The attribute's value chain; interval endpoints index into it.
    pub values: Vec<Value>,
    /// Position of `system` among the attribute's candidates.
    pub candidate: usize,
    pub system: ChainBlockSystem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum ModelSource {
    AgrssaM {
        sigma: Vec<usize>,
        delta: f64,
        boundaries: Vec<BoundarySpec>,
        repairs: Vec<Vec<String>>,
    },
    Lmr {
        tuple: Vec<usize>,
        delta: f64,
        rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceModel {
    pub objects: Vec<String>,
    pub per_attribute: Vec<AttributeChoice>,
    pub table_blocks: BlockSystem,
    /// For each table block, the interval-index tuples whose image it is.
    pub block_factors: Vec<Vec<Vec<usize>>>,
    pub decision_quality: f64,
    pub provenance: ModelSource,
}

impl ToleranceModel {
    pub(crate) fn build(
        chains: &TableChains,
        choices: Vec<(usize, ChainBlockSystem)>,
        provenance: ModelSource,
    ) -> Result<Self> {
        let systems: Vec<ChainBlockSystem> = choices.iter().map(|(_, s)| s.clone()).collect();
        let (table_blocks, block_factors) = combine(&systems, &chains.ranks, chains.num_objects())?;
        let decision_quality = decision_quality(&table_blocks, &chains.classes)?;
        let per_attribute = choices
            .into_iter()
            .enumerate()
            .map(|(i, (candidate, system))| AttributeChoice {
                attribute: chains.attributes[i].clone(),
                values: chains.values[i].clone(),
                candidate,
                system,
            })
            .collect();
        Ok(ToleranceModel {
            objects: chains.objects.clone(),
            per_attribute,
            table_blocks,
            block_factors,
            decision_quality,
            provenance,
        })
    }

    pub fn systems(&self) -> Vec<ChainBlockSystem> {
        self.per_attribute
            .iter()
            .map(|c| c.system.clone())
            .collect()
    }
}

fn default_q() -> usize {
    1
}

fn default_e_fraction() -> f64 {
    DEFAULT_E_FRACTION
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttributeSettings {
    #[serde(default = "default_q")]
    pub q: usize,
    #[serde(default)]
    pub e_mode: SpreadMode,
    #[serde(default = "default_e_fraction")]
    pub e_fraction: f64,
}

impl Default for AttributeSettings {
    fn default() -> Self {
        AttributeSettings {
            q: default_q(),
            e_mode: SpreadMode::default(),
            e_fraction: DEFAULT_E_FRACTION,
        }
    }
}

/// Pipeline configuration shared by both schemes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgrssaConfig {
    /// Boundary settings by attribute name; missing attributes use defaults.
    #[serde(default)]
    pub attributes: BTreeMap<String, AttributeSettings>,
    #[serde(default)]
    pub delta: f64,
    /// One candidate index per conditional attribute; all zeros if absent.
    #[serde(default)]
    pub sigma: Option<Vec<usize>>,
    /// Reserved for a permutation of the product index set. Must be absent.
    #[serde(default)]
    pub permutation: Option<serde_json::Value>,
    #[serde(default)]
    pub psi: Option<PsiConfig>,
    #[serde(default)]
    pub selection: Selection,
    #[serde(default = "reasoner::default_cap")]
    pub cap: usize,
}

impl Default for AgrssaConfig {
    fn default() -> Self {
        AgrssaConfig {
            attributes: BTreeMap::new(),
            delta: 0.0,
            sigma: None,
            permutation: None,
            psi: None,
            selection: Selection::default(),
            cap: DEFAULT_CAP,
        }
    }
}

impl AgrssaConfig {
    pub fn settings(&self, attribute: &str) -> AttributeSettings {
        self.attributes.get(attribute).copied().unwrap_or_default()
    }

    fn check(&self, chains: &TableChains) -> Result<()> {
        if self.permutation.is_some() {
            return Err(Error::Parameter(
                "permutation semantics are reserved and not supported; use sigma".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::Parameter(format!(
                "delta must lie in [0, 1], got {}",
                self.delta
            )));
        }
        if let Some(name) = self
            .attributes
            .keys()
            .find(|a| !chains.attributes.contains(a))
        {
            return Err(Error::Unknown {
                what: "attribute",
                name: name.clone(),
            });
        }
        Ok(())
    }
}

/// The admissible chain block systems for one attribute: the system from
/// the pruned boundaries first, then the unpruned one if it differs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeCandidates {
    pub attribute: String,
    pub boundaries: BoundarySpec,
    pub pruned: BoundarySpec,
    pub systems: Vec<ChainBlockSystem>,
    pub repairs: Vec<Vec<String>>,
}

pub fn agrssa_m_candidates(
    t: &InformationTable,
    config: &AgrssaConfig,
) -> Result<Vec<AttributeCandidates>> {
    let chains = TableChains::new(t)?;
    config.check(&chains)?;
    candidates_for(&chains, config)
}

fn candidates_for(chains: &TableChains, config: &AgrssaConfig) -> Result<Vec<AttributeCandidates>> {
    let mut out = Vec::new();
    for (i, attribute) in chains.attributes.iter().enumerate() {
        // ordered categorical chains are discretized on their rank positions
        let chain_values: Vec<f64> = match chains.values[i].iter().map(Value::as_f64).collect() {
            Some(v) => v,
            None => (0..chains.values[i].len()).map(|r| r as f64).collect(),
        };
        let column: Vec<f64> = chains.ranks[i].iter().map(|&r| chain_values[r]).collect();
        let s = config.settings(attribute);
        let spec = quantile_boundaries(attribute, &column, s.q, s.e_mode, s.e_fraction)?;
        let pruned = prune_boundaries(&spec, &column, &chains.decisions, config.delta)?;
        let first = intervals_to_chain_blocks(&pruned, &chain_values)?;
        let second = intervals_to_chain_blocks(&spec, &chain_values)?;
        let mut systems = vec![first.system];
        let mut repairs = vec![first.repairs];
        if second.system != systems[0] {
            systems.push(second.system);
            repairs.push(second.repairs);
        }
        out.push(AttributeCandidates {
            attribute: attribute.clone(),
            boundaries: spec,
            pruned,
            systems,
            repairs,
        });
    }
    Ok(out)
}

/// The minimal scheme: quantile boundaries, pruning, one chain system per
/// attribute chosen by `sigma`, and the product combination.
pub fn agrssa_m(t: &InformationTable, config: &AgrssaConfig) -> Result<ToleranceModel> {
    let chains = TableChains::new(t)?;
    config.check(&chains)?;
    let candidates = candidates_for(&chains, config)?;
    let sigma = config
        .sigma
        .clone()
        .unwrap_or_else(|| vec![0; chains.attributes.len()]);
    if sigma.len() != candidates.len() {
        return Err(Error::Parameter(format!(
            "sigma has {} entries for {} conditional attributes",
            sigma.len(),
            candidates.len()
        )));
    }
    let mut choices = Vec::new();
    let mut repairs = Vec::new();
    for (c, &s) in candidates.iter().zip(&sigma) {
        let system = c.systems.get(s).ok_or_else(|| {
            Error::Parameter(format!(
                "sigma index {s} out of range for `{}` with {} candidates",
                c.attribute,
                c.systems.len()
            ))
        })?;
        choices.push((s, system.clone()));
        repairs.push(c.repairs[s].clone());
    }
    let provenance = ModelSource::AgrssaM {
        sigma,
        delta: config.delta,
        boundaries: candidates.iter().map(|c| c.pruned.clone()).collect(),
        repairs,
    };
    ToleranceModel::build(&chains, choices, provenance)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::table::{InformationTable, Value};

    pub fn numeric_table(columns: &[(&str, Vec<f64>)], decision: &[&str]) -> InformationTable {
        let n = decision.len();
        let objects: Vec<String> = (1..=n).map(|i| format!("o{i}")).collect();
        let mut attributes: Vec<String> = columns.iter().map(|(a, _)| a.to_string()).collect();
        attributes.push("d".into());
        let mut cells: Vec<Vec<_>> = columns
            .iter()
            .map(|(_, vs)| {
                vs.iter()
                    .map(|&v| [Value::Num(v)].into_iter().collect())
                    .collect()
            })
            .collect();
        cells.push(
            decision
                .iter()
                .map(|d| [Value::Cat(d.to_string())].into_iter().collect())
                .collect(),
        );
        InformationTable::new(objects, attributes, cells, Some("d")).unwrap()
    }

    /// Eight objects, two attributes, decision flipping across quadrants.
    pub fn eight() -> InformationTable {
        numeric_table(
            &[
                ("x", (1..=8).map(f64::from).collect()),
                ("y", vec![1.0, 5.0, 2.0, 6.0, 3.0, 7.0, 4.0, 8.0]),
            ],
            &["A", "A", "A", "B", "B", "B", "B", "A"],
        )
    }

    /// All six combinations of `a ∈ {1,2,3}` and `b ∈ {1,2}`.
    pub fn six() -> InformationTable {
        numeric_table(
            &[
                ("a", vec![1.0, 1.0, 2.0, 2.0, 3.0, 3.0]),
                ("b", vec![1.0, 2.0, 1.0, 2.0, 1.0, 2.0]),
            ],
            &["p", "p", "p", "q", "q", "q"],
        )
    }
}
