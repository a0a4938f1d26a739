//! Soft/hard cluster validation against the rough model of a combined
//! tolerance.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::approx::{self, GranularApproximation};
use crate::blocks::{blocks, BlockSystem};
use crate::error::{Error, Result};
use crate::sets::IndexSet;
use crate::table::InformationTable;
use crate::tolerance::{similarity_matrix, CombineMode, DistanceSpec, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClusteringKind {
    Soft,
    Hard,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub core: IndexSet,
    #[serde(default)]
    pub exterior: IndexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoftClustering {
    pub kind: ClusteringKind,
    pub clusters: Vec<Cluster>,
}

impl SoftClustering {
    /// A hard clustering from one label per object.
    pub fn from_labels(labels: &[usize]) -> Self {
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let mut clusters = vec![
            Cluster {
                core: IndexSet::new(),
                exterior: IndexSet::new(),
            };
            k
        ];
        for (object, &label) in labels.iter().enumerate() {
            clusters[label].core.insert(object);
        }
        Self {
            kind: ClusteringKind::Hard,
            clusters,
        }
    }
}

/// Clustering as written on disk, with object identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusteringFile {
    pub kind: ClusteringKind,
    pub clusters: Vec<NamedCluster>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCluster {
    pub core: Vec<String>,
    #[serde(default)]
    pub exterior: Vec<String>,
}

impl ClusteringFile {
    pub fn resolve(&self, table: &InformationTable) -> Result<SoftClustering> {
        let ids = |names: &[String]| -> Result<IndexSet> {
            names.iter().map(|n| table.object_index(n)).collect()
        };
        let clusters = self
            .clusters
            .iter()
            .map(|c| {
                Ok(Cluster {
                    core: ids(&c.core)?,
                    exterior: ids(&c.exterior)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(SoftClustering {
            kind: self.kind,
            clusters,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum ClusteringViolation {
    OutOfRange { cluster: usize, index: usize },
    CoresNotDisjoint { first: usize, second: usize },
    ExteriorMeetsOwnCore { cluster: usize },
    HardWithExterior { cluster: usize },
    HardNotCovering { element: usize },
}

impl fmt::Display for ClusteringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OutOfRange { cluster, index } => {
                write!(
                    f,
                    "cluster {cluster} refers to object {index} outside the universe"
                )
            }
            Self::CoresNotDisjoint { first, second } => {
                write!(f, "cores not disjoint: clusters {first} and {second}")
            }
            Self::ExteriorMeetsOwnCore { cluster } => {
                write!(f, "exterior meets own core in cluster {cluster}")
            }
            Self::HardWithExterior { cluster } => {
                write!(
                    f,
                    "hard clustering has a nonempty exterior in cluster {cluster}"
                )
            }
            Self::HardNotCovering { element } => {
                write!(f, "hard clustering leaves object {element} unassigned")
            }
        }
    }
}

/// Checks disjointness of cores, core/exterior separation and, for hard
/// clusterings, that the cores partition the universe.
pub fn check_clustering(
    c: &SoftClustering,
    universe_size: usize,
) -> Result<(), ClusteringViolation> {
    for (i, cl) in c.clusters.iter().enumerate() {
        if let Some(m) = cl.core.union(&cl.exterior).last() {
            if m >= universe_size {
                return Err(ClusteringViolation::OutOfRange {
                    cluster: i,
                    index: m,
                });
            }
        }
    }
    for (i, a) in c.clusters.iter().enumerate() {
        for (j, b) in c.clusters.iter().enumerate().skip(i + 1) {
            if a.core.intersects(&b.core) {
                return Err(ClusteringViolation::CoresNotDisjoint {
                    first: i,
                    second: j,
                });
            }
        }
    }
    if let Some(i) = c
        .clusters
        .iter()
        .position(|cl| cl.core.intersects(&cl.exterior))
    {
        return Err(ClusteringViolation::ExteriorMeetsOwnCore { cluster: i });
    }
    if c.kind == ClusteringKind::Hard {
        if let Some(i) = c.clusters.iter().position(|cl| !cl.exterior.is_empty()) {
            return Err(ClusteringViolation::HardWithExterior { cluster: i });
        }
        let mut cover = IndexSet::with_capacity(universe_size);
        for cl in &c.clusters {
            cover.union_with(&cl.core);
        }
        if let Some(element) = cover.complement(universe_size).first() {
            return Err(ClusteringViolation::HardNotCovering { element });
        }
    }
    Ok(())
}

/// `1 - (ξ5(lower X, X) + ξ5(X, upper X)) / 2`: the share of `X` missing from
/// its lower approximation and the share of the upper approximation lying
/// outside `X`, averaged and subtracted from one. Empty sets score 1.
pub fn closeness(bs: &BlockSystem, x: &IndexSet) -> Result<f64> {
    if x.is_empty() {
        return Ok(1.0);
    }
    let a = approx::approximate(bs, x)?;
    Ok(1.0 - 0.5 * (approx::xi5(&a.lower, x)? + approx::xi5(x, &a.upper)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Scores at or above this are valid.
    pub valid: f64,
    /// Scores below this are invalid.
    pub invalid: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            valid: 0.8,
            invalid: 0.5,
        }
    }
}

impl Thresholds {
    fn check(&self) -> Result<()> {
        if !self.valid.is_finite() || !self.invalid.is_finite() || self.invalid > self.valid {
            return Err(Error::Parameter(format!(
                "thresholds must satisfy invalid <= valid, got invalid={} valid={}",
                self.invalid, self.valid
            )));
        }
        Ok(())
    }

    pub fn verdict(&self, score: f64) -> Verdict {
        if score >= self.valid {
            Verdict::Valid
        } else if score < self.invalid {
            Verdict::Invalid
        } else {
            Verdict::Marginal
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Marginal,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationConfig {
    pub distances: Vec<DistanceSpec>,
    #[serde(default)]
    pub mode: CombineMode,
    #[serde(default)]
    pub thresholds: Thresholds,
    /// Weight exteriors into the overall score by their size.
    #[serde(default)]
    pub include_exteriors: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub core: GranularApproximation,
    pub exterior: GranularApproximation,
    pub core_accuracy: f64,
    pub core_closeness: f64,
    pub exterior_closeness: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Overall {
    pub score: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelProvenance {
    pub distances: Vec<DistanceSpec>,
    pub mode: CombineMode,
    pub thresholds: Thresholds,
    pub include_exteriors: bool,
    pub tolerance: Tolerance,
    pub blocks: BlockSystem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub per_cluster: Vec<ClusterReport>,
    pub overall: Overall,
    pub model: ModelProvenance,
}

/// Scores a clustering against an already computed block system.
pub fn score_clusters(
    bs: &BlockSystem,
    c: &SoftClustering,
    thresholds: Thresholds,
    include_exteriors: bool,
) -> Result<(Vec<ClusterReport>, Overall)> {
    thresholds.check()?;
    check_clustering(c, bs.universe_size()).map_err(|v| Error::Parameter(v.to_string()))?;
    let per_cluster = c
        .clusters
        .iter()
        .map(|cl| {
            let core_closeness = closeness(bs, &cl.core)?;
            Ok(ClusterReport {
                core: approx::approximate(bs, &cl.core)?,
                exterior: approx::approximate(bs, &cl.exterior)?,
                core_accuracy: approx::accuracy(bs, &cl.core)?,
                core_closeness,
                exterior_closeness: closeness(bs, &cl.exterior)?,
                verdict: thresholds.verdict(core_closeness),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let (mut weighted, mut weight) = (0.0, 0.0);
    for (r, cl) in per_cluster.iter().zip(&c.clusters) {
        weighted += r.core_closeness * cl.core.len() as f64;
        weight += cl.core.len() as f64;
        if include_exteriors {
            weighted += r.exterior_closeness * cl.exterior.len() as f64;
            weight += cl.exterior.len() as f64;
        }
    }
    let score = if weight > 0.0 { weighted / weight } else { 1.0 };
    let any_invalid = per_cluster.iter().any(|r| r.verdict == Verdict::Invalid);
    let verdict = match thresholds.verdict(score) {
        Verdict::Valid if any_invalid => Verdict::Marginal,
        v => v,
    };
    Ok((per_cluster, Overall { score, verdict }))
}

/// Builds the combined tolerance from `config`, takes its blocks, and scores
/// every core and exterior by its granular approximations.
pub fn validate_clusters(
    table: &InformationTable,
    c: &SoftClustering,
    config: &ValidationConfig,
) -> Result<ValidationReport> {
    config.thresholds.check()?;
    check_clustering(c, table.num_objects()).map_err(|v| Error::Parameter(v.to_string()))?;
    let tolerance = similarity_matrix(table, &config.distances, config.mode)?;
    let bs = blocks(&tolerance);
    let (per_cluster, overall) =
        score_clusters(&bs, c, config.thresholds, config.include_exteriors)?;
    Ok(ValidationReport {
        per_cluster,
        overall,
        model: ModelProvenance {
            distances: config.distances.clone(),
            mode: config.mode,
            thresholds: config.thresholds,
            include_exteriors: config.include_exteriors,
            tolerance,
            blocks: bs,
        },
    })
}
