//! Tolerance relations: construction from distances, combination, pre-block
//! tests and products of chain tolerances.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sets::IndexSet;
use crate::table::{InformationTable, Value};

/// Reflexive symmetric relation on `0..size`, stored as one bitset row per
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tolerance {
    rows: Vec<IndexSet>,
}

impl Tolerance {
    pub fn identity(size: usize) -> Self {
        Self {
            rows: (0..size).map(IndexSet::singleton).collect(),
        }
    }

    pub fn total(size: usize) -> Self {
        Self {
            rows: vec![IndexSet::full(size); size],
        }
    }

    /// Builds the smallest tolerance containing `pairs`.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut t = Self::identity(size);
        for &(a, b) in pairs {
            t.relate(a, b)?;
        }
        Ok(t)
    }

    /// Builds a tolerance from a predicate evaluated on `i < j` only.
    pub fn from_fn(size: usize, mut related: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Self::identity(size);
        for i in 0..size {
            for j in i + 1..size {
                if related(i, j) {
                    t.rows[i].insert(j);
                    t.rows[j].insert(i);
                }
            }
        }
        t
    }

    /// Checks reflexivity and symmetry of an arbitrary boolean matrix.
    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Self> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
            if !row[i] {
                return Err(Error::Parameter(format!(
                    "relation is not reflexive at {i}"
                )));
            }
            for j in 0..n {
                if row[j] != matrix[j][i] {
                    return Err(Error::Parameter(format!(
                        "relation is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| matrix[i][j]))
    }

    pub fn relate(&mut self, a: usize, b: usize) -> Result<()> {
        let size = self.size();
        for x in [a, b] {
            if x >= size {
                return Err(Error::Bounds { index: x, size });
            }
        }
        self.rows[a].insert(b);
        self.rows[b].insert(a);
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    /// Elements related to `a`, including `a` itself.
    pub fn neighbourhood(&self, a: usize) -> &IndexSet {
        &self.rows[a]
    }

    /// Off-diagonal related pairs `(i, j)` with `i < j`, ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().all(|r| r.len() == 1)
    }

    pub fn is_total(&self) -> bool {
        let n = self.size();
        self.rows.iter().all(|r| r.len() == n)
    }

    fn check_set(&self, k: &IndexSet) -> Result<()> {
        match k.last() {
            Some(m) if m >= self.size() => Err(Error::Bounds {
                index: m,
                size: self.size(),
            }),
            _ => Ok(()),
        }
    }

    /// `K² ⊆ T`.
    pub fn is_pre_block(&self, k: &IndexSet) -> Result<bool> {
        self.check_set(k)?;
        Ok(k.iter().all(|a| k.is_subset(&self.rows[a])))
    }

    /// A pre-block with no pre-block strictly above it.
    pub fn is_block(&self, k: &IndexSet) -> Result<bool> {
        if !self.is_pre_block(k)? {
            return Ok(false);
        }
        // K extends by x iff x is related to every member of K
        let mut common = IndexSet::full(self.size());
        for a in k {
            common.intersect_with(&self.rows[a]);
        }
        Ok(common.difference(k).is_empty())
    }

    /// Whether the relation is preserved by `min` and `max` on the chain
    /// `0 < 1 < .. < size-1`.
    pub fn is_compatible_on_chain(&self) -> bool {
        let n = self.size();
        for a in 0..n {
            for b in self.rows[a].iter() {
                for c in 0..n {
                    for d in self.rows[c].iter() {
                        if !self.related(a.min(c), b.min(d)) || !self.related(a.max(c), b.max(d)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Serialize, Deserialize)]
struct ToleranceRepr {
    size: usize,
    pairs: Vec<(usize, usize)>,
}

/// Serialized as `{"size": n, "pairs": [[i, j], ..]}` with the diagonal implicit.
impl Serialize for Tolerance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ToleranceRepr {
            size: self.size(),
            pairs: self.pairs(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tolerance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ToleranceRepr::deserialize(deserializer)?;
        Tolerance::from_pairs(repr.size, &repr.pairs).map_err(serde::de::Error::custom)
    }
}

/// How attribute values are turned into a (not necessarily symmetric) distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceKind {
    AbsoluteDifference,
    /// `|a - b|` divided by the column range.
    NormalizedAbsoluteDifference,
    /// 0 on equal values, 1 otherwise.
    Discrete,
    /// Directed distances between value tokens; equal values default to 0.
    Table(Vec<DistanceEntry>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceEntry {
    pub from: String,
    pub to: String,
    pub distance: f64,
}

/// Which inequality turns a distance into a tolerance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Threshold {
    /// `ρ(a,b) + ρ(b,a) ≤ ε`
    #[default]
    Sum,
    /// `s / (1 + s) ≤ ε` with `s = ρ(a,b) + ρ(b,a)`
    Ratio,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceSpec {
    pub attribute: String,
    pub kind: DistanceKind,
    pub epsilon: f64,
    #[serde(default)]
    pub variant: Threshold,
}

impl DistanceSpec {
    pub fn new(attribute: impl Into<String>, kind: DistanceKind, epsilon: f64) -> Self {
        Self {
            attribute: attribute.into(),
            kind,
            epsilon,
            variant: Threshold::Sum,
        }
    }

    pub fn ratio(mut self) -> Self {
        self.variant = Threshold::Ratio;
        self
    }

    fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon < 0.0 {
            return Err(Error::Parameter(format!(
                "epsilon must be a nonnegative number, got {}",
                self.epsilon
            )));
        }
        if self.variant == Threshold::Ratio && self.epsilon >= 1.0 {
            return Err(Error::Parameter(format!(
                "ratio threshold needs epsilon < 1, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    fn admits(&self, symmetric_sum: f64) -> bool {
        match self.variant {
            Threshold::Sum => symmetric_sum <= self.epsilon,
            Threshold::Ratio => symmetric_sum / (1.0 + symmetric_sum) <= self.epsilon,
        }
    }
}

fn numeric(values: &[Value], attribute: &str) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|v| {
            v.as_f64().ok_or_else(|| {
                Error::Numeric(format!(
                    "value `{v}` of attribute `{attribute}` is not numeric"
                ))
            })
        })
        .collect()
}

type PairDistance<'a> = Box<dyn Fn(usize, usize) -> Result<f64> + 'a>;

/// Evaluates the directed distance `ρ(values[i], values[j])` for all pairs.
fn distance_fn<'a>(values: &'a [Value], spec: &'a DistanceSpec) -> Result<PairDistance<'a>> {
    Ok(match &spec.kind {
        DistanceKind::AbsoluteDifference => {
            let x = numeric(values, &spec.attribute)?;
            Box::new(move |i, j| Ok((x[i] - x[j]).abs()))
        }
        DistanceKind::NormalizedAbsoluteDifference => {
            let x = numeric(values, &spec.attribute)?;
            let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let range = hi - lo;
            Box::new(move |i, j| {
                Ok(if range > 0.0 {
                    (x[i] - x[j]).abs() / range
                } else {
                    0.0
                })
            })
        }
        DistanceKind::Discrete => {
            Box::new(move |i, j| Ok(if values[i] == values[j] { 0.0 } else { 1.0 }))
        }
        DistanceKind::Table(entries) => Box::new(move |i, j| {
            let (a, b) = (values[i].to_string(), values[j].to_string());
            match entries.iter().find(|e| e.from == a && e.to == b) {
                Some(e) => Ok(e.distance),
                None if values[i] == values[j] => Ok(0.0),
                None => Err(Error::Numeric(format!(
                    "no distance from `{a}` to `{b}` for attribute `{}`",
                    spec.attribute
                ))),
            }
        }),
    })
}

/// The tolerance `T ab ⟺ threshold(ρ(a,b) + ρ(b,a))`.
pub fn tolerance_from_distance(values: &[Value], spec: &DistanceSpec) -> Result<Tolerance> {
    spec.validate()?;
    let rho = distance_fn(values, spec)?;
    let n = values.len();
    let mut t = Tolerance::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let (dij, dji) = (rho(i, j)?, rho(j, i)?);
            if !dij.is_finite() || !dji.is_finite() || dij < 0.0 || dji < 0.0 {
                return Err(Error::Numeric(format!(
                    "distance between objects {i} and {j} is not a finite nonnegative number"
                )));
            }
            if spec.admits(dij + dji) {
                t.rows[i].insert(j);
                t.rows[j].insert(i);
            }
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CombineMode {
    #[default]
    And,
    Or,
    AtLeast(usize),
}

/// Merges several tolerances on the same set into one.
pub fn combine_tolerances(ts: &[Tolerance], mode: CombineMode) -> Result<Tolerance> {
    let first = ts
        .first()
        .ok_or_else(|| Error::Parameter("no tolerances to combine".into()))?;
    let n = first.size();
    if let Some(bad) = ts.iter().find(|t| t.size() != n) {
        return Err(Error::Dimension {
            expected: n,
            found: bad.size(),
        });
    }
    let rows = match mode {
        CombineMode::And => (0..n)
            .map(|i| {
                ts.iter().skip(1).fold(ts[0].rows[i].clone(), |mut acc, t| {
                    acc.intersect_with(&t.rows[i]);
                    acc
                })
            })
            .collect(),
        CombineMode::Or => (0..n)
            .map(|i| {
                ts.iter().skip(1).fold(ts[0].rows[i].clone(), |mut acc, t| {
                    acc.union_with(&t.rows[i]);
                    acc
                })
            })
            .collect(),
        CombineMode::AtLeast(k) => {
            if k == 0 || k > ts.len() {
                return Err(Error::Parameter(format!(
                    "at-least threshold {k} outside 1..={}",
                    ts.len()
                )));
            }
            (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| ts.iter().filter(|t| t.related(i, j)).count() >= k)
                        .collect()
                })
                .collect()
        }
    };
    Ok(Tolerance { rows })
}

/// One tolerance per distance spec, combined.
pub fn similarity_matrix(
    table: &InformationTable,
    specs: &[DistanceSpec],
    mode: CombineMode,
) -> Result<Tolerance> {
    if specs.is_empty() {
        return Err(Error::Parameter(
            "at least one distance spec is required".into(),
        ));
    }
    let parts = specs
        .iter()
        .map(|spec| {
            let column: Vec<Value> = table
                .column(&spec.attribute)?
                .into_iter()
                .cloned()
                .collect();
            tolerance_from_distance(&column, spec)
        })
        .collect::<Result<Vec<_>>>()?;
    combine_tolerances(&parts, mode)
}

/// Row-major encoding of tuples over factor sizes `k_1 × .. × k_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductIndex {
    sizes: Vec<usize>,
}

impl ProductIndex {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::Parameter(
                "product needs at least one nonempty factor".into(),
            ));
        }
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&x, &k)| acc * k + x)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.sizes.len()];
        for (slot, &k) in tuple.iter_mut().zip(&self.sizes).rev() {
            *slot = index % k;
            index /= k;
        }
        tuple
    }
}

/// Relates two tuples iff every coordinate pair is related in its factor.
pub fn product_tolerance(factors: &[Tolerance]) -> Result<(Tolerance, ProductIndex)> {
    let index = ProductIndex::new(factors.iter().map(Tolerance::size).collect())?;
    let decoded: Vec<Vec<usize>> = (0..index.len()).map(|i| index.decode(i)).collect();
    let t = Tolerance::from_fn(index.len(), |i, j| {
        decoded[i]
            .iter()
            .zip(&decoded[j])
            .zip(factors)
            .all(|((&a, &b), f)| f.related(a, b))
    });
    Ok((t, index))
}
