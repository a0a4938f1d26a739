//! Quantile-driven interval boundaries for one numeric attribute and their
//! mapping onto the attribute's value chain.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chain::{validate_lattice_blocks, ChainBlockSystem, Interval};
use crate::error::{Error, Result};
use crate::table::Value;

/// How the half-width `e` around each quantile is obtained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpreadMode {
    /// `e = fraction × std(column)`
    #[default]
    GlobalStdFraction,
    /// `e = fraction × std(values strictly between the neighbouring quantiles)`
    LocalStdFraction,
    /// `e = fraction`
    Fixed,
}

pub const DEFAULT_E_FRACTION: f64 = 0.25;

/// One quantile and the band `[lower, upper]` around it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cut {
    pub quantile: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub attribute: String,
    pub q: usize,
    pub e_mode: SpreadMode,
    pub e_fraction: f64,
    /// Column minimum.
    pub bottom: f64,
    /// Column maximum.
    pub top: f64,
    pub cuts: Vec<Cut>,
}

impl BoundarySpec {
    /// `⊥, q₁−e₁, q₁+e₁, …, q_f+e_f, ⊤` with repeated values collapsed.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut out = vec![self.bottom];
        for c in &self.cuts {
            out.push(c.lower);
            out.push(c.upper);
        }
        out.push(self.top);
        out.dedup();
        out
    }

    /// Value ranges `[⊥, q₁+e₁], [q₁−e₁, q₂+e₂], …, [q_f−e_f, ⊤]`.
    pub fn value_intervals(&self) -> Vec<(f64, f64)> {
        let mut starts = vec![self.bottom];
        starts.extend(self.cuts.iter().map(|c| c.lower));
        let mut ends: Vec<f64> = self.cuts.iter().map(|c| c.upper).collect();
        ends.push(self.top);
        starts.into_iter().zip(ends).collect()
    }
}

fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// Linear interpolation between order statistics at `p·(N−1)`.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// The `q` cut points at probabilities `j/(q+1)` and a band of half-width `e`
/// around each. Bands are capped at half the distance to neighbouring
/// quantiles so the boundary list stays weakly increasing, then clamped to
/// the column range.
pub fn quantile_boundaries(
    attribute: &str,
    values: &[f64],
    q: usize,
    e_mode: SpreadMode,
    e_fraction: f64,
) -> Result<BoundarySpec> {
    if values.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric(format!(
            "attribute `{attribute}` has a non-finite value"
        )));
    }
    if !e_fraction.is_finite() || e_fraction < 0.0 {
        return Err(Error::Parameter(format!(
            "e_fraction must be nonnegative, got {e_fraction}"
        )));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut distinct = sorted.clone();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::DegenerateColumn(attribute.to_string()));
    }
    if q == 0 || q >= distinct.len() {
        return Err(Error::Parameter(format!(
            "q must lie in 1..{} for attribute `{attribute}`, got {q}",
            distinct.len()
        )));
    }
    let (bottom, top) = (sorted[0], sorted[sorted.len() - 1]);
    let mut centres: Vec<f64> = (1..=q)
        .map(|j| quantile(&sorted, j as f64 / (q + 1) as f64))
        .collect();
    centres.dedup();

    let global = std_dev(&sorted);
    let spreads: Vec<f64> = centres
        .iter()
        .enumerate()
        .map(|(j, _)| match e_mode {
            SpreadMode::Fixed => e_fraction,
            SpreadMode::GlobalStdFraction => e_fraction * global,
            SpreadMode::LocalStdFraction => {
                let lo = if j == 0 { bottom } else { centres[j - 1] };
                let hi = centres.get(j + 1).copied().unwrap_or(top);
                let local: Vec<f64> = sorted
                    .iter()
                    .copied()
                    .filter(|&x| lo < x && x < hi)
                    .collect();
                e_fraction * std_dev(&local)
            }
        })
        .collect();

    let cuts = centres
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            let mut e = spreads[j];
            if j > 0 {
                e = e.min((c - centres[j - 1]) / 2.0);
            }
            if let Some(&next) = centres.get(j + 1) {
                e = e.min((next - c) / 2.0);
            }
            Cut {
                quantile: c,
                lower: (c - e).clamp(bottom, top),
                upper: (c + e).clamp(bottom, top),
            }
        })
        .collect();

    Ok(BoundarySpec {
        attribute: attribute.to_string(),
        q,
        e_mode,
        e_fraction,
        bottom,
        top,
        cuts,
    })
}

/// `½ Σ_d |P_left(d) − P_right(d)|`, or 0 when either side is empty.
pub fn total_variation<'a>(
    left: impl IntoIterator<Item = &'a Value>,
    right: impl IntoIterator<Item = &'a Value>,
) -> f64 {
    let mut counts: BTreeMap<&Value, (f64, f64)> = BTreeMap::new();
    let (mut nl, mut nr) = (0.0, 0.0);
    for d in left {
        counts.entry(d).or_default().0 += 1.0;
        nl += 1.0;
    }
    for d in right {
        counts.entry(d).or_default().1 += 1.0;
        nr += 1.0;
    }
    if nl == 0.0 || nr == 0.0 {
        return 0.0;
    }
    0.5 * counts
        .values()
        .map(|(l, r)| (l / nl - r / nr).abs())
        .sum::<f64>()
}

/// Keeps a cut only where the decision distribution changes by at least
/// `delta` (total variation) between the objects just below and just above
/// its quantile, each side bounded by the neighbouring quantiles.
pub fn prune_boundaries(
    spec: &BoundarySpec,
    values: &[f64],
    decisions: &[Value],
    delta: f64,
) -> Result<BoundarySpec> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::Parameter(format!(
            "delta must lie in [0, 1], got {delta}"
        )));
    }
    if values.len() != decisions.len() {
        return Err(Error::Dimension {
            expected: values.len(),
            found: decisions.len(),
        });
    }
    let centres: Vec<f64> = spec.cuts.iter().map(|c| c.quantile).collect();
    let kept = spec
        .cuts
        .iter()
        .enumerate()
        .filter(|&(j, cut)| {
            let lo = if j == 0 { spec.bottom } else { centres[j - 1] };
            let hi = centres.get(j + 1).copied();
            let left = values
                .iter()
                .zip(decisions)
                .filter(|(&v, _)| lo <= v && v < cut.quantile)
                .map(|(_, d)| d);
            let right = values
                .iter()
                .zip(decisions)
                .filter(|(&v, _)| cut.quantile <= v && hi.is_none_or(|h| v < h))
                .map(|(_, d)| d);
            total_variation(left, right) >= delta
        })
        .map(|(_, c)| *c)
        .collect();
    Ok(BoundarySpec {
        cuts: kept,
        ..spec.clone()
    })
}

/// A chain block system together with the repairs applied to reach it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    pub system: ChainBlockSystem,
    pub repairs: Vec<String>,
}

/// Maps each value interval to the ranks of the chain values it contains.
///
/// Empty or nested rank intervals are dropped and gaps closed by widening
/// endpoints, leftmost first, until the family is the block system of a
/// chain tolerance.
pub fn intervals_to_chain_blocks(
    spec: &BoundarySpec,
    chain_values: &[f64],
) -> Result<Discretization> {
    let k = chain_values.len();
    if k == 0 {
        return Err(Error::Discretization("empty value chain".into()));
    }
    if chain_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Discretization(
            "chain values must be strictly increasing".into(),
        ));
    }
    let ranges = spec.value_intervals();
    if ranges.len() > k {
        return Err(Error::Discretization(format!(
            "{} intervals cannot fit on {k} distinct values of `{}`",
            ranges.len(),
            spec.attribute
        )));
    }
    let mut repairs = Vec::new();
    let mut mapped: Vec<Interval> = Vec::new();
    for (lo, hi) in ranges {
        let first = chain_values.iter().position(|&v| lo <= v && v <= hi);
        let last = chain_values.iter().rposition(|&v| lo <= v && v <= hi);
        match (first, last) {
            (Some(a), Some(b)) => mapped.push((a, b)),
            _ => repairs.push(format!("dropped empty value interval [{lo}, {hi}]")),
        }
    }
    if mapped.is_empty() {
        return Err(Error::Discretization(format!(
            "no chain value of `{}` falls inside any interval",
            spec.attribute
        )));
    }
    mapped.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut intervals: Vec<Interval> = Vec::new();
    for iv in mapped {
        match intervals.last() {
            Some(&last) if iv.1 <= last.1 => {
                repairs.push(format!(
                    "dropped [{}, {}] nested in [{}, {}]",
                    iv.0, iv.1, last.0, last.1
                ));
            }
            _ => intervals.push(iv),
        }
    }
    if intervals[0].0 != 0 {
        repairs.push(format!(
            "widened start of [{}, {}] to 0",
            intervals[0].0, intervals[0].1
        ));
        intervals[0].0 = 0;
    }
    for i in 0..intervals.len() - 1 {
        let next_start = intervals[i + 1].0;
        if next_start > intervals[i].1 + 1 {
            repairs.push(format!(
                "widened end of [{}, {}] to {}",
                intervals[i].0,
                intervals[i].1,
                next_start - 1
            ));
            intervals[i].1 = next_start - 1;
        }
    }
    let last = intervals.len() - 1;
    if intervals[last].1 != k - 1 {
        repairs.push(format!(
            "widened end of [{}, {}] to {}",
            intervals[last].0,
            intervals[last].1,
            k - 1
        ));
        intervals[last].1 = k - 1;
    }
    if let Some(v) = validate_lattice_blocks(k, &intervals)? {
        return Err(Error::Discretization(format!(
            "repaired intervals still invalid: {v:?}"
        )));
    }
    let system =
        ChainBlockSystem::new(k, intervals).map_err(|e| Error::Discretization(e.to_string()))?;
    Ok(Discretization { system, repairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_to_eight() -> Vec<f64> {
        (1..=8).map(f64::from).collect()
    }

    #[test]
    fn median_band_fixed() {
        let spec = quantile_boundaries("x", &one_to_eight(), 1, SpreadMode::Fixed, 0.5).unwrap();
        assert_eq!(spec.cuts[0].quantile, 4.5);
        assert_eq!(spec.boundaries(), vec![1.0, 4.0, 5.0, 8.0]);
    }

    #[test]
    fn zero_band_collapses() {
        let spec = quantile_boundaries("x", &one_to_eight(), 1, SpreadMode::GlobalStdFraction, 0.0)
            .unwrap();
        assert_eq!(spec.boundaries(), vec![1.0, 4.5, 8.0]);
        let spec = quantile_boundaries("x", &one_to_eight(), 3, SpreadMode::Fixed, 0.0).unwrap();
        // probabilities 1/4, 1/2, 3/4 -> h = 1.75, 3.5, 5.25
        assert_eq!(spec.boundaries(), vec![1.0, 2.75, 4.5, 6.25, 8.0]);
    }

    #[test]
    fn degenerate_and_parameter_errors() {
        assert!(matches!(
            quantile_boundaries("x", &[3.0; 5], 1, SpreadMode::Fixed, 0.1),
            Err(Error::DegenerateColumn(_))
        ));
        assert!(matches!(
            quantile_boundaries("x", &[1.0, 2.0], 2, SpreadMode::Fixed, 0.1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            quantile_boundaries("x", &[1.0, 2.0], 0, SpreadMode::Fixed, 0.1),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn bands_are_capped_and_clamped() {
        let spec = quantile_boundaries("x", &one_to_eight(), 3, SpreadMode::Fixed, 10.0).unwrap();
        let b = spec.boundaries();
        assert!(b.windows(2).all(|w| w[0] <= w[1]), "{b:?}");
        assert_eq!(b.first(), Some(&1.0));
        assert_eq!(b.last(), Some(&8.0));
    }

    #[test]
    fn global_and_local_spreads() {
        let v = one_to_eight();
        // population std of 1..8 is sqrt(5.25)
        let spec = quantile_boundaries("x", &v, 1, SpreadMode::GlobalStdFraction, 0.25).unwrap();
        let e = 0.25 * 5.25f64.sqrt();
        assert!((spec.cuts[0].upper - (4.5 + e)).abs() < 1e-12);
        // local window (1, 8) exclusive holds 2..7, population std sqrt(35/12)
        let spec = quantile_boundaries("x", &v, 1, SpreadMode::LocalStdFraction, 1.0).unwrap();
        let e = (35.0f64 / 12.0).sqrt();
        assert!((spec.cuts[0].lower - (4.5 - e)).abs() < 1e-12);
    }

    #[test]
    fn chain_blocks_from_bands() {
        let v = one_to_eight();
        let spec = quantile_boundaries("x", &v, 1, SpreadMode::Fixed, 0.5).unwrap();
        let d = intervals_to_chain_blocks(&spec, &v).unwrap();
        assert_eq!(d.system.intervals(), &[(0, 4), (3, 7)]);
        assert!(d.repairs.is_empty());

        let spec = quantile_boundaries("x", &v, 1, SpreadMode::Fixed, 0.0).unwrap();
        let d = intervals_to_chain_blocks(&spec, &v).unwrap();
        assert_eq!(d.system.intervals(), &[(0, 3), (4, 7)]);
        assert!(d.system.is_congruence());
    }

    #[test]
    fn single_interval_is_total() {
        let v = one_to_eight();
        let mut spec = quantile_boundaries("x", &v, 1, SpreadMode::Fixed, 0.5).unwrap();
        spec.cuts.clear();
        let d = intervals_to_chain_blocks(&spec, &v).unwrap();
        assert_eq!(d.system.intervals(), &[(0, 7)]);
    }

    #[test]
    fn repairs_gaps_and_nesting() {
        // values 1, 2, 10, 11 with a cut band landing between 2 and 10
        let v = [1.0, 2.0, 10.0, 11.0];
        let spec = BoundarySpec {
            attribute: "x".into(),
            q: 2,
            e_mode: SpreadMode::Fixed,
            e_fraction: 0.0,
            bottom: 1.0,
            top: 11.0,
            cuts: vec![
                Cut {
                    quantile: 3.0,
                    lower: 3.0,
                    upper: 3.0,
                },
                Cut {
                    quantile: 5.0,
                    lower: 5.0,
                    upper: 6.0,
                },
            ],
        };
        // [1,3] -> [0,1] ; [3,6] -> empty ; [5,11] -> [2,3]
        let d = intervals_to_chain_blocks(&spec, &v).unwrap();
        assert_eq!(d.system.intervals(), &[(0, 1), (2, 3)]);
        assert_eq!(d.repairs.len(), 1);

        let nested = BoundarySpec {
            cuts: vec![Cut {
                quantile: 10.5,
                lower: 1.0,
                upper: 11.0,
            }],
            ..spec
        };
        // [1, 11] and [1, 11] collapse to one
        let d = intervals_to_chain_blocks(&nested, &v).unwrap();
        assert_eq!(d.system.intervals(), &[(0, 3)]);
    }

    #[test]
    fn pruning_by_decision_change() {
        let v = one_to_eight();
        let d: Vec<Value> = [0, 0, 0, 0, 1, 1, 1, 1]
            .iter()
            .map(|&x| Value::Num(x as f64))
            .collect();
        let spec = quantile_boundaries("x", &v, 1, SpreadMode::Fixed, 0.0).unwrap();
        assert_eq!(prune_boundaries(&spec, &v, &d, 0.5).unwrap().cuts.len(), 1);

        let constant = vec![Value::Cat("yes".into()); 8];
        let spec3 = quantile_boundaries("x", &v, 3, SpreadMode::Fixed, 0.0).unwrap();
        let pruned = prune_boundaries(&spec3, &v, &constant, 0.1).unwrap();
        assert!(pruned.cuts.is_empty());
        assert_eq!(pruned.boundaries(), vec![1.0, 8.0]);
        assert_eq!(prune_boundaries(&spec3, &v, &constant, 0.0).unwrap(), spec3);
        assert!(prune_boundaries(&spec3, &v, &constant, 1.5).is_err());
    }

    #[test]
    fn tv_distance() {
        let a = [Value::Num(0.0), Value::Num(0.0)];
        let b = [Value::Num(0.0), Value::Num(1.0)];
        assert_eq!(total_variation(&a, &b), 0.5);
        assert_eq!(total_variation(&a, &a), 0.0);
        assert_eq!(total_variation(&a, &[]), 0.0);
    }
}
