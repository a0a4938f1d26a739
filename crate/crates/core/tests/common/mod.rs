//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roughtol::{ChainBlockSystem, IndexSet, InformationTable, Tolerance, Value};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tolerance(rng: &mut impl Rng, n: usize, density: f64) -> Tolerance {
    Tolerance::from_fn(n, |_, _| rng.gen_bool(density))
}

pub fn random_subset(rng: &mut impl Rng, n: usize) -> IndexSet {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random block system of a tolerance on the chain `0..n`, built by
/// drawing each next interval's endpoints inside the allowed ranges.
pub fn random_chain_system(rng: &mut impl Rng, n: usize) -> ChainBlockSystem {
    let mut intervals = vec![(0, rng.gen_range(0..n))];
    while intervals.last().unwrap().1 < n - 1 {
        let (lo, hi) = *intervals.last().unwrap();
        let start = rng.gen_range(lo + 1..=hi + 1);
        let end = rng.gen_range(hi + 1..n);
        intervals.push((start, end));
    }
    ChainBlockSystem::new(n, intervals).expect("valid by construction")
}

pub fn subset_of_mask(mask: u64, n: usize) -> IndexSet {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Maximal pre-blocks by visiting every subset.
pub fn brute_force_blocks(t: &Tolerance) -> Vec<IndexSet> {
    let n = t.size();
    assert!(n <= 16);
    let pre: Vec<u64> = (1u64..1 << n)
        .filter(|&m| {
            (0..n)
                .filter(|&i| m >> i & 1 == 1)
                .all(|i| (0..n).filter(|&j| m >> j & 1 == 1).all(|j| t.related(i, j)))
        })
        .collect();
    let mut out: Vec<IndexSet> = pre
        .iter()
        .filter(|&&m| !pre.iter().any(|&o| o != m && o & m == m))
        .map(|&m| subset_of_mask(m, n))
        .collect();
    out.sort();
    out
}

pub fn sorted(mut v: Vec<IndexSet>) -> Vec<IndexSet> {
    v.sort();
    v
}

/// Table with numeric conditional columns and a categorical decision `d`.
pub fn numeric_table(columns: &[(&str, Vec<f64>)], decision: &[String]) -> InformationTable {
    let n = columns[0].1.len();
    let objects: Vec<String> = (1..=n).map(|i| format!("o{i}")).collect();
    let mut attributes: Vec<String> = columns.iter().map(|(a, _)| a.to_string()).collect();
    let mut cells: Vec<Vec<_>> = columns
        .iter()
        .map(|(_, vs)| {
            vs.iter()
                .map(|&v| [Value::Num(v)].into_iter().collect())
                .collect()
        })
        .collect();
    let decision_name = if decision.is_empty() {
        None
    } else {
        attributes.push("d".into());
        cells.push(
            decision
                .iter()
                .map(|d| [Value::Cat(d.clone())].into_iter().collect())
                .collect(),
        );
        Some("d")
    };
    InformationTable::new(objects, attributes, cells, decision_name).unwrap()
}

/// `n` objects in three clumps centred at 0, 10 and 20 on every attribute,
/// each coordinate jittered within ±0.5. Returns the table and clump labels.
pub fn clumps(rng: &mut impl Rng, n: usize, attributes: usize) -> (InformationTable, Vec<usize>) {
    let labels: Vec<usize> = (0..n).map(|i| i % 3).collect();
    let names: Vec<String> = (0..attributes).map(|a| format!("a{a}")).collect();
    let columns: Vec<(&str, Vec<f64>)> = names
        .iter()
        .map(|name| {
            let col = labels
                .iter()
                .map(|&l| 10.0 * l as f64 + rng.gen_range(-0.5..0.5))
                .collect();
            (name.as_str(), col)
        })
        .collect();
    (numeric_table(&columns, &[]), labels)
}

pub fn shuffled(rng: &mut impl Rng, labels: &[usize]) -> Vec<usize> {
    let mut v = labels.to_vec();
    v.shuffle(rng);
    v
}
