//! The interpreted reasoner: approximations of an object set decomposed into
//! table blocks and the chain intervals that form them.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::ToleranceModel;
use crate::approx::approximate;
use crate::chain::Interval;
use crate::error::Result;
use crate::rrf::{
    ApproxOperator, BlockPart, Codomain, RoughRandomFunction, RrfDescriptor, RrfInput, RrfType,
    RrfValue,
};
use crate::sets::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Explanation {
    pub query: IndexSet,
    pub lower: IndexSet,
    pub upper: IndexSet,
    pub lower_parts: Vec<BlockPart>,
    pub upper_parts: Vec<BlockPart>,
}

fn part(model: &ToleranceModel, block: usize) -> BlockPart {
    let factors = model.block_factors[block]
        .iter()
        .map(|tuple| {
            tuple
                .iter()
                .zip(&model.per_attribute)
                .map(|(&j, choice)| choice.system.intervals()[j])
                .collect()
        })
        .collect();
    BlockPart {
        block,
        objects: model.table_blocks.blocks()[block].clone(),
        factors,
    }
}

/// Lower and upper approximations of `x`, each listed as the table blocks
/// that form it together with their per-attribute chain intervals.
pub fn explain(model: &ToleranceModel, x: &IndexSet) -> Result<Explanation> {
    let g = approximate(&model.table_blocks, x)?;
    Ok(Explanation {
        lower_parts: g.lower_blocks.iter().map(|&b| part(model, b)).collect(),
        upper_parts: g.upper_blocks.iter().map(|&b| part(model, b)).collect(),
        query: g.query,
        lower: g.lower,
        upper: g.upper,
    })
}

impl Explanation {
    /// Human-readable rendering with object identifiers and value ranges.
    pub fn render(&self, model: &ToleranceModel) -> String {
        let names = |s: &IndexSet| {
            let v: Vec<&str> = s.iter().map(|o| model.objects[o].as_str()).collect();
            format!("{{{}}}", v.join(", "))
        };
        let range = |attr: usize, (lo, hi): Interval| {
            let c = &model.per_attribute[attr];
            if lo == hi {
                format!("{} = {}", c.attribute, c.values[lo])
            } else {
                format!("{} in [{}, {}]", c.attribute, c.values[lo], c.values[hi])
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "query {}", names(&self.query));
        for (label, set, parts) in [
            ("lower", &self.lower, &self.lower_parts),
            ("upper", &self.upper, &self.upper_parts),
        ] {
            let _ = writeln!(out, "{label} {}", names(set));
            for p in parts {
                let _ = writeln!(out, "  block {} {}", p.block, names(&p.objects));
                for f in &p.factors {
                    let terms: Vec<String> =
                        f.iter().enumerate().map(|(a, &iv)| range(a, iv)).collect();
                    let _ = writeln!(out, "    {}", terms.join(" and "));
                }
            }
        }
        out
    }
}

/// `explain` as a type-H rough random function: an operator tag and an
/// object set map to the block decomposition of that approximation.
pub struct InterpretedReasoner<'a> {
    pub model: &'a ToleranceModel,
}

impl RoughRandomFunction for InterpretedReasoner<'_> {
    fn descriptor(&self) -> RrfDescriptor {
        RrfDescriptor {
            rrf_type: RrfType::TypeH,
            domain: "approximation operator x object sets".into(),
            codomain: Codomain::BlockDecomposition,
            partial: false,
        }
    }

    fn in_domain(&self, input: &RrfInput) -> bool {
        match input {
            RrfInput::Operator(_, x) => x
                .last()
                .is_none_or(|m| m < self.model.table_blocks.universe_size()),
            _ => false,
        }
    }

    fn apply(&self, input: &RrfInput) -> Result<RrfValue> {
        let RrfInput::Operator(op, x) = input else {
            unreachable!("checked by in_domain")
        };
        let e = explain(self.model, x)?;
        Ok(RrfValue::Decomposition(match op {
            ApproxOperator::Lower => e.lower_parts,
            ApproxOperator::Upper => e.upper_parts,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::six;
    use super::super::{lmr_apply, LargeMindedReasoner, ModelSource, TableChains};
    use super::*;
    use crate::approx::{lower, upper};
    use crate::chain::ChainBlockSystem;
    use crate::rrf::evaluate_rrf;

    fn set(xs: &[usize]) -> IndexSet {
        xs.iter().copied().collect()
    }

    fn six_model() -> ToleranceModel {
        let chains = TableChains::new(&six()).unwrap();
        let a = ChainBlockSystem::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let b = ChainBlockSystem::identity(2).unwrap();
        let source = ModelSource::Lmr {
            tuple: vec![0, 0],
            delta: 0.0,
            rank: 0,
        };
        ToleranceModel::build(&chains, vec![(0, a), (0, b)], source).unwrap()
    }

    #[test]
    fn straddler() {
        let m = six_model();
        // blocks {0,2} {1,3} {2,4} {3,5}; X = {0,2} ∪ {1,3} ∪ {4}
        let e = explain(&m, &set(&[0, 1, 2, 3, 4])).unwrap();
        let lower_blocks: Vec<usize> = e.lower_parts.iter().map(|p| p.block).collect();
        let upper_blocks: Vec<usize> = e.upper_parts.iter().map(|p| p.block).collect();
        assert_eq!(lower_blocks, vec![0, 1, 2]);
        assert_eq!(upper_blocks, vec![0, 1, 2, 3]);
        assert_eq!(e.lower_parts[0].factors, vec![vec![(0, 1), (0, 0)]]);
        assert_eq!(e.upper_parts[3].factors, vec![vec![(1, 2), (1, 1)]]);

        // two disjoint blocks; {1,3} and {2,4} straddle the boundary
        let e = explain(&m, &set(&[0, 2, 3, 5])).unwrap();
        let lower_blocks: Vec<usize> = e.lower_parts.iter().map(|p| p.block).collect();
        assert_eq!(lower_blocks, vec![0, 3]);
        assert_eq!(e.upper_parts.len(), 4);
    }

    #[test]
    fn single_block_and_empty() {
        let m = six_model();
        let e = explain(&m, &set(&[1, 3])).unwrap();
        assert_eq!(e.lower_parts.len(), 1);
        assert_eq!(e.lower_parts[0].objects, set(&[1, 3]));
        assert_eq!(e.lower_parts[0].factors, vec![vec![(0, 1), (1, 1)]]);
        let e = explain(&m, &IndexSet::new()).unwrap();
        assert!(e.lower_parts.is_empty() && e.upper_parts.is_empty());
    }

    #[test]
    fn reassembles_and_renders() {
        let m = six_model();
        for mask in 0u32..64 {
            let x: IndexSet = (0..6).filter(|&i| mask >> i & 1 == 1).collect();
            let e = explain(&m, &x).unwrap();
            let union = |ps: &[BlockPart]| {
                ps.iter().fold(IndexSet::new(), |mut acc, p| {
                    acc.union_with(&p.objects);
                    acc
                })
            };
            assert_eq!(
                union(&e.lower_parts),
                lower(&m.table_blocks, &x).unwrap().set
            );
            assert_eq!(
                union(&e.upper_parts),
                upper(&m.table_blocks, &x).unwrap().set
            );
        }
        let text = explain(&m, &set(&[0, 2])).unwrap().render(&m);
        assert!(text.contains("a in [1, 2] and b = 1"), "{text}");
    }

    #[test]
    fn type_h_registration() {
        let m = six_model();
        let f = InterpretedReasoner { model: &m };
        let x = set(&[0, 1, 2, 3, 4]);
        let v = evaluate_rrf(&f, &RrfInput::Operator(ApproxOperator::Lower, x.clone())).unwrap();
        let RrfValue::Decomposition(parts) = v else {
            panic!()
        };
        assert_eq!(parts, explain(&m, &x).unwrap().lower_parts);
        assert!(evaluate_rrf(&f, &RrfInput::Set(x)).is_err());
        assert!(evaluate_rrf(&f, &RrfInput::Operator(ApproxOperator::Upper, set(&[9]))).is_err());
        // the same blocks come out of the reasoner directly
        let chains = TableChains::new(&six()).unwrap();
        let psi = LargeMindedReasoner::new(
            m.per_attribute
                .iter()
                .map(|c| vec![c.system.clone()])
                .collect(),
            Default::default(),
        )
        .unwrap();
        assert_eq!(
            lmr_apply(&psi, &[0, 0], &chains.ranks).unwrap().0,
            m.table_blocks
        );
    }
}
