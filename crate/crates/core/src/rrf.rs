//! Rough random functions: (partial) maps out of approximations, checked
//! against a declared domain and codomain.

use serde::{Deserialize, Serialize};

use crate::approx::{self, DEFAULT_ENUMERATION_BOUND};
use crate::blocks::BlockSystem;
use crate::chain::Interval;
use crate::error::{Error, Result};
use crate::sets::IndexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RrfType {
    /// Partial map from approximations to rough objects.
    Type1,
    /// Map from approximations × subsets to reals.
    Type2,
    /// Total map from approximations to object collections.
    Type3,
    /// Partial map from operator × subset to rough objects.
    TypeH,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Codomain {
    RoughPairs,
    UnitInterval,
    Reals,
    ObjectSets,
    BlockDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrfDescriptor {
    pub rrf_type: RrfType,
    pub domain: String,
    pub codomain: Codomain,
    pub partial: bool,
}

impl RrfDescriptor {
    pub fn new(
        rrf_type: RrfType,
        domain: impl Into<String>,
        codomain: Codomain,
        partial: bool,
    ) -> Result<Self> {
        if partial && matches!(rrf_type, RrfType::Type2 | RrfType::Type3) {
            return Err(Error::Parameter(format!(
                "{rrf_type:?} functions are total"
            )));
        }
        Ok(Self {
            rrf_type,
            domain: domain.into(),
            codomain,
            partial,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxOperator {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RrfInput {
    Set(IndexSet),
    Pair(IndexSet, IndexSet),
    Operator(ApproxOperator, IndexSet),
}

/// A table block named by index, with its per-attribute chain intervals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPart {
    pub block: usize,
    pub objects: IndexSet,
    /// One interval list per product tuple producing this block.
    pub factors: Vec<Vec<Interval>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RrfValue {
    RoughPair(IndexSet, IndexSet),
    Real(f64),
    Set(IndexSet),
    Decomposition(Vec<BlockPart>),
}

pub trait RoughRandomFunction {
    fn descriptor(&self) -> RrfDescriptor;

    /// Whether `input` lies in the declared domain.
    fn in_domain(&self, input: &RrfInput) -> bool;

    fn apply(&self, input: &RrfInput) -> Result<RrfValue>;
}

/// Evaluates `f`, turning out-of-domain inputs into domain errors and any
/// result outside the declared codomain into a contract error.
pub fn evaluate_rrf(f: &dyn RoughRandomFunction, input: &RrfInput) -> Result<RrfValue> {
    let desc = f.descriptor();
    if !f.in_domain(input) {
        return Err(Error::Domain(format!("input outside {}", desc.domain)));
    }
    let value = match f.apply(input) {
        Err(Error::Domain(msg)) if !desc.partial => {
            return Err(Error::Contract(format!(
                "total {:?} function undefined on a domain input: {msg}",
                desc.rrf_type
            )))
        }
        other => other?,
    };
    let ok = match (&value, desc.codomain) {
        (RrfValue::RoughPair(l, u), Codomain::RoughPairs) => l.is_subset(u),
        (RrfValue::Real(x), Codomain::UnitInterval) => (0.0..=1.0).contains(x),
        (RrfValue::Real(x), Codomain::Reals) => x.is_finite(),
        (RrfValue::Set(_), Codomain::ObjectSets) => true,
        (RrfValue::Decomposition(_), Codomain::BlockDecomposition) => true,
        _ => false,
    };
    if ok {
        Ok(value)
    } else {
        Err(Error::Contract(format!(
            "value {value:?} outside codomain {:?}",
            desc.codomain
        )))
    }
}

fn within(bs: &BlockSystem, s: &IndexSet) -> bool {
    s.last().is_none_or(|m| m < bs.universe_size())
}

/// Type-1: an approximation to a minimal rough pair covering it.
pub struct MinimalCover<'a> {
    pub blocks: &'a BlockSystem,
}

impl RoughRandomFunction for MinimalCover<'_> {
    fn descriptor(&self) -> RrfDescriptor {
        RrfDescriptor {
            rrf_type: RrfType::Type1,
            domain: "lower and upper approximations".into(),
            codomain: Codomain::RoughPairs,
            partial: true,
        }
    }

    fn in_domain(&self, input: &RrfInput) -> bool {
        matches!(input, RrfInput::Set(a) if within(self.blocks, a))
    }

    fn apply(&self, input: &RrfInput) -> Result<RrfValue> {
        let RrfInput::Set(a) = input else {
            return Err(Error::Domain("expected a set".into()));
        };
        let (l, u) = approx::minimal_cover_rrf1(self.blocks, a, DEFAULT_ENUMERATION_BOUND)?;
        Ok(RrfValue::RoughPair(l, u))
    }
}

/// Type-2: the rough inclusion degree `|b \ a| / |b|`.
pub struct InclusionDegree;

impl RoughRandomFunction for InclusionDegree {
    fn descriptor(&self) -> RrfDescriptor {
        RrfDescriptor {
            rrf_type: RrfType::Type2,
            domain: "pairs (a, b) with b nonempty".into(),
            codomain: Codomain::UnitInterval,
            partial: false,
        }
    }

    fn in_domain(&self, input: &RrfInput) -> bool {
        matches!(input, RrfInput::Pair(_, b) if !b.is_empty())
    }

    fn apply(&self, input: &RrfInput) -> Result<RrfValue> {
        let RrfInput::Pair(a, b) = input else {
            return Err(Error::Domain("expected a pair".into()));
        };
        approx::xi5(a, b).map(RrfValue::Real)
    }
}

/// Type-2: approximation accuracy `|lower| / |upper|`.
pub struct Accuracy<'a> {
    pub blocks: &'a BlockSystem,
}

impl RoughRandomFunction for Accuracy<'_> {
    fn descriptor(&self) -> RrfDescriptor {
        RrfDescriptor {
            rrf_type: RrfType::Type2,
            domain: "subsets of the universe".into(),
            codomain: Codomain::UnitInterval,
            partial: false,
        }
    }

    fn in_domain(&self, input: &RrfInput) -> bool {
        matches!(input, RrfInput::Set(x) if within(self.blocks, x))
    }

    fn apply(&self, input: &RrfInput) -> Result<RrfValue> {
        let RrfInput::Set(x) = input else {
            return Err(Error::Domain("expected a set".into()));
        };
        approx::accuracy(self.blocks, x).map(RrfValue::Real)
    }
}

/// Type-3: a set to its upper approximation.
pub struct UpperClosure<'a> {
    pub blocks: &'a BlockSystem,
}

impl RoughRandomFunction for UpperClosure<'_> {
    fn descriptor(&self) -> RrfDescriptor {
        RrfDescriptor {
            rrf_type: RrfType::Type3,
            domain: "subsets of the universe".into(),
            codomain: Codomain::ObjectSets,
            partial: false,
        }
    }

    fn in_domain(&self, input: &RrfInput) -> bool {
        matches!(input, RrfInput::Set(x) if within(self.blocks, x))
    }

    fn apply(&self, input: &RrfInput) -> Result<RrfValue> {
        let RrfInput::Set(x) = input else {
            return Err(Error::Domain("expected a set".into()));
        };
        Ok(RrfValue::Set(approx::upper(self.blocks, x)?.set))
    }
}
