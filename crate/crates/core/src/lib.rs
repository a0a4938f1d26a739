//! Granular rough-set toolkit built on tolerance relations.
//!
//! Information tables are turned into tolerance relations, whose blocks
//! (maximal cliques) serve as granules for lower and upper approximations.
//! On top of that sit a cluster validator and the quantile-driven
//! discretization pipelines that search chain tolerances per attribute.

pub mod agrssa;
pub mod approx;
pub mod blocks;
pub mod chain;
pub mod cli;
pub mod cliques;
pub mod error;
pub mod rrf;
pub mod sets;
pub mod table;
pub mod tolerance;
pub mod validation;

pub use blocks::{blocks, BlockSystem};
pub use chain::{ChainBlockSystem, UniversalBlockDistribution};
pub use error::{Error, Result};
pub use sets::IndexSet;
pub use table::{InformationTable, Value};
pub use tolerance::Tolerance;
