//! Unbalanced linguistic term sets in the 2-tuple fuzzy linguistic model.
//!
//! Terms are declared as `(name, position)` pairs. [`partition`] assigns each
//! gap between consecutive terms a level of a linguistic hierarchy and builds
//! triangular semantics whose kernels sit exactly on the declared positions,
//! [`aggregate`] computes with those terms and maps results back onto them,
//! [`tree`] flattens binary trees into hierarchy 2-tuples and [`fcl`] reads the
//! `LING` extension of the Fuzzy Control Language.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`.
//!
//! ```
//! use twotuple::{build_partition, TermPair};
//!
//! let partition = build_partition(&[
//!     TermPair::new("NoAlcohol", 0.0),
//!     TermPair::new("YoungLegalLimit", 0.05),
//!     TermPair::new("Intermediate", 0.065),
//!     TermPair::new("LegalLimit", 0.08),
//!     TermPair::new("RiskOfDeath", 0.3),
//! ])
//! .unwrap();
//! assert!((partition.epsilon() - 0.2).abs() < 1e-9);
//! assert_eq!(partition.membership("LegalLimit", 0.08).unwrap(), 1.0);
//! ```

pub mod aggregate;
pub mod error;
pub mod export;
pub mod fcl;
pub mod hierarchy;
pub mod partition;
pub mod scalar;
pub mod tree;

pub use error::{Error, Result};
pub use hierarchy::{level_count, Level, MAX_LEVEL};
pub use partition::{build_partition, select_level, Side, StretchTerm};
pub use scalar::Scalar;
pub use tree::BinaryNode;

pub type TwoTuple = hierarchy::TwoTuple<f64>;
pub type Universe = hierarchy::Universe<f64>;
pub type TermPair = partition::TermPair<f64>;
pub type SideSemantics = partition::SideSemantics<f64>;
pub type TermSemantics = partition::TermSemantics<f64>;
pub type Partition = partition::UnbalancedPartition<f64>;
pub type WeightTable = partition::WeightTable<f64>;
pub type LinguisticValue = aggregate::LinguisticValue<f64>;
pub type AggregationResult = aggregate::AggregationResult<f64>;
pub type NodeTuple = tree::NodeTuple<f64>;

pub type TwoTupleF32 = hierarchy::TwoTuple<f32>;
pub type PartitionF32 = partition::UnbalancedPartition<f32>;
pub type LinguisticValueF32 = aggregate::LinguisticValue<f32>;
