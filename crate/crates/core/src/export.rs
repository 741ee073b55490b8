//! JSON documents for partitions.
//!
//! ```json
//! {
//!   "universe": {"v_min": 0, "span": 0.3},
//!   "epsilon": 0.2,
//!   "terms": [{"name": "NoAlcohol", "kernel": 0,
//!              "downside": {"level": 3, "index": 0, "alpha_abs": 0, "alpha_norm": 0}}],
//!   "gap_levels": [3]
//! }
//! ```

use serde::{Serialize, Serializer};

use crate::partition::{SideSemantics, UnbalancedPartition};
use crate::scalar::Scalar;

/// Minimum number of significant digits kept in partition documents.
pub const PARTITION_DIGITS: usize = 12;

/// A number rounded to a fixed count of significant digits.
///
/// Integral values serialize as JSON integers (`1`, not `1.0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rounded {
    pub value: f64,
    pub digits: usize,
}

impl Rounded {
    pub fn new(value: f64, digits: usize) -> Self {
        Rounded { value, digits }
    }

    pub fn get(&self) -> f64 {
        round_significant(self.value, self.digits)
    }
}

pub fn round_significant(value: f64, digits: usize) -> f64 {
    if !value.is_finite() || value == 0.0 {
        return value;
    }
    let digits = digits.clamp(1, 17);
    format!("{:.*e}", digits - 1, value)
        .parse()
        .unwrap_or(value)
}

impl Serialize for Rounded {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v = self.get();
        if v.fract() == 0.0 && v.abs() < 9.0e15 {
            serializer.serialize_i64(v as i64)
        } else {
            serializer.serialize_f64(v)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionDocument {
    pub universe: UniverseDocument,
    pub epsilon: Rounded,
    pub terms: Vec<TermDocument>,
    pub gap_levels: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniverseDocument {
    pub v_min: Rounded,
    pub span: Rounded,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermDocument {
    pub name: String,
    pub kernel: Rounded,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upside: Option<SideDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub downside: Option<SideDocument>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SideDocument {
    pub level: u32,
    pub index: u64,
    pub alpha_abs: Rounded,
    pub alpha_norm: Rounded,
}

impl PartitionDocument {
    /// Document with numbers kept to `digits` significant digits (never fewer than 12).
    pub fn new<T: Scalar>(partition: &UnbalancedPartition<T>, digits: usize) -> Self {
        let digits = digits.max(PARTITION_DIGITS);
        let num = |v: T| Rounded::new(v.as_f64(), digits);
        let span = partition.span();
        let side = |s: &SideSemantics<T>| SideDocument {
            level: s.two_tuple.level.number(),
            index: s.two_tuple.index,
            alpha_abs: num(s.two_tuple.alpha),
            alpha_norm: num(s.two_tuple.alpha_normalized(span)),
        };
        PartitionDocument {
            universe: UniverseDocument {
                v_min: num(partition.universe().v_min()),
                span: num(span),
            },
            epsilon: num(partition.epsilon()),
            terms: partition
                .terms()
                .iter()
                .map(|t| TermDocument {
                    name: t.name.clone(),
                    kernel: num(t.kernel),
                    upside: t.upside.as_ref().map(side),
                    downside: t.downside.as_ref().map(side),
                })
                .collect(),
            gap_levels: partition.gap_levels().iter().map(|l| l.number()).collect(),
        }
    }
}

impl<T: Scalar> From<&UnbalancedPartition<T>> for PartitionDocument {
    fn from(partition: &UnbalancedPartition<T>) -> Self {
        PartitionDocument::new(partition, PARTITION_DIGITS)
    }
}
