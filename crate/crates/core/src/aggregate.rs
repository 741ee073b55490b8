//! Symbolic aggregation over an unbalanced partition.
//!
//! An operator is applied to the absolute positions of its operands, the
//! result `beta` is represented with `Δ` at the finest level carried by the
//! operands, and finally mapped back to the original term set (`LH⁻¹`) as the
//! term with the nearest kernel plus a residual offset.

use std::fmt;

use crate::error::{Error, Result};
use crate::hierarchy::{out_of_universe, represent, Level, TwoTuple};
use crate::partition::UnbalancedPartition;
use crate::scalar::Scalar;

/// A term of the partition shifted by a residual (absolute units).
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticValue<T> {
    pub term: String,
    pub residual: T,
}

impl<T: Scalar> LinguisticValue<T> {
    pub fn new(term: impl Into<String>, residual: T) -> Self {
        LinguisticValue {
            term: term.into(),
            residual,
        }
    }

    pub fn bare(term: impl Into<String>) -> Self {
        Self::new(term, T::zero())
    }

    /// Position on the partition's `[0, span]` axis.
    pub fn position(&self, partition: &UnbalancedPartition<T>) -> Result<T> {
        let p = partition.term(&self.term)?.kernel + self.residual;
        partition.universe().check(p)
    }
}

impl<T: Scalar> fmt::Display for LinguisticValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.term, self.residual)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregationResult<T> {
    pub beta: T,
    pub lh_tuple: TwoTuple<T>,
    pub value: LinguisticValue<T>,
}

/// Finest level among the sides of the given terms.
pub fn finest_level<T: Scalar, S: AsRef<str>>(
    partition: &UnbalancedPartition<T>,
    terms: &[S],
) -> Result<Level> {
    let mut finest = None;
    for name in terms {
        for side in partition.term(name.as_ref())?.sides() {
            finest = finest.max(Some(side.two_tuple.level));
        }
    }
    finest.ok_or(Error::EmptyAggregation)
}

/// `LH⁻¹`: nearest original term (ties to the lower kernel) and the residual.
pub fn lh_inverse<T: Scalar>(
    partition: &UnbalancedPartition<T>,
    beta: T,
) -> Result<LinguisticValue<T>> {
    partition.universe().check(beta)?;
    let mut best = &partition.terms()[0];
    for term in &partition.terms()[1..] {
        if (term.kernel - beta).abs() < (best.kernel - beta).abs() {
            best = term;
        }
    }
    Ok(LinguisticValue::new(best.name.clone(), beta - best.kernel))
}

/// Runs the three-step pipeline with an arbitrary combiner over operand positions.
pub fn apply_operator<T, F>(
    partition: &UnbalancedPartition<T>,
    combiner: F,
    operands: &[LinguisticValue<T>],
) -> Result<AggregationResult<T>>
where
    T: Scalar,
    F: FnOnce(&[T]) -> T,
{
    if operands.is_empty() {
        return Err(Error::EmptyAggregation);
    }
    let positions = operands
        .iter()
        .map(|o| o.position(partition))
        .collect::<Result<Vec<T>>>()?;
    let beta = combiner(&positions);
    let span = partition.span();
    if !beta.is_finite() || !partition.universe().contains(beta) {
        return Err(out_of_universe(beta, span));
    }
    let names: Vec<&str> = operands.iter().map(|o| o.term.as_str()).collect();
    let level = finest_level(partition, &names)?;
    Ok(AggregationResult {
        beta,
        lh_tuple: represent(beta, level, span)?,
        value: lh_inverse(partition, beta)?,
    })
}

pub fn mean<T: Scalar>(
    partition: &UnbalancedPartition<T>,
    operands: &[LinguisticValue<T>],
) -> Result<AggregationResult<T>> {
    apply_operator(partition, arithmetic_mean, operands)
}

/// The `⊕` operator; sums leaving the universe are rejected.
pub fn add<T: Scalar>(
    partition: &UnbalancedPartition<T>,
    a: &LinguisticValue<T>,
    b: &LinguisticValue<T>,
) -> Result<AggregationResult<T>> {
    apply_operator(partition, |p| p[0] + p[1], &[a.clone(), b.clone()])
}

pub fn arithmetic_mean<T: Scalar>(values: &[T]) -> T {
    let n = T::from_usize(values.len()).expect("operand count fits the scalar");
    values.iter().fold(T::zero(), |acc, &v| acc + v) / n
}

/// Builds a weighted-average combiner; weights are normalized by their sum.
pub fn weighted_mean<T: Scalar>(weights: Vec<T>) -> Result<impl FnOnce(&[T]) -> T> {
    if weights.iter().any(|w| !w.is_finite() || *w < T::zero()) {
        return Err(Error::InvalidArgument(
            "weights must be finite and non-negative".into(),
        ));
    }
    let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
    if !total.is_finite() || total <= T::zero() {
        return Err(Error::InvalidArgument(
            "weights must not all be zero".into(),
        ));
    }
    Ok(move |values: &[T]| {
        values
            .iter()
            .zip(&weights)
            .fold(T::zero(), |acc, (&v, &w)| acc + v * w)
            / total
    })
}

/// Weighted average; one weight per operand.
pub fn weighted_average<T: Scalar>(
    partition: &UnbalancedPartition<T>,
    operands: &[LinguisticValue<T>],
    weights: Vec<T>,
) -> Result<AggregationResult<T>> {
    if weights.len() != operands.len() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} operands",
            weights.len(),
            operands.len()
        )));
    }
    apply_operator(partition, weighted_mean(weights)?, operands)
}
