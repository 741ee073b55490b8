//! Unbalanced partitions built from `(term, position)` pairs.
//!
//! Every gap between consecutive terms is assigned the coarsest hierarchy level
//! whose grain does not exceed the gap width. The left term gets its downside
//! from the label of that level nearest to its position, the right term gets
//! its upside from the following label, and both carry a translation so the
//! triangle peaks exactly on the stated position. Because the chosen grain
//! satisfies `grain <= d < 2 * grain`, the two flanks of a gap always cross
//! above zero, which gives the minimal covering value `epsilon`.

mod stretch;

pub use stretch::{resolve_stretch, StretchTerm, WeightTable};

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::hierarchy::{label_position, nearest_label, Level, TwoTuple, Universe};
use crate::scalar::Scalar;

/// A linguistic term bound to a position of the universe.
#[derive(Debug, Clone, PartialEq)]
pub struct TermPair<T> {
    pub name: String,
    pub v: T,
}

impl<T> TermPair<T> {
    pub fn new(name: impl Into<String>, v: T) -> Self {
        TermPair {
            name: name.into(),
            v,
        }
    }
}

/// Left (upside) or right (downside) flank of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Upside,
    Downside,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Upside => "upside",
            Side::Downside => "downside",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideSemantics<T> {
    pub side: Side,
    pub two_tuple: TwoTuple<T>,
}

impl<T: Scalar> SideSemantics<T> {
    pub fn grain(&self, span: T) -> T {
        self.two_tuple.level.grain(span)
    }
}

/// Semantics of one term: its kernel and up to two half-triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct TermSemantics<T> {
    pub name: String,
    /// Shifted position where the membership equals one.
    pub kernel: T,
    pub upside: Option<SideSemantics<T>>,
    pub downside: Option<SideSemantics<T>>,
}

impl<T: Scalar> TermSemantics<T> {
    pub fn sides(&self) -> impl Iterator<Item = &SideSemantics<T>> {
        self.upside.iter().chain(self.downside.iter())
    }

    /// Triangular membership degree at `u`; `u` is assumed to lie in the universe.
    pub fn degree(&self, u: T, span: T) -> T {
        let (side, distance) = if u < self.kernel {
            (self.upside.as_ref(), self.kernel - u)
        } else if u > self.kernel {
            (self.downside.as_ref(), u - self.kernel)
        } else {
            return T::one();
        };
        match side {
            Some(s) => (T::one() - distance / s.grain(span)).max(T::zero()),
            None => T::zero(),
        }
    }
}

/// A covering of the universe by the semantics of an ordered term set.
#[derive(Debug, Clone, PartialEq)]
pub struct UnbalancedPartition<T> {
    universe: Universe<T>,
    terms: Vec<TermSemantics<T>>,
    gap_levels: Vec<Level>,
    epsilon: T,
}

/// Coarsest level whose grain is not larger than the gap `d`.
pub fn select_level<T: Scalar>(d: T, span: T) -> Result<Level> {
    if d.is_nan() || d <= T::zero() {
        return Err(Error::DegenerateGap {
            gap: 0,
            width: d.as_f64(),
        });
    }
    if d > span {
        return Err(Error::InvalidArgument(format!(
            "gap {d} is wider than the span {span}"
        )));
    }
    let mut level = Level::new(0)?;
    while level.grain(span) > d {
        level = level.finer()?;
    }
    Ok(level)
}

impl<T: Scalar> UnbalancedPartition<T> {
    pub fn build(pairs: &[TermPair<T>]) -> Result<Self> {
        validate_pairs(pairs)?;

        let first = pairs[0].v;
        let last = pairs[pairs.len() - 1].v;
        let universe = Universe::new(first, last - first)?;
        let span = universe.span();
        let kernels: Vec<T> = pairs.iter().map(|p| universe.to_internal(p.v)).collect();

        let mut terms: Vec<TermSemantics<T>> = pairs
            .iter()
            .zip(&kernels)
            .map(|(p, &kernel)| TermSemantics {
                name: p.name.clone(),
                kernel,
                upside: None,
                downside: None,
            })
            .collect();
        let mut gap_levels = Vec::with_capacity(pairs.len() - 1);

        for k in 0..pairs.len() - 1 {
            let d = kernels[k + 1] - kernels[k];
            let level = select_level(d, span).map_err(|e| match e {
                Error::DegenerateGap { width, .. } => Error::DegenerateGap { gap: k, width },
                other => other,
            })?;
            let (mut j, _) = nearest_label(kernels[k], level, span)?;
            // Float noise can push the left label onto the last one of the level.
            j = j.min(level.label_count() - 2);
            let down_alpha = kernels[k] - label_position(level, j, span);
            let up_alpha = kernels[k + 1] - label_position(level, j + 1, span);
            terms[k].downside = Some(SideSemantics {
                side: Side::Downside,
                two_tuple: TwoTuple::new(level, j, down_alpha)?,
            });
            terms[k + 1].upside = Some(SideSemantics {
                side: Side::Upside,
                two_tuple: TwoTuple::new(level, j + 1, up_alpha)?,
            });
            gap_levels.push(level);
        }

        let epsilon = gap_levels
            .iter()
            .zip(kernels.windows(2))
            .map(|(level, w)| gap_floor(w[1] - w[0], level.grain(span)))
            .fold(T::infinity(), T::min);
        if epsilon.is_nan() || epsilon <= T::zero() {
            return Err(Error::InvalidArgument(format!(
                "partition does not cover the universe (epsilon = {epsilon})"
            )));
        }

        Ok(UnbalancedPartition {
            universe,
            terms,
            gap_levels,
            epsilon,
        })
    }

    pub fn universe(&self) -> &Universe<T> {
        &self.universe
    }

    pub fn span(&self) -> T {
        self.universe.span()
    }

    pub fn terms(&self) -> &[TermSemantics<T>] {
        &self.terms
    }

    pub fn gap_levels(&self) -> &[Level] {
        &self.gap_levels
    }

    /// Gap widths `d_k` between consecutive kernels.
    pub fn gaps(&self) -> impl Iterator<Item = T> + '_ {
        self.terms.windows(2).map(|w| w[1].kernel - w[0].kernel)
    }

    /// Minimum over the universe of the largest membership degree.
    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn term_index(&self, name: &str) -> Result<usize> {
        self.terms
            .iter()
            .position(|t| t.name == name)
            .ok_or_else(|| Error::UnknownTerm(name.to_string()))
    }

    pub fn term(&self, name: &str) -> Result<&TermSemantics<T>> {
        self.term_index(name).map(|i| &self.terms[i])
    }

    pub fn membership(&self, name: &str, u: T) -> Result<T> {
        self.universe.check(u)?;
        Ok(self.term(name)?.degree(u, self.span()))
    }

    /// Every term with a positive degree at `u`, strongest first.
    pub fn fuzzify(&self, u: T) -> Result<Vec<(&str, T)>> {
        self.universe.check(u)?;
        let span = self.span();
        let mut out: Vec<(&str, T)> = self
            .terms
            .iter()
            .map(|t| (t.name.as_str(), t.degree(u, span)))
            .filter(|(_, d)| *d > T::zero())
            .collect();
        out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
        Ok(out)
    }

    /// Largest membership degree over all terms at `u`.
    pub fn max_membership(&self, u: T) -> Result<T> {
        self.universe.check(u)?;
        let span = self.span();
        Ok(self
            .terms
            .iter()
            .map(|t| t.degree(u, span))
            .fold(T::zero(), T::max))
    }
}

/// Height at which the two flanks of a gap of width `d` and grain `g` cross.
fn gap_floor<T: Scalar>(d: T, g: T) -> T {
    T::one() - d / (g + g)
}

fn validate_pairs<T: Scalar>(pairs: &[TermPair<T>]) -> Result<()> {
    if pairs.len() < 2 {
        return Err(Error::TooFewTerms(pairs.len()));
    }
    let mut seen = HashSet::new();
    for p in pairs {
        if !p.v.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "position of `{}` is not finite",
                p.name
            )));
        }
        if !seen.insert(p.name.as_str()) {
            return Err(Error::DuplicateTerm(p.name.clone()));
        }
    }
    for (k, w) in pairs.windows(2).enumerate() {
        if w[1].v == w[0].v {
            return Err(Error::DegenerateGap { gap: k, width: 0.0 });
        }
        if w[1].v < w[0].v {
            return Err(Error::UnorderedInput {
                index: k + 1,
                name: w[1].name.clone(),
            });
        }
    }
    Ok(())
}

pub fn build_partition<T: Scalar>(pairs: &[TermPair<T>]) -> Result<UnbalancedPartition<T>> {
    UnbalancedPartition::build(pairs)
}

pub fn membership<T: Scalar>(partition: &UnbalancedPartition<T>, name: &str, u: T) -> Result<T> {
    partition.membership(name, u)
}

pub fn coverage_epsilon<T: Scalar>(partition: &UnbalancedPartition<T>) -> T {
    partition.epsilon()
}

pub fn fuzzify<T: Scalar>(partition: &UnbalancedPartition<T>, u: T) -> Result<Vec<(&str, T)>> {
    partition.fuzzify(u)
}
