//! Linguistic hierarchy levels and the transforms between numeric positions
//! and `(label, translation)` pairs.
//!
//! Level `t` holds `n(t) = 2^t + 1` uniformly spaced triangular labels
//! (`n(0) = 2`, `n(1) = 3`, `n(t + 1) = 2 n(t) - 1`). Everything here works on an
//! absolute universe `[0, span]`, so a level's grain is `span / (n(t) - 1)` and a
//! translation `alpha` is expressed in universe units.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Deepest level supported; `n(62) = 2^62 + 1` still fits in a `u64` label index.
pub const MAX_LEVEL: u32 = 62;

/// A level `l(t, n(t))` of a linguistic hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Level(u32);

impl Level {
    pub fn new(t: u32) -> Result<Self> {
        if t > MAX_LEVEL {
            return Err(Error::LevelOverflow(t));
        }
        Ok(Level(t))
    }

    pub fn number(self) -> u32 {
        self.0
    }

    /// Number of labels `n(t)`.
    pub fn label_count(self) -> u64 {
        (1u64 << self.0) + 1
    }

    /// Distance between two adjacent label kernels on `[0, span]`.
    pub fn grain<T: Scalar>(self, span: T) -> T {
        // n(t) - 1 is a power of two, so the division is exact in binary floating point.
        span / T::from_u64(1u64 << self.0).expect("power of two fits any float")
    }

    /// The next finer level, `l(t + 1, 2 n(t) - 1)`.
    pub fn finer(self) -> Result<Self> {
        Level::new(self.0 + 1)
    }

    pub fn coarser(self) -> Option<Self> {
        self.0.checked_sub(1).map(Level)
    }
}

impl TryFrom<i64> for Level {
    type Error = Error;

    fn try_from(t: i64) -> Result<Self> {
        if t < 0 {
            return Err(Error::InvalidArgument(format!(
                "level number must be non-negative, got {t}"
            )));
        }
        match u32::try_from(t) {
            Ok(t) => Level::new(t),
            Err(_) => Err(Error::LevelOverflow(u32::MAX)),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l({},{})", self.0, self.label_count())
    }
}

/// `n(t)` for level number `t`.
pub fn level_count(t: u32) -> Result<u64> {
    Level::new(t).map(Level::label_count)
}

/// Grain of level `t` scaled to `span`.
pub fn grain<T: Scalar>(t: u32, span: T) -> Result<T> {
    Ok(Level::new(t)?.grain(span))
}

/// The numeric universe the terms are projected on.
///
/// Inputs are shifted so that the first kernel sits at zero; `v_min` keeps the
/// original offset so positions can be mapped back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Universe<T> {
    v_min: T,
    span: T,
}

impl<T: Scalar> Universe<T> {
    pub fn new(v_min: T, span: T) -> Result<Self> {
        if !v_min.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "universe origin {v_min} is not finite"
            )));
        }
        if !span.is_finite() || span <= T::zero() {
            return Err(Error::InvalidArgument(format!(
                "universe span must be positive and finite, got {span}"
            )));
        }
        Ok(Universe { v_min, span })
    }

    pub fn v_min(&self) -> T {
        self.v_min
    }

    pub fn span(&self) -> T {
        self.span
    }

    pub fn contains(&self, position: T) -> bool {
        position >= T::zero() && position <= self.span
    }

    pub fn check(&self, position: T) -> Result<T> {
        if self.contains(position) {
            Ok(position)
        } else {
            Err(out_of_universe(position, self.span))
        }
    }

    /// Maps an input-scale value onto `[0, span]`.
    pub fn to_internal(&self, value: T) -> T {
        value - self.v_min
    }

    pub fn to_external(&self, position: T) -> T {
        position + self.v_min
    }
}

pub(crate) fn out_of_universe<T: Scalar>(value: T, span: T) -> Error {
    Error::OutOfUniverse {
        value: value.as_f64(),
        span: span.as_f64(),
    }
}

/// A label of a hierarchy level together with its symbolic translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTuple<T> {
    pub level: Level,
    pub index: u64,
    /// Translation in absolute universe units.
    pub alpha: T,
}

impl<T: Scalar> TwoTuple<T> {
    pub fn new(level: Level, index: u64, alpha: T) -> Result<Self> {
        if index >= level.label_count() {
            return Err(Error::InvalidArgument(format!(
                "label index {index} out of range for {level}"
            )));
        }
        Ok(TwoTuple {
            level,
            index,
            alpha,
        })
    }

    /// `Δ⁻¹`: the numeric position `index * grain + alpha`.
    pub fn position(&self, span: T) -> T {
        label_position(self.level, self.index, span) + self.alpha
    }

    /// Translation divided by the span, i.e. on the `[0, 1]` scale.
    pub fn alpha_normalized(&self, span: T) -> T {
        self.alpha / span
    }
}

impl<T: Scalar> fmt::Display for TwoTuple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(s_{}^{}, {})",
            self.index,
            self.level.label_count(),
            self.alpha
        )
    }
}

/// Kernel of label `index` of `level` on `[0, span]`.
pub fn label_position<T: Scalar>(level: Level, index: u64, span: T) -> T {
    T::from_u64(index).expect("label index fits any float") * level.grain(span)
}

/// `Δ⁻¹` as a free function.
pub fn position<T: Scalar>(two_tuple: &TwoTuple<T>, span: T) -> T {
    two_tuple.position(span)
}

/// The two labels bracketing `value`, as `(lower, upper)` indices.
fn bracket<T: Scalar>(value: T, level: Level, span: T) -> (u64, u64) {
    let last = level.label_count() - 1;
    let q = (value / level.grain(span)).floor();
    let lower = q.to_u64().unwrap_or(0).min(last);
    (lower, (lower + 1).min(last))
}

fn check_range<T: Scalar>(value: T, span: T) -> Result<()> {
    if !span.is_finite() || span <= T::zero() {
        return Err(Error::InvalidArgument(format!(
            "span must be positive and finite, got {span}"
        )));
    }
    if value >= T::zero() && value <= span {
        Ok(())
    } else {
        Err(out_of_universe(value, span))
    }
}

/// `Δ`: represents `beta` with the closest label of `level`.
///
/// Exact halves go to the larger index, so `alpha` lies in `[-grain/2, grain/2)`.
pub fn represent<T: Scalar>(beta: T, level: Level, span: T) -> Result<TwoTuple<T>> {
    check_range(beta, span)?;
    let (lower, upper) = bracket(beta, level, span);
    let d_lower = (beta - label_position(level, lower, span)).abs();
    let d_upper = (label_position(level, upper, span) - beta).abs();
    let index = if d_upper <= d_lower { upper } else { lower };
    Ok(TwoTuple {
        level,
        index,
        alpha: beta - label_position(level, index, span),
    })
}

/// Closest label to `v` within `level`, ties going to the lower index.
///
/// Returns the label index and the translation `v - kernel`.
pub fn nearest_label<T: Scalar>(v: T, level: Level, span: T) -> Result<(u64, T)> {
    check_range(v, span)?;
    let (lower, upper) = bracket(v, level, span);
    let d_lower = (v - label_position(level, lower, span)).abs();
    let d_upper = (label_position(level, upper, span) - v).abs();
    let index = if d_lower <= d_upper { lower } else { upper };
    Ok((index, v - label_position(level, index, span)))
}
