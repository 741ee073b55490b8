//! Stretch factors: linguistic stand-ins for the numeric gap after each term.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::TermPair;

/// How far a term sits from the next one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StretchTerm {
    VeryStuck,
    Stuck,
    ModeratelyStuck,
    Far,
    VeryFar,
    /// Marks the last term, which has no successor.
    NotApplicable,
}

impl StretchTerm {
    pub const WEIGHTED: [StretchTerm; 5] = [
        StretchTerm::VeryStuck,
        StretchTerm::Stuck,
        StretchTerm::ModeratelyStuck,
        StretchTerm::Far,
        StretchTerm::VeryFar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StretchTerm::VeryStuck => "VeryStuck",
            StretchTerm::Stuck => "Stuck",
            StretchTerm::ModeratelyStuck => "ModeratelyStuck",
            StretchTerm::Far => "Far",
            StretchTerm::VeryFar => "VeryFar",
            StretchTerm::NotApplicable => "N/A",
        }
    }

    fn slot(self) -> Option<usize> {
        Self::WEIGHTED.iter().position(|s| *s == self)
    }
}

impl fmt::Display for StretchTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StretchTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "VeryStuck" => Ok(StretchTerm::VeryStuck),
            "Stuck" => Ok(StretchTerm::Stuck),
            "ModeratelyStuck" => Ok(StretchTerm::ModeratelyStuck),
            "Far" => Ok(StretchTerm::Far),
            "VeryFar" => Ok(StretchTerm::VeryFar),
            "N/A" | "NA" | "NotApplicable" => Ok(StretchTerm::NotApplicable),
            other => Err(Error::UnknownStretch(other.to_string())),
        }
    }
}

/// Relative gap width attached to each stretch term.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable<T> {
    weights: [T; 5],
}

impl<T: Scalar> Default for WeightTable<T> {
    /// One stretch step doubles the gap, like one hierarchy level doubles the grain.
    fn default() -> Self {
        WeightTable {
            weights: [1.0, 2.0, 4.0, 8.0, 16.0].map(T::of),
        }
    }
}

impl<T: Scalar> WeightTable<T> {
    /// Default table with the given entries overridden.
    pub fn with_overrides<'a, I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, T)>,
    {
        let mut table = Self::default();
        for (name, weight) in entries {
            let stretch: StretchTerm = name.parse()?;
            table.set(stretch, weight)?;
        }
        Ok(table)
    }

    pub fn set(&mut self, stretch: StretchTerm, weight: T) -> Result<()> {
        let slot = stretch
            .slot()
            .ok_or_else(|| Error::InvalidArgument("N/A carries no weight".to_string()))?;
        if !weight.is_finite() || weight <= T::zero() {
            return Err(Error::InvalidArgument(format!(
                "weight of {stretch} must be positive and finite, got {weight}"
            )));
        }
        self.weights[slot] = weight;
        Ok(())
    }

    pub fn weight(&self, stretch: StretchTerm) -> Option<T> {
        stretch.slot().map(|i| self.weights[i])
    }
}

/// Turns `(term, stretch)` entries into positions on `[0, 1]`.
///
/// Gap `k` is proportional to the weight of entry `k`'s stretch; the last entry
/// must be `NotApplicable`.
pub fn resolve_stretch<T: Scalar>(
    entries: &[(String, StretchTerm)],
    table: &WeightTable<T>,
) -> Result<Vec<TermPair<T>>> {
    if entries.len() < 2 {
        return Err(Error::TooFewTerms(entries.len()));
    }
    let mut seen = HashSet::new();
    for (name, _) in entries {
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateTerm(name.clone()));
        }
    }
    let (last, body) = entries.split_last().expect("at least two entries");
    if last.1 != StretchTerm::NotApplicable {
        return Err(Error::InvalidArgument(format!(
            "last term `{}` must carry N/A, found {}",
            last.0, last.1
        )));
    }

    let mut cumulative = Vec::with_capacity(entries.len());
    let mut total = T::zero();
    cumulative.push(total);
    for (i, (_, stretch)) in body.iter().enumerate() {
        let w = table
            .weight(*stretch)
            .ok_or(Error::MisplacedNotApplicable(i))?;
        total = total + w;
        cumulative.push(total);
    }

    Ok(entries
        .iter()
        .zip(cumulative)
        .map(|((name, _), c)| TermPair::new(name.clone(), c / total))
        .collect())
}
