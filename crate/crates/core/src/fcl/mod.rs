//! Front end for the Fuzzy Control Language subset extended with the `LING`
//! variable type.
//!
//! Two term descriptions are accepted inside a `FUZZIFY` block:
//!
//! ```text
//! TERM S := ling (NoAlcohol,0.0) (YoungLegalLimit,0.05) (RiskOfDeath,0.3);
//! TERM S := ling NoAlcohol YoungLegalLimit | LegalLimit | RiskOfDeath, extreme extreme;
//! ```
//!
//! The first lists `(term, position)` pairs and converts to an
//! [`UnbalancedPartition`]; the second is the density description, which is
//! parsed and kept in the model but cannot be converted.

mod ast;
mod lexer;
mod parser;

pub use ast::*;

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Error;
use crate::partition::{TermPair, UnbalancedPartition};
use crate::scalar::Scalar;

use lexer::Pos;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FclError {
    #[error("syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("semantic error: {message}")]
    Semantic {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("not supported: {0}")]
    NotSupported(String),

    #[error(transparent)]
    Partition(#[from] Error),
}

impl FclError {
    fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        FclError::Syntax {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    fn semantic(pos: Pos, message: impl Into<String>) -> Self {
        FclError::Semantic {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    /// 1-based `(line, column)` of the offending token, when known.
    pub fn location(&self) -> Option<(usize, usize)> {
        match self {
            FclError::Syntax { line, column, .. } | FclError::Semantic { line, column, .. } => {
                Some((*line, *column))
            }
            _ => None,
        }
    }

    /// `file:line:col: error: message`, or `file: error: message` without a location.
    pub fn diagnostic(&self, file: &str) -> String {
        match self.location() {
            Some((line, column)) => format!("{file}:{line}:{column}: error: {self}"),
            None => format!("{file}: error: {self}"),
        }
    }
}

pub fn parse(text: &str) -> Result<FclModel, FclError> {
    parser::Parser::new(text)?.parse_model()
}

/// Canonical text for `model`; parsing it yields an equal model.
pub fn serialize(model: &FclModel) -> String {
    let mut out = String::new();
    if !model.inputs.is_empty() {
        out.push_str("VAR_INPUT\n");
        for v in &model.inputs {
            let _ = writeln!(out, "    {} : {};", v.name, v.ty);
        }
        out.push_str("END_VAR\n");
    }
    for block in &model.fuzzify_blocks {
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "FUZZIFY {}", block.variable);
        for term in &block.terms {
            let _ = write!(out, "    TERM {} := ling", term.name);
            match &term.body {
                LingBody::Pairs(p) => {
                    for (name, v) in &p.pairs {
                        let _ = write!(out, " ({name}, {v:?})");
                    }
                }
                LingBody::Density(d) => {
                    let _ = write!(
                        out,
                        " {} | {} | {}, {} {}",
                        d.left_terms.join(" "),
                        d.center_term,
                        d.right_terms.join(" "),
                        d.left_density,
                        d.right_density
                    );
                }
            }
            out.push_str(";\n");
        }
        out.push_str("END_FUZZIFY\n");
    }
    out
}

/// Builds the partition declared for `variable`.
pub fn to_partition<T: Scalar>(
    model: &FclModel,
    variable: &str,
) -> Result<UnbalancedPartition<T>, FclError> {
    if model.input(variable).is_none() {
        return Err(FclError::UnknownVariable(variable.to_string()));
    }
    let term = model
        .fuzzify_block(variable)
        .and_then(|b| b.terms.first())
        .ok_or_else(|| FclError::UnknownVariable(format!("{variable} (no FUZZIFY block)")))?;
    match &term.body {
        LingBody::Pairs(p) => {
            let pairs: Vec<TermPair<T>> = p
                .pairs
                .iter()
                .map(|(name, v)| TermPair::new(name.clone(), T::of(*v)))
                .collect();
            Ok(UnbalancedPartition::build(&pairs)?)
        }
        LingBody::Density(_) => Err(FclError::NotSupported(format!(
            "`{variable}` uses a density description; converting it requires the \
             Herrera-Martinez unbalanced representation algorithm, which is not implemented. \
             Declare (term, position) pairs instead"
        ))),
    }
}
