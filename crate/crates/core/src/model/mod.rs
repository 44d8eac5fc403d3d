//! P-time event graph models: parsing, validation, normalization and
//! matrix extraction.

mod extract;
mod parse;
mod validate;

use std::fmt;

use thiserror::Error;

use crate::tropical::format_number;

pub use extract::{extract_matrices, normalize, MatrixBundle};
pub use parse::parse_model;
pub use validate::{validate, Diagnostic, DiagnosticKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("place `{place}` holds {tokens} tokens; normalize the model first")]
    NotNormalized { place: String, tokens: u32 },
}

/// A place with its single upstream and downstream transition.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaceSpec {
    pub name: String,
    pub from: String,
    pub to: String,
    pub tokens: u32,
    pub tmin: f64,
    /// `f64::INFINITY` when the sojourn time is unbounded.
    pub tmax: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PtegModel {
    pub name: String,
    pub transitions: Vec<String>,
    pub places: Vec<PlaceSpec>,
}

impl PtegModel {
    pub fn transition_index(&self, name: &str) -> Option<usize> {
        self.transitions.iter().position(|t| t == name)
    }

    pub fn is_normalized(&self) -> bool {
        self.places.iter().all(|p| p.tokens <= 1)
    }

    /// Model file text; parses back to an identical model.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

fn format_bound(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        format_number(v)
    }
}

impl fmt::Display for PtegModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pteg {}", self.name)?;
        writeln!(f, "transitions {}", self.transitions.join(" "))?;
        for p in &self.places {
            writeln!(
                f,
                "place {} from {} to {} tokens {} interval {} {}",
                p.name,
                p.from,
                p.to,
                p.tokens,
                format_number(p.tmin),
                format_bound(p.tmax)
            )?;
        }
        Ok(())
    }
}
