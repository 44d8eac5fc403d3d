//! Max-plus and min-plus scalars and dense matrices.

mod matrix;
mod scalar;

use std::str::FromStr;

pub use matrix::{residual_left, Matrix};
pub use scalar::{format_number, Scalar, Semiring};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropicalError {
    #[error("{op}: dimension mismatch {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op}: semiring mismatch ({left} vs {right})")]
    SemiringMismatch {
        op: &'static str,
        left: Semiring,
        right: Semiring,
    },
    #[error("{op}: matrix is {rows}x{cols}, expected square")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("expected {expected} entries, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("Kleene star diverges (improving circuit through node {node})")]
    StarDiverges { node: usize },
    #[error("matrix text, line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl FromStr for Semiring {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maxplus" => Ok(Semiring::MaxPlus),
            "minplus" => Ok(Semiring::MinPlus),
            other => Err(format!("unknown semiring tag `{other}`")),
        }
    }
}

impl FromStr for Scalar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "-inf" => Ok(Scalar::NegInf),
            "+inf" | "inf" => Ok(Scalar::PosInf),
            _ => {
                let v: f64 = s.parse().map_err(|_| format!("bad number `{s}`"))?;
                if !v.is_finite() {
                    return Err(format!("bad number `{s}`"));
                }
                Ok(Scalar::Finite(v))
            }
        }
    }
}

impl FromStr for Matrix {
    type Err = TropicalError;

    /// Parses the format produced by `Display`. Blank lines are skipped.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: String| TropicalError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(err(hline, "expected `rows cols tag`".into()));
        }
        let rows: usize = parts[0]
            .parse()
            .map_err(|_| err(hline, format!("bad row count `{}`", parts[0])))?;
        let cols: usize = parts[1]
            .parse()
            .map_err(|_| err(hline, format!("bad column count `{}`", parts[1])))?;
        let semiring: Semiring = parts[2].parse().map_err(|m| err(hline, m))?;
        let mut data = Vec::with_capacity(rows * cols);
        let mut seen = 0;
        for (lineno, line) in lines {
            if seen == rows {
                return Err(err(lineno, "trailing data after last row".into()));
            }
            let row: Vec<Scalar> = line
                .split_whitespace()
                .map(|t| t.parse::<Scalar>().map_err(|m| err(lineno, m)))
                .collect::<Result<_, _>>()?;
            if row.len() != cols {
                return Err(err(
                    lineno,
                    format!("expected {cols} entries, found {}", row.len()),
                ));
            }
            data.extend(row);
            seen += 1;
        }
        if seen != rows {
            return Err(err(hline, format!("expected {rows} rows, found {seen}")));
        }
        Matrix::new(rows, cols, semiring, data)
    }
}
