use std::fmt;

use petgraph::algo::{connected_components, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex};

use super::extract::{chain_place_name, synthetic_name};
use super::PtegModel;
use crate::tropical::{Matrix, Scalar, Semiring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// `tmin > tmax`.
    InvalidInterval,
    NegativeTime,
    NotConnected,
    TokenFreeCircuit,
    /// Zero-token places whose bounds cannot all hold at once.
    InfeasibleBounds,
    /// A declared name collides with one created by normalization.
    NameClash,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn diag(kind: DiagnosticKind, message: String) -> Diagnostic {
    Diagnostic { kind, message }
}

/// Checks the structural assumptions the analysis relies on. An empty result
/// means the model is valid.
pub fn validate(m: &PtegModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let n = m.transitions.len();
    let idx = |t: &str| {
        m.transition_index(t)
            .expect("parser resolved transition names")
    };

    for p in &m.places {
        if p.tmin < 0.0 || p.tmax < 0.0 {
            out.push(diag(
                DiagnosticKind::NegativeTime,
                format!("place `{}`: negative sojourn time", p.name),
            ));
        }
        if p.tmin > p.tmax {
            out.push(diag(
                DiagnosticKind::InvalidInterval,
                format!(
                    "place `{}`: tmin {} exceeds tmax {}",
                    p.name, p.tmin, p.tmax
                ),
            ));
        }
        for k in 1..p.tokens {
            let t = synthetic_name(&p.name, k);
            let q = chain_place_name(&p.name, k);
            if m.transition_index(&t).is_some() {
                out.push(diag(
                    DiagnosticKind::NameClash,
                    format!(
                        "transition `{t}` clashes with the expansion of place `{}`",
                        p.name
                    ),
                ));
            }
            if m.places.iter().any(|o| o.name == q) {
                out.push(diag(
                    DiagnosticKind::NameClash,
                    format!(
                        "place `{q}` clashes with the expansion of place `{}`",
                        p.name
                    ),
                ));
            }
        }
    }

    let mut all = DiGraph::<(), ()>::with_capacity(n, m.places.len());
    let mut empty = DiGraph::<(), ()>::with_capacity(n, m.places.len());
    for _ in 0..n {
        all.add_node(());
        empty.add_node(());
    }
    for p in &m.places {
        let (u, v) = (NodeIndex::new(idx(&p.from)), NodeIndex::new(idx(&p.to)));
        all.add_edge(u, v, ());
        if p.tokens == 0 {
            empty.add_edge(u, v, ());
        }
    }
    if connected_components(&all) > 1 {
        out.push(diag(
            DiagnosticKind::NotConnected,
            "not connected: the model splits into several components".to_string(),
        ));
    }

    let mut token_free = false;
    for comp in tarjan_scc(&empty) {
        let cyclic = comp.len() > 1 || empty.contains_edge(comp[0], comp[0]);
        if cyclic {
            token_free = true;
            let mut names: Vec<usize> = comp.iter().map(|ix| ix.index()).collect();
            names.sort_unstable();
            let names: Vec<&str> = names.iter().map(|&i| m.transitions[i].as_str()).collect();
            out.push(diag(
                DiagnosticKind::TokenFreeCircuit,
                format!("token-free circuit through {}", names.join(", ")),
            ));
        }
    }

    if out.is_empty() && !token_free {
        let mut data = vec![Scalar::NegInf; n * n];
        for p in m.places.iter().filter(|p| p.tokens == 0) {
            let (from, to) = (idx(&p.from), idx(&p.to));
            let s = Semiring::MaxPlus;
            data[to * n + from] = s.add(data[to * n + from], Scalar::Finite(p.tmin));
            if p.tmax.is_finite() {
                data[from * n + to] = s.add(data[from * n + to], Scalar::Finite(-p.tmax));
            }
        }
        let b = Matrix::new(n, n, Semiring::MaxPlus, data).expect("n*n entries");
        if b.kleene_plus().is_err() {
            out.push(diag(
                DiagnosticKind::InfeasibleBounds,
                "zero-token places impose contradictory bounds (positive circuit in B)".to_string(),
            ));
        }
    }
    out
}
