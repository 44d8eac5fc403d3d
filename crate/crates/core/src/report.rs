//! Plain-text report printed by `pteg analyze`.
//!
//! The format is indented `key: value` lines; lists of numbers are written
//! as `[a, b, c]` and repeated items as `- ` entries.

use std::fmt::Write;

use crate::analysis::{
    existence_report, fastest_init, necessary_check, slowest_init, AnalysisError, Candidate,
    CombinedModel, ExistenceReport, Verdict,
};
use crate::spectral::{default_cap, spectral_report, CouplingIndex, CycleMean, SpectralReport};
use crate::tropical::{format_number, Matrix};

pub fn format_vector(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|&v| format_number(v)).collect();
    format!("[{}]", parts.join(", "))
}

fn format_mean(m: Option<CycleMean>) -> String {
    m.map_or_else(|| "none".to_string(), |m| m.to_string())
}

fn names(index: &[String], nodes: &[usize]) -> String {
    let parts: Vec<&str> = nodes.iter().map(|&i| index[i].as_str()).collect();
    format!("[{}]", parts.join(", "))
}

/// Why the verdict is negative, one line per failed test.
pub fn reasons(e: &ExistenceReport) -> Vec<String> {
    let zero = CycleMean::integer(0.0);
    let mut out = Vec::new();
    if e.rho_bsharp_a.is_some_and(|r| r > zero) {
        out.push("positive circuit in BsharpA: dead token".to_string());
    }
    if !e.rho_h_nonpositive {
        out.push("positive circuit in H: H* diverges".to_string());
    }
    if !e.necessary_order_ok {
        out.push("rho(calA) > rho'(calB)".to_string());
    }
    if !e.entrywise_ok {
        out.push("calA <= calB fails entrywise".to_string());
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOutput {
    pub text: String,
    pub verdict: Verdict,
    /// Set when a required irreducibility hypothesis fails.
    pub precondition_failure: Option<String>,
}

fn write_spectral(out: &mut String, key: &str, index: &[String], m: &Matrix) {
    let _ = writeln!(out, "{key}:");
    match spectral_report(m, default_cap(m.rows())) {
        Ok(r) => write_spectral_body(out, index, &r),
        Err(e) => {
            let _ = writeln!(out, "  status: {e}");
        }
    }
}

fn write_spectral_body(out: &mut String, index: &[String], r: &SpectralReport) {
    let _ = writeln!(out, "  semiring: {}", r.semiring);
    let _ = writeln!(out, "  eigenvalue: {}", r.eigenvalue);
    let _ = writeln!(out, "  cyclicity: {}", r.cyclicity);
    let _ = writeln!(out, "  irreducible: {}", r.irreducible);
    let coupling = match r.coupling_index {
        CouplingIndex::Found(n) => n.to_string(),
        CouplingIndex::NotFound { cap } => format!("not found (cap {cap})"),
    };
    let _ = writeln!(out, "  coupling_index: {coupling}");
    let _ = writeln!(out, "  critical_nodes: {}", names(index, &r.critical.nodes));
    let _ = writeln!(out, "  critical_components:");
    for (c, p) in r
        .critical
        .components
        .iter()
        .zip(&r.critical.component_cyclicity)
    {
        let _ = writeln!(out, "    - nodes: {}", names(index, c));
        let _ = writeln!(out, "      cyclicity: {p}");
    }
    let _ = writeln!(out, "  eigenvectors:");
    for v in &r.eigenvector_basis {
        let _ = writeln!(out, "    - {}", format_vector(v));
    }
}

fn write_candidates(out: &mut String, key: &str, result: &Result<Vec<Candidate>, AnalysisError>) {
    let _ = writeln!(out, "{key}:");
    match result {
        Ok(cands) => {
            let _ = writeln!(out, "  status: ok");
            let _ = writeln!(out, "  period: {}", cands[0].period);
            let _ = writeln!(out, "  lambda: {}", cands[0].lambda);
            let _ = writeln!(out, "  vectors:");
            for c in cands {
                let _ = writeln!(out, "    - {}", format_vector(&c.x0));
            }
        }
        Err(e) => {
            let _ = writeln!(out, "  status: {e}");
        }
    }
}

/// Runs the full analysis and renders it.
pub fn analyze(model_name: &str, cm: &CombinedModel) -> Result<AnalyzeOutput, AnalysisError> {
    let index = &cm.bundle.index_map;
    let ex = existence_report(cm)?;
    let mut out = String::new();
    let _ = writeln!(out, "model: {model_name}");
    let _ = writeln!(out, "dimension: {}", cm.dim());
    let _ = writeln!(out, "transitions: [{}]", index.join(", "));
    let _ = writeln!(out, "existence:");
    let _ = writeln!(out, "  rho_calA: {}", format_mean(ex.rho_cal_a));
    let _ = writeln!(out, "  rho_prime_calB: {}", format_mean(ex.rho_prime_cal_b));
    let _ = writeln!(out, "  rho_BsharpA: {}", format_mean(ex.rho_bsharp_a));
    let _ = writeln!(out, "  rho_H: {}", format_mean(ex.rho_h));
    let _ = writeln!(out, "  rho_H_nonpositive: {}", ex.rho_h_nonpositive);
    let _ = writeln!(out, "  necessary_order_ok: {}", ex.necessary_order_ok);
    let _ = writeln!(out, "  entrywise_ok: {}", ex.entrywise_ok);
    let _ = writeln!(out, "  verdict: {}", ex.verdict.as_str());
    let rs = reasons(&ex);
    if !rs.is_empty() {
        let _ = writeln!(out, "  reasons:");
        for r in rs {
            let _ = writeln!(out, "    - {r}");
        }
    }
    write_spectral(&mut out, "spectral_calA", index, &cm.cal_a);
    write_spectral(&mut out, "spectral_calB", index, &cm.cal_b);

    let mut precondition_failure = None;
    if ex.verdict == Verdict::CandidatesExist {
        let fastest = fastest_init(cm);
        let slowest = slowest_init(cm);
        for r in [&fastest, &slowest] {
            if let Err(AnalysisError::NotIrreducible { matrix }) = r {
                precondition_failure.get_or_insert(format!("{matrix} is not irreducible"));
            }
        }
        write_candidates(&mut out, "fastest", &fastest);
        write_candidates(&mut out, "slowest", &slowest);
        if let Ok(cands) = &fastest {
            let _ = writeln!(out, "necessary_check:");
            match necessary_check(cm, &cands[0].x0) {
                Ok(n) => {
                    let _ = writeln!(out, "  horizon: {}", n.horizon);
                    let _ = writeln!(out, "  passed: {}", n.passed());
                }
                Err(e) => {
                    let _ = writeln!(out, "  status: {e}");
                }
            }
        }
    }
    Ok(AnalyzeOutput {
        text: out,
        verdict: ex.verdict,
        precondition_failure,
    })
}
