use super::{in_image_star, AnalysisError, CombinedModel};
use crate::spectral::{
    cyclicity, eigen_columns, eigenvectors, is_irreducible, max_cycle_mean, min_cycle_mean,
    min_eigenvectors, proportional, CycleMean,
};
use crate::tropical::{Matrix, Scalar};

/// An eigenvector initialization with its period `p` and eigenvalue `λ`, so
/// that `x(k+p) = x(k) + p·λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub x0: Vec<f64>,
    pub period: u64,
    pub lambda: CycleMean,
}

/// Shifts `x` so its first entry is 0.
fn anchor(x: &[f64]) -> Vec<f64> {
    let base = x[0];
    x.iter().map(|v| v - base + 0.0).collect()
}

/// Shifts `x` so that its smallest entry is 0.
pub fn shift_nonneg(x: &[f64]) -> Vec<f64> {
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    x.iter().map(|v| v - min + 0.0).collect()
}

fn finite_columns(cols: Vec<Vec<Scalar>>) -> Vec<Vec<f64>> {
    cols.into_iter()
        .filter(|c| c.iter().all(|v| v.is_finite()))
        .map(|c| c.into_iter().map(Scalar::to_f64).collect())
        .collect()
}

fn push_unique(out: &mut Vec<Vec<f64>>, v: Vec<f64>) {
    let as_scalars = |x: &[f64]| x.iter().map(|&v| Scalar::Finite(v)).collect::<Vec<_>>();
    let sv = as_scalars(&v);
    if !out.iter().any(|o| proportional(&as_scalars(o), &sv)) {
        out.push(v);
    }
}

/// Keeps the candidates whose first `period` states all lie in
/// `Im((ℬ♯⊗𝒜)*)`.
fn filter(
    cm: &CombinedModel,
    basis: Vec<Vec<f64>>,
    period: u64,
    lambda: CycleMean,
    step: &Matrix,
) -> Result<Vec<Candidate>, AnalysisError> {
    let m = cm.bsharp_a();
    let mut out = Vec::new();
    'next: for x0 in basis {
        let x0 = anchor(&x0);
        let mut x: Vec<Scalar> = x0.iter().map(|&v| Scalar::Finite(v)).collect();
        for i in 0..period {
            if i > 0 {
                x = step.mul_vec(&x)?;
            }
            let xf: Vec<f64> = x.iter().map(|v| v.to_f64()).collect();
            if x.iter().any(|v| !v.is_finite()) || !in_image_star(&m, &xf)? {
                continue 'next;
            }
        }
        out.push(Candidate { x0, period, lambda });
    }
    if out.is_empty() {
        Err(AnalysisError::NoAdmissibleCandidate)
    } else {
        Ok(out)
    }
}

/// Eigenvector initializations of the fastest behavior `x(k) = 𝒜^k⊗x(0)`
/// that keep it admissible.
///
/// For a `p`-cyclic `𝒜` the eigenvectors of `𝒜` come first, followed by
/// further finite eigenvectors of `𝒜^p`.
pub fn fastest_init(cm: &CombinedModel) -> Result<Vec<Candidate>, AnalysisError> {
    let a = &cm.cal_a;
    if !is_irreducible(a)? {
        return Err(AnalysisError::NotIrreducible { matrix: "calA" });
    }
    let lambda = max_cycle_mean(a)?;
    let p = cyclicity(a)?;
    let mut basis = Vec::new();
    for v in eigenvectors(a)? {
        push_unique(&mut basis, v);
    }
    if p > 1 {
        let (_, cols) = eigen_columns(&a.power(p as usize)?)?;
        for v in finite_columns(cols) {
            push_unique(&mut basis, v);
        }
    }
    filter(cm, basis, p, lambda, a)
}

/// Dual of [`fastest_init`] for the slowest behavior `x(k) = ℬ^k⊗'x(0)`.
pub fn slowest_init(cm: &CombinedModel) -> Result<Vec<Candidate>, AnalysisError> {
    let b = &cm.cal_b;
    if !is_irreducible(b)? {
        return Err(AnalysisError::NotIrreducible { matrix: "calB" });
    }
    let lambda = min_cycle_mean(b)?;
    let q = cyclicity(b)?;
    let mut basis = Vec::new();
    for v in min_eigenvectors(b)? {
        push_unique(&mut basis, v);
    }
    if q > 1 {
        let (_, cols) = eigen_columns(&b.power(q as usize)?.negate_dual())?;
        for v in finite_columns(cols) {
            push_unique(&mut basis, v.iter().map(|x| -x + 0.0).collect());
        }
    }
    filter(cm, basis, q, lambda, b)
}
