//! The combined first-order model, existence tests, extremal initial states
//! and trajectory checks.

mod init;
mod trajectory;

use thiserror::Error;

use crate::model::MatrixBundle;
use crate::spectral::{
    coupling_index, default_cap, is_irreducible, max_cycle_mean, min_cycle_mean, CouplingIndex,
    CycleMean, SpectralError,
};
use crate::tropical::{Matrix, Scalar, Semiring, TropicalError};

pub use init::{fastest_init, shift_nonneg, slowest_init, Candidate};
pub use trajectory::{
    run_trajectory, satisfies_first_order, verify_trajectory, Mode, Side, Trajectory, Violation,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("zero-token constraints are contradictory: B* diverges")]
    BStarDiverges,
    #[error("{matrix} is not irreducible")]
    NotIrreducible { matrix: &'static str },
    #[error("no eigenvector initialization passes the admissibility test")]
    NoAdmissibleCandidate,
    #[error("coupling index of {matrix} not found below {cap}")]
    CouplingNotFound { matrix: &'static str, cap: usize },
    #[error("state vector has {found} entries, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state x({k}) has a non-finite entry")]
    NonFiniteState { k: usize },
    #[error("trajectories can only be generated in fastest or slowest mode")]
    CustomMode,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

/// `𝒜 = B*⊗A⊗B*`, `ℬ = (B♯)_*⊗'C⊗'(B♯)_*` and `ℋ = ℬ♯⊗𝒜 ⊕ B`.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedModel {
    pub bundle: MatrixBundle,
    pub b_star: Matrix,
    pub cal_a: Matrix,
    pub cal_b: Matrix,
    pub h: Matrix,
    /// `None` when `ℋ` has a positive circuit.
    pub h_star: Option<Matrix>,
}

impl CombinedModel {
    pub fn dim(&self) -> usize {
        self.bundle.dim()
    }

    /// `ℬ♯⊗𝒜`, the matrix whose image-star holds the admissible one-step
    /// states.
    pub fn bsharp_a(&self) -> Matrix {
        self.cal_b
            .conjugate()
            .mul(&self.cal_a)
            .expect("square matrices of equal size")
    }
}

pub fn build_combined(bundle: MatrixBundle) -> Result<CombinedModel, AnalysisError> {
    let b_star = bundle
        .b
        .kleene_star()
        .map_err(|_| AnalysisError::BStarDiverges)?;
    let b_sharp_star = bundle
        .b
        .conjugate()
        .kleene_star()
        .map_err(|_| AnalysisError::BStarDiverges)?;
    let cal_a = b_star.mul(&bundle.a)?.mul(&b_star)?;
    let cal_b = b_sharp_star.mul(&bundle.c)?.mul(&b_sharp_star)?;
    let h = cal_b.conjugate().mul(&cal_a)?.add(&bundle.b)?;
    let h_star = h.kleene_star().ok();
    Ok(CombinedModel {
        bundle,
        b_star,
        cal_a,
        cal_b,
        h,
        h_star,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NoSolution,
    CandidatesExist,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NoSolution => "NO_SOLUTION",
            Verdict::CandidatesExist => "CANDIDATES_EXIST",
        }
    }
}

/// Circuit means are `None` when the graph has no circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct ExistenceReport {
    pub rho_cal_a: Option<CycleMean>,
    pub rho_prime_cal_b: Option<CycleMean>,
    pub rho_bsharp_a: Option<CycleMean>,
    pub rho_h: Option<CycleMean>,
    pub rho_h_nonpositive: bool,
    /// `ρ(𝒜) <= ρ'(ℬ)`.
    pub necessary_order_ok: bool,
    /// `𝒜 <= ℬ` entrywise.
    pub entrywise_ok: bool,
    pub verdict: Verdict,
}

fn optional(r: Result<CycleMean, SpectralError>) -> Result<Option<CycleMean>, SpectralError> {
    match r {
        Ok(m) => Ok(Some(m)),
        Err(SpectralError::NoCircuit) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn existence_report(cm: &CombinedModel) -> Result<ExistenceReport, AnalysisError> {
    let rho_cal_a = optional(max_cycle_mean(&cm.cal_a))?;
    let rho_prime_cal_b = optional(min_cycle_mean(&cm.cal_b))?;
    let rho_bsharp_a = optional(max_cycle_mean(&cm.bsharp_a()))?;
    let rho_h = optional(max_cycle_mean(&cm.h))?;
    let zero = CycleMean::integer(0.0);
    let rho_h_nonpositive = rho_h.is_none_or(|r| r <= zero);
    let necessary_order_ok = match (rho_cal_a, rho_prime_cal_b) {
        (Some(a), Some(b)) => a <= b,
        _ => true,
    };
    let entrywise_ok = cm.cal_a.leq(&cm.cal_b)?;
    let verdict = if rho_h_nonpositive && necessary_order_ok && entrywise_ok {
        Verdict::CandidatesExist
    } else {
        Verdict::NoSolution
    };
    Ok(ExistenceReport {
        rho_cal_a,
        rho_prime_cal_b,
        rho_bsharp_a,
        rho_h,
        rho_h_nonpositive,
        necessary_order_ok,
        entrywise_ok,
        verdict,
    })
}

/// `x ∈ Im(M*)`, tested as `M⊗x <= x`.
pub fn in_image_star(m: &Matrix, x: &[f64]) -> Result<bool, AnalysisError> {
    if m.rows() != x.len() {
        return Err(AnalysisError::DimensionMismatch {
            expected: m.rows(),
            found: x.len(),
        });
    }
    let xs: Vec<Scalar> = x.iter().map(|&v| Scalar::from_f64(v)).collect();
    let mx = m.mul_vec(&xs)?;
    Ok(mx.iter().zip(&xs).all(|(a, b)| a <= b))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryReport {
    pub coupling_cal_a: usize,
    pub coupling_cal_b: usize,
    /// `max(N_𝒜, N_ℬ)`, at least 1.
    pub horizon: usize,
    pub order_ok: bool,
    /// Smallest `n` with `(ℬ♯)ⁿ⊗𝒜ⁿ⊗x0 ≰ x0`.
    pub first_failure: Option<usize>,
}

impl NecessaryReport {
    pub fn passed(&self) -> bool {
        self.order_ok && self.first_failure.is_none()
    }
}

/// Evaluates `(ℬ♯)ⁿ⊗𝒜ⁿ⊗x0 <= x0` for `n = 1..max(N_𝒜, N_ℬ)` together with
/// `ρ(𝒜) <= ρ'(ℬ)`. Requires both matrices irreducible.
pub fn necessary_check(cm: &CombinedModel, x0: &[f64]) -> Result<NecessaryReport, AnalysisError> {
    if x0.len() != cm.dim() {
        return Err(AnalysisError::DimensionMismatch {
            expected: cm.dim(),
            found: x0.len(),
        });
    }
    if !is_irreducible(&cm.cal_a)? {
        return Err(AnalysisError::NotIrreducible { matrix: "calA" });
    }
    if !is_irreducible(&cm.cal_b)? {
        return Err(AnalysisError::NotIrreducible { matrix: "calB" });
    }
    let cap = default_cap(cm.dim());
    let found = |m: &Matrix, name: &'static str| match coupling_index(m, cap)? {
        CouplingIndex::Found(n) => Ok(n),
        CouplingIndex::NotFound { cap } => {
            Err(AnalysisError::CouplingNotFound { matrix: name, cap })
        }
    };
    let coupling_cal_a = found(&cm.cal_a, "calA")?;
    let coupling_cal_b = found(&cm.cal_b, "calB")?;
    let horizon = coupling_cal_a.max(coupling_cal_b).max(1);
    let order_ok = max_cycle_mean(&cm.cal_a)? <= min_cycle_mean(&cm.cal_b)?;

    let bs = cm.cal_b.conjugate();
    let mut a_pow = Matrix::identity(cm.dim(), Semiring::MaxPlus);
    let mut b_pow = Matrix::identity(cm.dim(), Semiring::MaxPlus);
    let mut first_failure = None;
    for n in 1..=horizon {
        a_pow = a_pow.mul(&cm.cal_a)?;
        b_pow = b_pow.mul(&bs)?;
        if !in_image_star(&b_pow.mul(&a_pow)?, x0)? {
            first_failure = Some(n);
            break;
        }
    }
    Ok(NecessaryReport {
        coupling_cal_a,
        coupling_cal_b,
        horizon,
        order_ok,
        first_failure,
    })
}
