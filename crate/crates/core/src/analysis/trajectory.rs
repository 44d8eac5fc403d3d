use std::fmt;

use super::{AnalysisError, CombinedModel};
use crate::model::MatrixBundle;
use crate::spectral::CycleMean;
use crate::tropical::{format_number, Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Fastest,
    Slowest,
    Custom,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Fastest => "fastest",
            Mode::Slowest => "slowest",
            Mode::Custom => "custom",
        }
    }
}

/// Dater vectors `x(0..=K)`, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<Vec<f64>>,
    pub mode: Mode,
    /// `(λ, p)` when generated from an eigenvector initialization.
    pub period: Option<(CycleMean, u64)>,
}

impl Trajectory {
    pub fn custom(states: Vec<Vec<f64>>) -> Trajectory {
        Trajectory {
            states,
            mode: Mode::Custom,
            period: None,
        }
    }
}

/// `x(k) = 𝒜⊗x(k-1)` (fastest) or `x(k) = ℬ⊗'x(k-1)` (slowest).
pub fn run_trajectory(
    cm: &CombinedModel,
    x0: &[f64],
    mode: Mode,
    steps: usize,
) -> Result<Trajectory, AnalysisError> {
    let m = match mode {
        Mode::Fastest => &cm.cal_a,
        Mode::Slowest => &cm.cal_b,
        Mode::Custom => return Err(AnalysisError::CustomMode),
    };
    if x0.len() != cm.dim() {
        return Err(AnalysisError::DimensionMismatch {
            expected: cm.dim(),
            found: x0.len(),
        });
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(AnalysisError::NonFiniteState { k: 0 });
    }
    let mut states = vec![x0.to_vec()];
    let mut x: Vec<Scalar> = x0.iter().map(|&v| Scalar::Finite(v)).collect();
    for k in 1..=steps {
        x = m.mul_vec(&x)?;
        let row: Option<Vec<f64>> = x.iter().map(|v| v.finite()).collect();
        states.push(row.ok_or(AnalysisError::NonFiniteState { k })?);
    }
    Ok(Trajectory {
        states,
        mode,
        period: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `B⊗x(0) <= x(0)`.
    Initial,
    Lower,
    Upper,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Initial => "initial",
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }
}

/// A violated bound. `slack` is `x - bound` for lower bounds and
/// `bound - x` for upper ones, hence negative.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub k: usize,
    pub transition: String,
    pub side: Side,
    pub slack: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} transition={} side={} slack={}",
            self.k,
            self.transition,
            self.side.as_str(),
            format_number(self.slack)
        )
    }
}

fn scalars(x: &[f64]) -> Vec<Scalar> {
    x.iter().map(|&v| Scalar::from_f64(v)).collect()
}

fn combine(m: &Matrix, x: &[Scalar], n: &Matrix, y: &[Scalar]) -> Vec<Scalar> {
    let s = m.semiring();
    let u = m.mul_vec(x).expect("dimensions checked");
    let v = n.mul_vec(y).expect("dimensions checked");
    u.into_iter().zip(v).map(|(a, b)| s.add(a, b)).collect()
}

/// Checks the raw admissibility inequalities for `k >= 1`:
///
/// ```text
/// x(k) >= A⊗x(k-1) ⊕ B̲⊗x(k)
/// x(k) <= B♯⊗'x(k) ⊕' C⊗'x(k-1)
/// ```
///
/// plus `B⊗x(0) <= x(0)`. Returns every violated entry.
pub fn verify_trajectory(
    bundle: &MatrixBundle,
    t: &Trajectory,
) -> Result<Vec<Violation>, AnalysisError> {
    let n = bundle.dim();
    for x in &t.states {
        if x.len() != n {
            return Err(AnalysisError::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
    }
    if let Some(k) = t
        .states
        .iter()
        .position(|x| x.iter().any(|v| !v.is_finite()))
    {
        return Err(AnalysisError::NonFiniteState { k });
    }
    let mut out = Vec::new();
    let mut report = |k: usize, side: Side, x: &[f64], bound: &[Scalar]| {
        for i in 0..n {
            let (xi, b) = (Scalar::Finite(x[i]), bound[i]);
            let violated = match side {
                Side::Upper => xi > b,
                _ => xi < b,
            };
            if violated {
                let slack = match side {
                    Side::Upper => b.to_f64() - x[i],
                    _ => x[i] - b.to_f64(),
                };
                out.push(Violation {
                    k,
                    transition: bundle.index_map[i].clone(),
                    side,
                    slack,
                });
            }
        }
    };
    let Some(x0) = t.states.first() else {
        return Ok(out);
    };
    let b_x0 = bundle.b.mul_vec(&scalars(x0))?;
    report(0, Side::Initial, x0, &b_x0);
    let b_sharp = bundle.b.conjugate();
    for k in 1..t.states.len() {
        let prev = scalars(&t.states[k - 1]);
        let cur = scalars(&t.states[k]);
        let lower = combine(&bundle.a, &prev, &bundle.b_low, &cur);
        report(k, Side::Lower, &t.states[k], &lower);
        let upper = combine(&b_sharp, &cur, &bundle.c, &prev);
        report(k, Side::Upper, &t.states[k], &upper);
    }
    Ok(out)
}

/// First-order form: `𝒜⊗x(k-1) <= x(k) <= ℬ⊗'x(k-1)` for `k >= 1` and
/// `B⊗x(k) <= x(k)` for every `k`.
pub fn satisfies_first_order(
    cm: &CombinedModel,
    states: &[Vec<f64>],
) -> Result<bool, AnalysisError> {
    let leq = |a: &[Scalar], b: &[Scalar]| a.iter().zip(b).all(|(x, y)| x <= y);
    for (k, x) in states.iter().enumerate() {
        if x.len() != cm.dim() {
            return Err(AnalysisError::DimensionMismatch {
                expected: cm.dim(),
                found: x.len(),
            });
        }
        let xs = scalars(x);
        if !leq(&cm.bundle.b.mul_vec(&xs)?, &xs) {
            return Ok(false);
        }
        if k > 0 {
            let prev = scalars(&states[k - 1]);
            if !leq(&cm.cal_a.mul_vec(&prev)?, &xs) || !leq(&xs, &cm.cal_b.mul_vec(&prev)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
