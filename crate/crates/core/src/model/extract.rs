use super::{ModelError, PlaceSpec, PtegModel};
use crate::tropical::{Matrix, Scalar, Semiring};

pub(crate) fn synthetic_name(place: &str, k: u32) -> String {
    format!("{place}#{k}")
}

pub(crate) fn chain_place_name(place: &str, k: u32) -> String {
    format!("{place}~{k}")
}

/// Replaces every place holding `m >= 2` tokens by a chain of `m` one-token
/// places through `m - 1` new transitions. The chain places are `[0, 0]`
/// except the last, which keeps the original interval and name.
///
/// New transitions are appended after the declared ones, in place order.
pub fn normalize(m: &PtegModel) -> PtegModel {
    let mut transitions = m.transitions.clone();
    let mut places = Vec::with_capacity(m.places.len());
    for p in &m.places {
        if p.tokens <= 1 {
            places.push(p.clone());
            continue;
        }
        let mut upstream = p.from.clone();
        for k in 1..p.tokens {
            let t = synthetic_name(&p.name, k);
            places.push(PlaceSpec {
                name: chain_place_name(&p.name, k),
                from: upstream,
                to: t.clone(),
                tokens: 1,
                tmin: 0.0,
                tmax: 0.0,
            });
            transitions.push(t.clone());
            upstream = t;
        }
        places.push(PlaceSpec {
            from: upstream,
            tokens: 1,
            ..p.clone()
        });
    }
    PtegModel {
        name: m.name.clone(),
        transitions,
        places,
    }
}

/// Characteristic matrices of a normalized model.
///
/// A one-token place `i -> j` sets `a[j][i] = tmin` and `c[j][i] = tmax`; a
/// zero-token place `r -> l` sets `b_low[l][r] = tmin` and
/// `b_upp[l][r] = tmax`. Parallel places keep the tightest bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixBundle {
    pub a: Matrix,
    pub b_low: Matrix,
    /// Min-plus, so that its conjugate is the max-plus upper-bound part of `b`.
    pub b_upp: Matrix,
    /// `b_low ⊕ b_upp♯`.
    pub b: Matrix,
    pub c: Matrix,
    /// Transition name for each matrix index.
    pub index_map: Vec<String>,
}

impl MatrixBundle {
    pub fn dim(&self) -> usize {
        self.index_map.len()
    }
}

pub fn extract_matrices(m: &PtegModel) -> Result<MatrixBundle, ModelError> {
    if let Some(p) = m.places.iter().find(|p| p.tokens > 1) {
        return Err(ModelError::NotNormalized {
            place: p.name.clone(),
            tokens: p.tokens,
        });
    }
    let n = m.transitions.len();
    let (max, min) = (Semiring::MaxPlus, Semiring::MinPlus);
    let mut a = vec![max.zero(); n * n];
    let mut c = vec![min.zero(); n * n];
    let mut b_low = vec![max.zero(); n * n];
    let mut b_upp = vec![min.zero(); n * n];
    for p in &m.places {
        let from = m.transition_index(&p.from).expect("known transition");
        let to = m.transition_index(&p.to).expect("known transition");
        let at = to * n + from;
        let lo = Scalar::Finite(p.tmin);
        let hi = Scalar::from_f64(p.tmax);
        if p.tokens == 1 {
            a[at] = max.add(a[at], lo);
            c[at] = min.add(c[at], hi);
        } else {
            b_low[at] = max.add(b_low[at], lo);
            b_upp[at] = min.add(b_upp[at], hi);
        }
    }
    let build = |s, data| Matrix::new(n, n, s, data).expect("n*n entries");
    let b_low = build(max, b_low);
    let b_upp = build(min, b_upp);
    let b = b_low.add(&b_upp.conjugate()).expect("same shape and tag");
    Ok(MatrixBundle {
        a: build(max, a),
        b_low,
        b_upp,
        b,
        c: build(min, c),
        index_map: m.transitions.clone(),
    })
}
