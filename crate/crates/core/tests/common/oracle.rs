//! Brute-force reference implementations and random instance builders used
//! by the property suites.

use pteg_core::analysis::{run_trajectory, CombinedModel, Mode};
use pteg_core::model::{validate, PlaceSpec, PtegModel};
use pteg_core::spectral::CycleMean;
use pteg_core::tropical::{Matrix, Scalar, Semiring};

/// Source of integers in an inclusive range.
pub trait Draw {
    fn draw(&mut self, lo: i64, hi: i64) -> i64;
}

impl<F: FnMut(i64, i64) -> i64> Draw for F {
    fn draw(&mut self, lo: i64, hi: i64) -> i64 {
        self(lo, hi)
    }
}

/// Replays a fixed tape of integers, cycling when exhausted.
pub struct Tape<'a> {
    values: &'a [u32],
    pos: usize,
}

impl<'a> Tape<'a> {
    pub fn new(values: &'a [u32]) -> Tape<'a> {
        assert!(!values.is_empty());
        Tape { values, pos: 0 }
    }
}

impl Draw for Tape<'_> {
    fn draw(&mut self, lo: i64, hi: i64) -> i64 {
        let v = self.values[self.pos % self.values.len()] as i64;
        self.pos += 1;
        lo + v.rem_euclid(hi - lo + 1)
    }
}

/// Square max-plus matrix with integer weights in `[-9, 9]`; roughly one
/// entry in `sparsity` is ε.
pub fn random_matrix(d: &mut impl Draw, n: usize, sparsity: i64) -> Matrix {
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let row: Vec<f64> = (0..n)
            .map(|_| {
                if d.draw(0, sparsity - 1) == 0 {
                    f64::NEG_INFINITY
                } else {
                    d.draw(-9, 9) as f64
                }
            })
            .collect();
        rows.push(row);
    }
    Matrix::from_rows(Semiring::MaxPlus, &rows)
}

/// Integer weight of the circuit visiting `nodes` in order (arc `u -> v` is
/// entry `(v, u)`), or `None` if an arc is missing.
pub fn circuit_weight(a: &Matrix, nodes: &[usize]) -> Option<f64> {
    let mut w = 0.0;
    for k in 0..nodes.len() {
        let (u, v) = (nodes[k], nodes[(k + 1) % nodes.len()]);
        w += a.get(v, u).finite()?;
    }
    Some(w)
}

/// All elementary circuits, each listed once starting from its smallest node.
pub fn elementary_circuits(a: &Matrix) -> Vec<Vec<usize>> {
    fn extend(a: &Matrix, start: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        for v in start..a.rows() {
            if !a.get(v, u).is_finite() {
                continue;
            }
            if v == start {
                out.push(path.clone());
            } else if !path.contains(&v) {
                path.push(v);
                extend(a, start, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..a.rows() {
        extend(a, s, &mut vec![s], &mut out);
    }
    out
}

pub fn enumerated_max_mean(a: &Matrix) -> Option<CycleMean> {
    elementary_circuits(a)
        .iter()
        .map(|c| CycleMean::new(circuit_weight(a, c).unwrap(), c.len() as u64))
        .fold(None, |best, m| match best {
            Some(b) if b >= m => Some(b),
            _ => Some(m),
        })
}

/// `max_k max_i (A^k)_ii / k` for `k = 1..n`.
pub fn trace_max_mean(a: &Matrix) -> Option<CycleMean> {
    let mut best: Option<CycleMean> = None;
    let mut p = a.clone();
    for k in 1..=a.rows() {
        for i in 0..a.rows() {
            if let Some(w) = p.get(i, i).finite() {
                let m = CycleMean::new(w, k as u64);
                if best.is_none_or(|b| m > b) {
                    best = Some(m);
                }
            }
        }
        p = p.mul(a).unwrap();
    }
    best
}

/// Arcs `(source, target)` lying on some elementary circuit of mean `rho`.
pub fn enumerated_critical_arcs(a: &Matrix, rho: CycleMean) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for c in elementary_circuits(a) {
        let m = CycleMean::new(circuit_weight(a, &c).unwrap(), c.len() as u64);
        if m == rho {
            for k in 0..c.len() {
                arcs.push((c[k], c[(k + 1) % c.len()]));
            }
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    arcs
}

/// `E ⊕ A ⊕ ... ⊕ A^terms`.
pub fn power_sum(a: &Matrix, terms: usize) -> Matrix {
    let mut acc = Matrix::identity(a.rows(), a.semiring());
    let mut p = acc.clone();
    for _ in 0..terms {
        p = p.mul(a).unwrap();
        acc = acc.add(&p).unwrap();
    }
    acc
}

fn random_place(d: &mut impl Draw, k: usize, from: &str, to: &str, min_tokens: i64) -> PlaceSpec {
    let tokens = d.draw(min_tokens, 2) as u32;
    let tmin = d.draw(0, 6) as f64;
    let tmax = if d.draw(0, 4) == 0 {
        f64::INFINITY
    } else {
        tmin + d.draw(0, 6) as f64
    };
    PlaceSpec {
        name: format!("p{k}"),
        from: from.to_string(),
        to: to.to_string(),
        tokens,
        tmin,
        tmax,
    }
}

/// Small random model: a spine of places keeps it connected, extra places
/// are drawn freely. Returns `None` when the draw does not validate.
pub fn random_model(d: &mut impl Draw) -> Option<PtegModel> {
    let n = d.draw(2, 4) as usize;
    let t: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let mut places = Vec::new();
    for i in 1..n {
        places.push(random_place(d, places.len(), &t[i - 1], &t[i], 0));
    }
    // closing place carries a token so the spine itself is live
    places.push(random_place(d, places.len(), &t[n - 1], &t[0], 1));
    for _ in 0..d.draw(0, 3) {
        let from = d.draw(0, n as i64 - 1) as usize;
        let to = d.draw(0, n as i64 - 1) as usize;
        places.push(random_place(d, places.len(), &t[from], &t[to], 0));
    }
    let m = PtegModel {
        name: "random".to_string(),
        transitions: t,
        places,
    };
    validate(&m).is_empty().then_some(m)
}

fn finite(x: &[Scalar]) -> Vec<f64> {
    x.iter().map(|v| v.to_f64()).collect()
}

fn random_vec(d: &mut impl Draw, n: usize, hi: i64) -> Vec<Scalar> {
    (0..n)
        .map(|_| Scalar::Finite(d.draw(0, hi) as f64))
        .collect()
}

/// A trajectory of `steps + 1` finite states: a random walk, a closed-up
/// lower-bound walk `x(k) = B*⊗(𝒜⊗x(k-1) ⊕ (x(k-1) + r))`, or the fastest
/// trajectory; one entry is sometimes nudged afterwards.
pub fn random_trajectory(d: &mut impl Draw, cm: &CombinedModel, steps: usize) -> Vec<Vec<f64>> {
    let n = cm.dim();
    let x0 = cm.b_star.mul_vec(&random_vec(d, n, 10)).unwrap();
    let mut states = match d.draw(0, 2) {
        0 => (0..=steps)
            .map(|k| finite(&random_vec(d, n, 10 * (k as i64 + 1))))
            .collect(),
        1 => lower_walk(d, cm, x0, steps),
        _ => match run_trajectory(cm, &finite(&x0), Mode::Fastest, steps) {
            Ok(t) => t.states,
            Err(_) => lower_walk(d, cm, x0, steps),
        },
    };
    if d.draw(0, 1) == 0 {
        let k = d.draw(0, steps as i64) as usize;
        let i = d.draw(0, n as i64 - 1) as usize;
        states[k][i] += d.draw(-2, 2) as f64;
    }
    states
}

fn lower_walk(
    d: &mut impl Draw,
    cm: &CombinedModel,
    x0: Vec<Scalar>,
    steps: usize,
) -> Vec<Vec<f64>> {
    let s = Semiring::MaxPlus;
    let mut x = x0;
    let mut states = vec![finite(&x)];
    for _ in 0..steps {
        let ax = cm.cal_a.mul_vec(&x).unwrap();
        let r = random_vec(d, x.len(), 8);
        let base: Vec<Scalar> = ax
            .iter()
            .zip(&x)
            .zip(&r)
            .map(|((&a, &xi), &ri)| s.add(a, s.mul(xi, ri)))
            .collect();
        x = cm.b_star.mul_vec(&base).unwrap();
        states.push(finite(&x));
    }
    states
}
