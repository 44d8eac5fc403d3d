//! Cycle means, eigenvalues, eigenvectors, critical graphs and cyclicity.
//!
//! All routines work on max-plus matrices; min-plus inputs are handled
//! through [`Matrix::negate_dual`], which flips signs entrywise without
//! transposing so every circuit keeps its nodes and length.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::tropical::{format_number, Matrix, Scalar, Semiring, TropicalError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected a {expected} matrix, got {found}")]
    WrongSemiring { expected: Semiring, found: Semiring },
    #[error("entry ({row},{col}) is the top element, which has no arc weight")]
    TopEntry { row: usize, col: usize },
    #[error("precedence graph has no circuit")]
    NoCircuit,
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

/// Arc `source -> target` induced by the entry `A[target][source]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrecedenceGraph {
    pub node_count: usize,
    pub arcs: Vec<Arc>,
}

impl PrecedenceGraph {
    /// Strongly connected components, each sorted, ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        sccs(
            self.node_count,
            self.arcs.iter().map(|a| (a.source, a.target)),
        )
    }
}

pub fn build_graph(a: &Matrix) -> Result<PrecedenceGraph, SpectralError> {
    if !a.is_square() {
        return Err(SpectralError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let s = a.semiring();
    let mut arcs = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            match a.get(i, j) {
                Scalar::Finite(w) => arcs.push(Arc {
                    source: j,
                    target: i,
                    weight: w,
                }),
                v if s.is_zero(v) => {}
                _ => return Err(SpectralError::TopEntry { row: i, col: j }),
            }
        }
    }
    Ok(PrecedenceGraph {
        node_count: a.rows(),
        arcs,
    })
}

fn sccs(n: usize, arcs: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (u, v) in arcs {
        g.add_edge(nodes[u], nodes[v], ());
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|ix| ix.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort_by_key(|c| c[0]);
    comps
}

pub fn is_irreducible(a: &Matrix) -> Result<bool, SpectralError> {
    let g = build_graph(a)?;
    Ok(g.components().len() <= 1)
}

/// A circuit mean kept as `weight / length`, so that comparisons stay exact
/// on integer data.
#[derive(Debug, Clone, Copy)]
pub struct CycleMean {
    pub weight: f64,
    pub length: u64,
}

impl CycleMean {
    pub fn new(weight: f64, length: u64) -> CycleMean {
        assert!(length > 0, "circuit length must be positive");
        let mut m = CycleMean { weight, length };
        if weight.fract() == 0.0 && weight.abs() < 9.0e15 {
            let g = gcd(weight.abs() as u64, length);
            if g > 1 {
                m.weight = weight / g as f64;
                m.length = length / g;
            }
        }
        m
    }

    pub fn integer(v: f64) -> CycleMean {
        CycleMean::new(v, 1)
    }

    pub fn value(&self) -> f64 {
        self.weight / self.length as f64
    }

    pub fn compare(&self, other: &CycleMean) -> Ordering {
        let l = self.weight * other.length as f64;
        let r = other.weight * self.length as f64;
        l.partial_cmp(&r).expect("cycle means are finite")
    }

    pub fn as_scalar(&self) -> Scalar {
        Scalar::Finite(self.value())
    }
}

impl Neg for CycleMean {
    type Output = CycleMean;

    fn neg(self) -> CycleMean {
        CycleMean::new(-self.weight, self.length)
    }
}

impl PartialEq for CycleMean {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl PartialOrd for CycleMean {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl fmt::Display for CycleMean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_number(self.value()))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn require_maxplus(a: &Matrix) -> Result<(), SpectralError> {
    if a.semiring() != Semiring::MaxPlus {
        return Err(SpectralError::WrongSemiring {
            expected: Semiring::MaxPlus,
            found: a.semiring(),
        });
    }
    Ok(())
}

fn require_minplus(a: &Matrix) -> Result<(), SpectralError> {
    if a.semiring() != Semiring::MinPlus {
        return Err(SpectralError::WrongSemiring {
            expected: Semiring::MinPlus,
            found: a.semiring(),
        });
    }
    Ok(())
}

/// Maps a matrix of either tag onto the max-plus side.
fn as_maxplus(a: &Matrix) -> Matrix {
    match a.semiring() {
        Semiring::MaxPlus => a.clone(),
        Semiring::MinPlus => a.negate_dual(),
    }
}

/// Karp's algorithm on one strongly connected component.
fn karp(g: &PrecedenceGraph, comp: &[usize]) -> Option<CycleMean> {
    let n = comp.len();
    let mut local = vec![usize::MAX; g.node_count];
    for (k, &v) in comp.iter().enumerate() {
        local[v] = k;
    }
    let inner: Vec<(usize, usize, f64)> = g
        .arcs
        .iter()
        .filter(|a| local[a.source] != usize::MAX && local[a.target] != usize::MAX)
        .map(|a| (local[a.source], local[a.target], a.weight))
        .collect();
    if inner.is_empty() {
        return None;
    }
    // d[k][v]: heaviest walk of exactly k arcs from local node 0 to v
    let mut d = vec![vec![None::<f64>; n]; n + 1];
    d[0][0] = Some(0.0);
    for k in 1..=n {
        for &(u, v, w) in &inner {
            if let Some(du) = d[k - 1][u] {
                let cand = du + w;
                if d[k][v].is_none_or(|x| cand > x) {
                    d[k][v] = Some(cand);
                }
            }
        }
    }
    let mut best: Option<CycleMean> = None;
    for v in 0..n {
        let Some(dn) = d[n][v] else { continue };
        let mut worst: Option<CycleMean> = None;
        for (k, row) in d.iter().enumerate().take(n) {
            if let Some(dk) = row[v] {
                let m = CycleMean::new(dn - dk, (n - k) as u64);
                if worst.is_none_or(|w| m < w) {
                    worst = Some(m);
                }
            }
        }
        if let Some(m) = worst {
            if best.is_none_or(|b| m > b) {
                best = Some(m);
            }
        }
    }
    best
}

/// Maximum circuit mean ρ(A), taken over every strongly connected component.
pub fn max_cycle_mean(a: &Matrix) -> Result<CycleMean, SpectralError> {
    require_maxplus(a)?;
    let g = build_graph(a)?;
    g.components()
        .iter()
        .filter_map(|c| karp(&g, c))
        .fold(None, |acc: Option<CycleMean>, m| match acc {
            Some(b) if b >= m => Some(b),
            _ => Some(m),
        })
        .ok_or(SpectralError::NoCircuit)
}

/// Minimum circuit mean ρ'(B) of a min-plus matrix.
pub fn min_cycle_mean(b: &Matrix) -> Result<CycleMean, SpectralError> {
    require_minplus(b)?;
    Ok(-max_cycle_mean(&b.negate_dual())?)
}

/// `length·A − weight`, whose circuits have maximum weight exactly 0.
fn scaled(a: &Matrix, rho: CycleMean) -> Matrix {
    let l = rho.length as f64;
    a.map(|v| match v {
        Scalar::Finite(x) => Scalar::Finite(l * x - rho.weight),
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalGraph {
    pub nodes: Vec<usize>,
    pub arcs: Vec<Arc>,
    /// Strongly connected components of the critical arcs.
    pub components: Vec<Vec<usize>>,
    pub component_cyclicity: Vec<u64>,
}

impl CriticalGraph {
    pub fn cyclicity(&self) -> u64 {
        self.component_cyclicity
            .iter()
            .fold(1, |acc, &c| lcm(acc, c))
    }
}

fn critical_maxplus(a: &Matrix) -> Result<(CycleMean, CriticalGraph), SpectralError> {
    let rho = max_cycle_mean(a)?;
    let s = scaled(a, rho);
    let plus = s.kleene_plus()?;
    let n = a.rows();
    let zero = Scalar::ZERO;
    let critical: Vec<bool> = (0..n).map(|i| plus.get(i, i) == zero).collect();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !(critical[i] && critical[j]) {
                continue;
            }
            if let (Scalar::Finite(sij), Scalar::Finite(back)) = (s.get(i, j), plus.get(j, i)) {
                if sij + back == 0.0 {
                    arcs.push(Arc {
                        source: j,
                        target: i,
                        weight: a.get(i, j).to_f64(),
                    });
                }
            }
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&i| critical[i]).collect();
    let components: Vec<Vec<usize>> = sccs(n, arcs.iter().map(|a| (a.source, a.target)))
        .into_iter()
        .filter(|c| critical[c[0]])
        .collect();
    let component_cyclicity = components
        .iter()
        .map(|c| component_period(c, &arcs))
        .collect();
    Ok((
        rho,
        CriticalGraph {
            nodes,
            arcs,
            components,
            component_cyclicity,
        },
    ))
}

/// gcd of circuit lengths inside one strongly connected component, from BFS
/// levels: every arc `u -> v` contributes `level(u) + 1 - level(v)`.
fn component_period(comp: &[usize], arcs: &[Arc]) -> u64 {
    let inside = |v: usize| comp.binary_search(&v).is_ok();
    let inner: Vec<&Arc> = arcs
        .iter()
        .filter(|a| inside(a.source) && inside(a.target))
        .collect();
    let mut level = std::collections::HashMap::new();
    level.insert(comp[0], 0i64);
    let mut queue = std::collections::VecDeque::from([comp[0]]);
    while let Some(u) = queue.pop_front() {
        let lu = level[&u];
        for a in inner.iter().filter(|a| a.source == u) {
            if let std::collections::hash_map::Entry::Vacant(e) = level.entry(a.target) {
                e.insert(lu + 1);
                queue.push_back(a.target);
            }
        }
    }
    inner.iter().fold(0, |g, a| {
        gcd(g, (level[&a.source] + 1 - level[&a.target]).unsigned_abs())
    })
}

/// Critical graph of a max-plus matrix, or of a min-plus one through its
/// negation dual (circuits of minimal mean). Arc weights are those of `a`.
pub fn critical_graph(a: &Matrix) -> Result<CriticalGraph, SpectralError> {
    let (_, mut cg) = critical_maxplus(&as_maxplus(a))?;
    for arc in &mut cg.arcs {
        arc.weight = a.get(arc.target, arc.source).to_f64();
    }
    Ok(cg)
}

/// Cyclicity: lcm over critical components of the gcd of their circuit
/// lengths.
pub fn cyclicity(a: &Matrix) -> Result<u64, SpectralError> {
    Ok(critical_maxplus(&as_maxplus(a))?.1.cyclicity())
}

/// True when `u` and `v` differ by a finite constant (same sentinel pattern).
pub fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    let mut shift = None;
    for (a, b) in u.iter().zip(v) {
        match (a, b) {
            (Scalar::Finite(x), Scalar::Finite(y)) => {
                let d = x - y;
                match shift {
                    None => shift = Some(d),
                    Some(s) if s != d => return false,
                    _ => {}
                }
            }
            (x, y) if x == y => {}
            _ => return false,
        }
    }
    true
}

/// Columns of `(ρ⁻¹⊗A)⁺` with a zero diagonal entry, one per class of
/// proportional columns, in ascending column order.
///
/// Does not check irreducibility; columns may contain ε when `a` is
/// reducible.
pub fn eigen_columns(a: &Matrix) -> Result<(CycleMean, Vec<Vec<Scalar>>), SpectralError> {
    require_maxplus(a)?;
    let rho = max_cycle_mean(a)?;
    let plus = scaled(a, rho).kleene_plus()?;
    let l = rho.length as f64;
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..a.rows() {
        if plus.get(i, i) != Scalar::ZERO {
            continue;
        }
        let col: Vec<Scalar> = plus
            .col(i)
            .into_iter()
            .map(|v| match v {
                Scalar::Finite(x) => Scalar::Finite(x / l),
                other => other,
            })
            .collect();
        if !basis.iter().any(|b| proportional(b, &col)) {
            basis.push(col);
        }
    }
    Ok((rho, basis))
}

/// Eigenvector basis of an irreducible max-plus matrix.
pub fn eigenvectors(a: &Matrix) -> Result<Vec<Vec<f64>>, SpectralError> {
    require_maxplus(a)?;
    if !is_irreducible(a)? {
        return Err(SpectralError::NotIrreducible);
    }
    let (_, cols) = eigen_columns(a)?;
    Ok(cols
        .into_iter()
        .map(|c| c.into_iter().map(Scalar::to_f64).collect())
        .collect())
}

/// Eigenvector basis of an irreducible min-plus matrix: `B ⊗' v = λ ⊗' v`.
pub fn min_eigenvectors(b: &Matrix) -> Result<Vec<Vec<f64>>, SpectralError> {
    require_minplus(b)?;
    Ok(eigenvectors(&b.negate_dual())?
        .into_iter()
        .map(|v| v.into_iter().map(|x| -x + 0.0).collect())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingIndex {
    Found(usize),
    NotFound { cap: usize },
}

pub fn default_cap(dim: usize) -> usize {
    10 * dim * dim
}

/// Smallest `N <= cap` with `A^{N+c} = ρ^c ⊗ A^N`, `c` the cyclicity.
///
/// Compared on the scaled matrix `length·A − weight`, where the identity
/// reads `S^{N+c} = S^N`. Min-plus inputs are handled via their dual.
pub fn coupling_index(a: &Matrix, cap: usize) -> Result<CouplingIndex, SpectralError> {
    let m = as_maxplus(a);
    let (rho, cg) = critical_maxplus(&m)?;
    let c = cg.cyclicity() as usize;
    let s = scaled(&m, rho);
    let mut low = Matrix::identity(m.rows(), Semiring::MaxPlus);
    let mut high = s.power(c)?;
    for n in 0..=cap {
        if low == high {
            return Ok(CouplingIndex::Found(n));
        }
        low = low.mul(&s)?;
        high = high.mul(&s)?;
    }
    Ok(CouplingIndex::NotFound { cap })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub semiring: Semiring,
    pub eigenvalue: CycleMean,
    pub eigenvector_basis: Vec<Vec<f64>>,
    pub cyclicity: u64,
    pub critical: CriticalGraph,
    pub coupling_index: CouplingIndex,
    pub irreducible: bool,
}

/// Full spectral summary. For min-plus matrices the eigenvalue is the
/// minimal circuit mean. Reducible matrices get an empty eigenvector basis.
pub fn spectral_report(a: &Matrix, cap: usize) -> Result<SpectralReport, SpectralError> {
    let irreducible = is_irreducible(a)?;
    let (eigenvalue, eigenvector_basis) = match a.semiring() {
        Semiring::MaxPlus => {
            let rho = max_cycle_mean(a)?;
            let basis = if irreducible {
                eigenvectors(a)?
            } else {
                Vec::new()
            };
            (rho, basis)
        }
        Semiring::MinPlus => {
            let rho = min_cycle_mean(a)?;
            let basis = if irreducible {
                min_eigenvectors(a)?
            } else {
                Vec::new()
            };
            (rho, basis)
        }
    };
    let critical = critical_graph(a)?;
    Ok(SpectralReport {
        semiring: a.semiring(),
        eigenvalue,
        eigenvector_basis,
        cyclicity: critical.cyclicity(),
        critical,
        coupling_index: coupling_index(a, cap)?,
        irreducible,
    })
}
