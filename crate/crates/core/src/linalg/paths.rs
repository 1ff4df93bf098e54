//! The algebraic path problem: closures `A*` and least solutions of
//! `X = H ⊙ X ⊕ F`.
//!
//! Over `minplus` this is shortest paths, over `maxplus` longest paths, over
//! `maxmin` widest paths and over `boolean` reachability. Jacobi iteration is
//! Bellman's algorithm, Gauss–Seidel is Ford's, and the Gauss–Jordan
//! elimination is Floyd–Warshall.

use super::{Matrix, Vector};
use crate::error::{Error, Result};
use crate::semiring::{Scalar, SemiringId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMethod {
    /// Repeated squaring of `I ⊕ A`.
    Iterate,
    /// In-place elimination (Floyd–Warshall shape).
    GaussJordan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Jacobi,
    GaussSeidel,
    /// Computes `H*` by elimination, then `H* ⊙ F`.
    GaussJordan,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::Jacobi => "jacobi",
            SolveMethod::GaussSeidel => "gauss_seidel",
            SolveMethod::GaussJordan => "gauss_jordan",
        }
    }
}

impl std::str::FromStr for SolveMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "jacobi" => Ok(SolveMethod::Jacobi),
            "gauss_seidel" => Ok(SolveMethod::GaussSeidel),
            "gauss_jordan" => Ok(SolveMethod::GaussJordan),
            _ => Err(Error::Parse(format!("unknown solve method {s:?}"))),
        }
    }
}

impl std::str::FromStr for ClosureMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "iterate" => Ok(ClosureMethod::Iterate),
            "gauss_jordan" => Ok(ClosureMethod::GaussJordan),
            _ => Err(Error::Parse(format!("unknown closure method {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: Matrix,
    pub iterations: usize,
    pub method: SolveMethod,
    pub stable: bool,
}

/// A directed graph with scalar edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    node_count: usize,
    edges: Vec<(usize, usize, Scalar)>,
}

impl WeightedGraph {
    pub fn new(node_count: usize, edges: Vec<(usize, usize, Scalar)>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::ShapeMismatch("graph without nodes".into()));
        }
        for &(u, v, _) in &edges {
            for index in [u, v] {
                if index >= node_count {
                    return Err(Error::IndexOutOfRange {
                        index,
                        size: node_count,
                    });
                }
            }
        }
        Ok(WeightedGraph { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize, Scalar)] {
        &self.edges
    }
}

/// Adjacency matrix: `A[u][v]` is the ⊕ of all weights `u → v`.
pub fn graph_to_matrix(g: &WeightedGraph, s: SemiringId) -> Result<Matrix> {
    let n = g.node_count;
    let mut entries = vec![Scalar::Bottom; n * n];
    for &(u, v, w) in &g.edges {
        let w = s.validate(w)?;
        let e = &mut entries[u * n + v];
        *e = s.add(*e, w);
    }
    Matrix::new(s, n, n, entries)
}

/// The Kleene star `A* = I ⊕ A ⊕ A² ⊕ …`, or `NonStable` when the powers
/// never settle.
pub fn closure_star(a: &Matrix, method: ClosureMethod) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("closure of a non-square matrix".into()));
    }
    match method {
        ClosureMethod::Iterate => closure_by_squaring(a),
        ClosureMethod::GaussJordan => closure_by_elimination(a),
    }
}

fn closure_by_squaring(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    let base = Matrix::identity(a.semiring(), n).add(a)?;
    // (I ⊕ A)^p = I ⊕ A ⊕ … ⊕ A^p
    let mut acc = base.clone();
    let mut power = 1;
    while power + 1 < n {
        acc = acc.mul(&acc)?;
        power *= 2;
    }
    if acc.mul(&base)? != acc {
        return Err(Error::NonStable);
    }
    Ok(acc)
}

fn closure_by_elimination(a: &Matrix) -> Result<Matrix> {
    let s = a.semiring();
    let n = a.rows();
    let one = s.one();
    let mut d = a.entries().to_vec();
    for k in 0..n {
        // scalar star of the pivot: 𝟙 when it is ≼ 𝟙, divergent otherwise
        if s.add(d[k * n + k], one) != one {
            return Err(Error::NonStable);
        }
        for i in 0..n {
            let dik = d[i * n + k];
            if dik.is_bottom() {
                continue;
            }
            for j in 0..n {
                let via = s.mul(dik, d[k * n + j]);
                d[i * n + j] = s.add(d[i * n + j], via);
            }
        }
    }
    for i in 0..n {
        d[i * n + i] = s.add(d[i * n + i], one);
    }
    Matrix::new(s, n, n, d)
}

/// Least solution of `X = H ⊙ X ⊕ F`.
///
/// Both iterations start from `X₀ = F` and stop at the first sweep that
/// changes nothing; `NonStable` is reported once `n` sweeps have not reached
/// a fixed point.
pub fn solve_bellman(h: &Matrix, f: &Matrix, method: SolveMethod) -> Result<SolveReport> {
    if !h.is_square() || h.rows() != f.rows() {
        return Err(Error::ShapeMismatch(format!(
            "H is {}x{}, F is {}x{}",
            h.rows(),
            h.cols(),
            f.rows(),
            f.cols()
        )));
    }
    if h.semiring() != f.semiring() {
        return Err(Error::SemiringMismatch(h.semiring(), f.semiring()));
    }
    let n = h.rows();
    match method {
        SolveMethod::Jacobi => {
            let mut x = f.clone();
            for iteration in 1..=n {
                let next = h.mul(&x)?.add(f)?;
                if next == x {
                    return Ok(report(x, iteration, method));
                }
                x = next;
            }
            Err(Error::NonStable)
        }
        SolveMethod::GaussSeidel => {
            let s = h.semiring();
            let m = f.cols();
            let mut x = f.entries().to_vec();
            for iteration in 1..=n + 1 {
                let mut changed = false;
                for i in 0..n {
                    for j in 0..m {
                        let mut acc = f.get(i, j);
                        for k in 0..n {
                            acc = s.add(acc, s.mul(h.get(i, k), x[k * m + j]));
                        }
                        if acc != x[i * m + j] {
                            x[i * m + j] = acc;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    let x = Matrix::new(s, n, m, x)?;
                    return Ok(report(x, iteration, method));
                }
            }
            Err(Error::NonStable)
        }
        SolveMethod::GaussJordan => {
            let star = closure_star(h, ClosureMethod::GaussJordan)?;
            Ok(report(star.mul(f)?, n, method))
        }
    }
}

fn report(solution: Matrix, iterations: usize, method: SolveMethod) -> SolveReport {
    SolveReport {
        solution,
        iterations,
        method,
        stable: true,
    }
}

/// Path weights from `source` to every node in semiring `s`: the least
/// solution of `x = Aᵀ ⊙ x ⊕ e_source`, i.e. row `source` of `A*`.
pub fn path_weights(
    g: &WeightedGraph,
    s: SemiringId,
    source: usize,
    method: SolveMethod,
) -> Result<Vector> {
    let n = g.node_count();
    if source >= n {
        return Err(Error::IndexOutOfRange {
            index: source,
            size: n,
        });
    }
    let h = graph_to_matrix(g, s)?.transpose();
    let e = Matrix::from_fn(s, n, 1, |i, _| {
        if i == source {
            s.one()
        } else {
            Scalar::Bottom
        }
    });
    let report = solve_bellman(&h, &e, method)?;
    Ok(report.solution.column(0))
}

/// Shortest-path distances from `source` (`minplus`); unreachable nodes are
/// `Bottom` (+∞).
pub fn shortest_paths(g: &WeightedGraph, source: usize) -> Result<Vector> {
    path_weights(g, SemiringId::MinPlus, source, SolveMethod::Jacobi)
}
