//! Dense matrices and vectors over a built-in semiring.

mod monomial;
mod paths;

pub use monomial::{invert_matrix, MonomialMatrix};
pub use paths::{
    closure_star, graph_to_matrix, path_weights, shortest_paths, solve_bellman, ClosureMethod,
    SolveMethod, SolveReport, WeightedGraph,
};

use crate::error::{Error, Result};
use crate::semiring::{Scalar, SemiringId};

/// A dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    semiring: SemiringId,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(semiring: SemiringId, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for &e in &entries {
            semiring.validate(e)?;
        }
        Ok(Matrix {
            semiring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(semiring: SemiringId, rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Matrix::new(semiring, rows.len(), cols, rows.concat())
    }

    /// Convenience for finite real data; `None` is `Bottom`.
    pub fn from_reals(semiring: SemiringId, rows: &[Vec<Option<f64>>]) -> Result<Self> {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v.map_or(Scalar::Bottom, Scalar::Finite)).collect())
            .collect();
        Matrix::from_rows(semiring, &rows)
    }

    pub(crate) fn from_fn(
        semiring: SemiringId,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            semiring,
            rows,
            cols,
            entries,
        }
    }

    /// The all-𝟘 matrix.
    pub fn zeros(semiring: SemiringId, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(semiring, rows, cols, |_, _| Scalar::Bottom)
    }

    /// 𝟙 on the diagonal, 𝟘 elsewhere.
    pub fn identity(semiring: SemiringId, n: usize) -> Self {
        Matrix::from_fn(semiring, n, n, |i, j| {
            if i == j {
                semiring.one()
            } else {
                Scalar::Bottom
            }
        })
    }

    pub fn semiring(&self) -> SemiringId {
        self.semiring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector {
            semiring: self.semiring,
            entries: (0..self.rows).map(|i| self.get(i, j)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.semiring, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Reinterprets the entries in another semiring.
    pub fn with_semiring(&self, semiring: SemiringId) -> Result<Matrix> {
        Matrix::new(semiring, self.rows, self.cols, self.entries.clone())
    }

    fn same_semiring(&self, other: &Matrix) -> Result<()> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch(self.semiring, other.semiring));
        }
        Ok(())
    }

    /// Entrywise ⊕.
    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_semiring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} ⊕ {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let s = self.semiring;
        Ok(Matrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| s.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    /// The product `C[i][j] = ⊕_k A[i][k] ⊙ B[k][j]`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_semiring(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} ⊙ {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let s = self.semiring;
        let mut out = Matrix::zeros(s, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_bottom() {
                    continue;
                }
                let row = other.row(k);
                let dst = &mut out.entries[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = s.add(*d, s.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// `k ⊙ A`.
    pub fn scale(&self, k: Scalar) -> Matrix {
        let s = self.semiring;
        Matrix {
            entries: self.entries.iter().map(|&a| s.mul(k, a)).collect(),
            ..self.clone()
        }
    }

    /// `A ⊙ x`.
    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        if self.semiring != x.semiring {
            return Err(Error::SemiringMismatch(self.semiring, x.semiring));
        }
        if self.cols != x.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} ⊙ vector of dim {}",
                self.rows,
                self.cols,
                x.dim()
            )));
        }
        let s = self.semiring;
        Ok(Vector {
            semiring: s,
            entries: (0..self.rows)
                .map(|i| {
                    s.sup_set(self.row(i).iter().zip(&x.entries).map(|(&a, &b)| s.mul(a, b)))
                })
                .collect(),
        })
    }

    /// Entrywise comparison up to the semiring tolerance.
    pub fn approx_eq(&self, other: &Matrix) -> bool {
        self.semiring == other.semiring
            && (self.rows, self.cols) == (other.rows, other.cols)
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(&a, &b)| self.semiring.approx_eq(a, b))
    }

    /// Entrywise standard order.
    pub fn leq(&self, other: &Matrix) -> bool {
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| self.semiring.leq(a, b))
    }

    /// True if every finite entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.value().is_none_or(|v| v.is_finite() && v.fract() == 0.0))
    }
}

/// A vector in the semimodule Kⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    semiring: SemiringId,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(semiring: SemiringId, entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ShapeMismatch("empty vector".into()));
        }
        for &e in &entries {
            semiring.validate(e)?;
        }
        Ok(Vector { semiring, entries })
    }

    pub fn from_reals(semiring: SemiringId, values: &[Option<f64>]) -> Result<Self> {
        Vector::new(
            semiring,
            values.iter().map(|v| v.map_or(Scalar::Bottom, Scalar::Finite)).collect(),
        )
    }

    pub(crate) fn from_vec_unchecked(semiring: SemiringId, entries: Vec<Scalar>) -> Self {
        Vector { semiring, entries }
    }

    pub fn zeros(semiring: SemiringId, dim: usize) -> Self {
        Vector {
            semiring,
            entries: vec![Scalar::Bottom; dim],
        }
    }

    /// Every coordinate 𝟙.
    pub fn ones(semiring: SemiringId, dim: usize) -> Self {
        Vector {
            semiring,
            entries: vec![semiring.one(); dim],
        }
    }

    /// The i-th unit vector.
    pub fn unit(semiring: SemiringId, dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(semiring, dim);
        v.entries[i] = semiring.one();
        v
    }

    pub fn semiring(&self) -> SemiringId {
        self.semiring
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_bottom())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.entries[i].is_bottom()).collect()
    }

    fn check(&self, other: &Vector) -> Result<()> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch(self.semiring, other.semiring));
        }
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch(format!(
                "vector dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check(other)?;
        let s = self.semiring;
        Ok(Vector {
            semiring: s,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| s.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, k: Scalar) -> Vector {
        let s = self.semiring;
        Vector {
            semiring: s,
            entries: self.entries.iter().map(|&a| s.mul(k, a)).collect(),
        }
    }

    /// Coordinatewise standard order `self ≼ other`.
    pub fn leq(&self, other: &Vector) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(&a, &b)| self.semiring.leq(a, b))
    }

    pub fn approx_eq(&self, other: &Vector) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(&a, &b)| self.semiring.approx_eq(a, b))
    }

    /// Every coordinate nonzero: then every vector is dominated by some
    /// scalar multiple of this one.
    pub fn is_archimedean(&self) -> bool {
        self.entries.iter().all(|e| !e.is_bottom())
    }

    /// The residuation `x*(y)`: least `k` with `k ⊙ self ≽ y`.
    ///
    /// Fails with `NotDominated` when `y` is nonzero somewhere `self` is zero.
    pub fn residual(&self, y: &Vector) -> Result<Scalar> {
        self.check(y)?;
        let s = self.semiring;
        if !s.is_semifield() {
            return Err(Error::NotASemifield(s));
        }
        let mut k = Scalar::Bottom;
        for (&xi, &yi) in self.entries.iter().zip(&y.entries) {
            match (xi, yi) {
                (_, Scalar::Bottom) => {}
                (Scalar::Bottom, _) => return Err(Error::NotDominated),
                (xi, yi) => k = s.add(k, s.mul(yi, s.inv(xi)?)),
            }
        }
        // `y ⊙ x⁻¹ ⊙ x` can round just below `y`; step to the next float
        for (&xi, &yi) in self.entries.iter().zip(&y.entries) {
            while !s.leq(yi, s.mul(k, xi)) {
                k = match (s, k) {
                    (SemiringId::MinPlus, Scalar::Finite(v)) => Scalar::Finite(v.next_down()),
                    (_, Scalar::Finite(v)) => Scalar::Finite(v.next_up()),
                    (_, Scalar::Bottom) => break,
                };
            }
        }
        Ok(k)
    }

    /// The dual residuation: greatest `k` with `k ⊙ self ≼ y`, `Bottom` when
    /// only the zero multiple fits. `None` means every `k` fits (`self` is the
    /// zero vector).
    pub fn lower_residual(&self, y: &Vector) -> Result<Option<Scalar>> {
        self.check(y)?;
        let s = self.semiring;
        if !s.is_semifield() {
            return Err(Error::NotASemifield(s));
        }
        let mut k: Option<Scalar> = None;
        for (&xi, &yi) in self.entries.iter().zip(&y.entries) {
            if xi.is_bottom() {
                continue;
            }
            let c = match yi {
                Scalar::Bottom => Scalar::Bottom,
                yi => s.mul(yi, s.inv(xi)?),
            };
            k = Some(match k {
                None => c,
                Some(k) => s.meet(k, c),
            });
        }
        Ok(k)
    }
}
