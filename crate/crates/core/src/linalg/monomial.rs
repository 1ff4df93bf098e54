use super::{Matrix, Vector};
use crate::error::{Error, Result};
use crate::semiring::{Scalar, SemiringId};

/// A matrix with exactly one nonzero entry per row and column, stored as the
/// entry `weights[i]` at position `(i, perm[i])`.
///
/// Over an idempotent semifield these are exactly the invertible matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialMatrix {
    semiring: SemiringId,
    perm: Vec<usize>,
    weights: Vec<Scalar>,
}

impl MonomialMatrix {
    pub fn new(semiring: SemiringId, perm: Vec<usize>, weights: Vec<Scalar>) -> Result<Self> {
        let n = perm.len();
        if n == 0 || weights.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "permutation of length {n} with {} weights",
                weights.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
        }
        for &w in &weights {
            if semiring.validate(w)?.is_bottom() {
                return Err(Error::NotInvertible);
            }
        }
        Ok(MonomialMatrix {
            semiring,
            perm,
            weights,
        })
    }

    pub fn identity(semiring: SemiringId, n: usize) -> Self {
        MonomialMatrix {
            semiring,
            perm: (0..n).collect(),
            weights: vec![semiring.one(); n],
        }
    }

    /// Diagonal matrix with the given (nonzero) diagonal.
    pub fn diagonal(semiring: SemiringId, weights: Vec<Scalar>) -> Result<Self> {
        MonomialMatrix::new(semiring, (0..weights.len()).collect(), weights)
    }

    /// Recognizes a dense monomial matrix; anything else is `NotInvertible`.
    pub fn from_matrix(a: &Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotInvertible);
        }
        let n = a.rows();
        let mut perm = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut support = (0..n).filter(|&j| !a.get(i, j).is_bottom());
            match (support.next(), support.next()) {
                (Some(j), None) => {
                    perm.push(j);
                    weights.push(a.get(i, j));
                }
                _ => return Err(Error::NotInvertible),
            }
        }
        MonomialMatrix::new(a.semiring(), perm, weights).map_err(|_| Error::NotInvertible)
    }

    pub fn semiring(&self) -> SemiringId {
        self.semiring
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(self.semiring, n, n, |i, j| {
            if self.perm[i] == j {
                self.weights[i]
            } else {
                Scalar::Bottom
            }
        })
    }

    /// `self ⊙ other`.
    pub fn mul(&self, other: &MonomialMatrix) -> Result<MonomialMatrix> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch(self.semiring, other.semiring));
        }
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch("monomial dims differ".into()));
        }
        let s = self.semiring;
        let (perm, weights) = (0..self.dim())
            .map(|i| {
                let k = self.perm[i];
                (other.perm[k], s.mul(self.weights[i], other.weights[k]))
            })
            .unzip();
        Ok(MonomialMatrix {
            semiring: s,
            perm,
            weights,
        })
    }

    /// The inverse: transposed pattern with inverted weights.
    pub fn inverse(&self) -> Result<MonomialMatrix> {
        let s = self.semiring;
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut weights = vec![Scalar::Bottom; n];
        for i in 0..n {
            let j = self.perm[i];
            perm[j] = i;
            weights[j] = s.inv(self.weights[i])?;
        }
        Ok(MonomialMatrix {
            semiring: s,
            perm,
            weights,
        })
    }

    /// `self ⊙ x`.
    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.dim() {
            return Err(Error::ShapeMismatch("monomial applied to wrong dim".into()));
        }
        let s = self.semiring;
        let entries = (0..self.dim())
            .map(|i| s.mul(self.weights[i], x.get(self.perm[i])))
            .collect();
        Ok(Vector::from_vec_unchecked(s, entries))
    }

    /// `self^k`; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> MonomialMatrix {
        let mut acc = MonomialMatrix::identity(self.semiring, self.dim());
        for _ in 0..k {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    /// A scalar multiple of the identity, `c ⊙ I`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let first = self.weights[0];
        let is_scalar = self.perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.weights.iter().all(|&w| self.semiring.approx_eq(w, first));
        is_scalar.then_some(first)
    }

    /// Cycles of the permutation, each listed from its smallest index and
    /// following `i → perm[i]`; ordered by smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.perm[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Entrywise comparison up to the semiring tolerance.
    pub fn approx_eq(&self, other: &MonomialMatrix) -> bool {
        self.perm == other.perm
            && self
                .weights
                .iter()
                .zip(&other.weights)
                .all(|(&a, &b)| self.semiring.approx_eq(a, b))
    }
}

/// Inverse of a square matrix over a semifield; succeeds exactly for
/// monomial matrices.
pub fn invert_matrix(a: &Matrix) -> Result<Matrix> {
    if !a.semiring().is_semifield() {
        return Err(Error::NotASemifield(a.semiring()));
    }
    Ok(MonomialMatrix::from_matrix(a)?.inverse()?.to_matrix())
}
