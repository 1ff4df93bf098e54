//! Max-plus spectral theory.
//!
//! The eigenvalue of an irreducible matrix is its maximum cycle mean, computed
//! with Karp's dynamic program. Eigenvectors are critical columns of the
//! Kleene star of the normalized matrix `λ⁻¹ ⊙ A`. Invertible matrices are
//! monomial and decompose cycle by cycle; commuting families of them share an
//! eigenvector, found by restricting each matrix to an eigensemimodule of the
//! previous one.
//!
//! Eigenvectors are normalized so that their first non-`Bottom` coordinate is 𝟙.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::semiring::{Scalar, SemiringId};

pub use crate::linalg::MonomialMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub eigenvalue: Scalar,
    pub eigenvector: Vector,
}

impl EigenPair {
    /// `A ⊙ v = λ ⊙ v` up to the semiring tolerance.
    pub fn satisfies(&self, a: &Matrix) -> bool {
        a.mul_vec(&self.eigenvector)
            .is_ok_and(|av| av.approx_eq(&self.eigenvector.scale(self.eigenvalue)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointEigenReport {
    pub eigenvector: Vector,
    /// One eigenvalue per input matrix, in input order.
    pub eigenvalues: Vec<Scalar>,
}

fn require_maxplus(a: &Matrix) -> Result<()> {
    if a.semiring() != SemiringId::MaxPlus {
        return Err(Error::SemiringMismatch(a.semiring(), SemiringId::MaxPlus));
    }
    if !a.is_square() {
        return Err(Error::ShapeMismatch("spectral theory needs a square matrix".into()));
    }
    Ok(())
}

/// Maximum cycle mean as an unreduced fraction `(weight, length)`.
fn karp(a: &Matrix) -> Option<(f64, usize)> {
    let n = a.rows();
    // walks[k][v]: heaviest walk with exactly k edges ending at v
    let mut walks = vec![vec![Some(0.0f64); n]];
    for k in 1..=n {
        let prev = &walks[k - 1];
        let next: Vec<Option<f64>> = (0..n)
            .map(|v| {
                (0..n)
                    .filter_map(|u| Some(prev[u]? + a.get(u, v).value()?))
                    .reduce(f64::max)
            })
            .collect();
        walks.push(next);
    }
    let mut best: Option<(f64, usize)> = None;
    for v in 0..n {
        let Some(dn) = walks[n][v] else { continue };
        let worst = (0..n)
            .filter_map(|k| walks[k][v].map(|dk| (dn - dk, n - k)))
            .min_by(|x, y| (x.0 / x.1 as f64).total_cmp(&(y.0 / y.1 as f64)));
        if let Some(w) = worst {
            if best.is_none_or(|b| w.0 / w.1 as f64 > b.0 / b.1 as f64) {
                best = Some(w);
            }
        }
    }
    best
}

/// The maximum over directed cycles of weight divided by length.
pub fn max_cycle_mean(a: &Matrix) -> Result<Scalar> {
    require_maxplus(a)?;
    let (num, den) = karp(a).ok_or(Error::NoCycle)?;
    Ok(Scalar::Finite(num / den as f64))
}

fn reachable(a: &Matrix, start: usize, forward: bool) -> Vec<bool> {
    let n = a.rows();
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            let edge = if forward { a.get(u, v) } else { a.get(v, u) };
            if !edge.is_bottom() && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Whether the precedence graph of `a` is strongly connected.
pub fn is_irreducible(a: &Matrix) -> bool {
    a.is_square()
        && reachable(a, 0, true).into_iter().all(|x| x)
        && reachable(a, 0, false).into_iter().all(|x| x)
}

/// Critical structure of an irreducible matrix, computed on the scaled matrix
/// `den·A − num` so that integer inputs stay integral.
struct Critical {
    n: usize,
    den: f64,
    num: f64,
    tol: f64,
    /// `B⁺` of the scaled, normalized matrix `B`.
    plus: Vec<f64>,
}

impl Critical {
    fn new(a: &Matrix) -> Result<Self> {
        let n = a.rows();
        let (num, den) = karp(a).ok_or(Error::NoCycle)?;
        let den_f = den as f64;
        let mut plus: Vec<f64> = a
            .entries()
            .iter()
            .map(|e| e.value().map_or(f64::NEG_INFINITY, |v| den_f * v - num))
            .collect();
        let tol = if a.is_integral() {
            0.0
        } else {
            let scale = plus.iter().filter(|v| v.is_finite()).fold(0.0f64, |m, v| m.max(v.abs()));
            1e-9 * (1.0 + scale)
        };
        for k in 0..n {
            if plus[k * n + k] > tol {
                return Err(Error::InternalInvariant(format!(
                    "positive cycle {} after normalization",
                    plus[k * n + k]
                )));
            }
            for i in 0..n {
                let dik = plus[i * n + k];
                if dik == f64::NEG_INFINITY {
                    continue;
                }
                for j in 0..n {
                    let via = dik + plus[k * n + j];
                    if via > plus[i * n + j] {
                        plus[i * n + j] = via;
                    }
                }
            }
        }
        Ok(Critical {
            n,
            den: den_f,
            num,
            tol,
            plus,
        })
    }

    fn eigenvalue(&self) -> Scalar {
        Scalar::Finite(self.num / self.den)
    }

    fn is_critical(&self, c: usize) -> bool {
        self.plus[c * self.n + c] >= -self.tol
    }

    /// Column `c` of `B*`, normalized and unscaled.
    fn column(&self, c: usize) -> Vector {
        let n = self.n;
        let scaled: Vec<Option<f64>> = (0..n)
            .map(|i| {
                if i == c {
                    Some(0.0)
                } else {
                    let v = self.plus[i * n + c];
                    v.is_finite().then_some(v)
                }
            })
            .collect();
        let base = scaled.iter().flatten().next().copied().unwrap_or(0.0);
        let entries = scaled
            .into_iter()
            .map(|v| v.map_or(Scalar::Bottom, |v| Scalar::Finite((v - base) / self.den)))
            .collect();
        Vector::from_vec_unchecked(SemiringId::MaxPlus, entries)
    }

    /// Smallest critical index of each critical class.
    fn class_representatives(&self) -> Vec<usize> {
        let n = self.n;
        let mut reps: Vec<usize> = Vec::new();
        for c in (0..n).filter(|&c| self.is_critical(c)) {
            let joined = reps.iter().any(|&r| {
                let round = self.plus[c * n + r] + self.plus[r * n + c];
                round >= -self.tol
            });
            if !joined {
                reps.push(c);
            }
        }
        reps
    }
}

/// Eigenpair of an irreducible max-plus matrix: the maximum cycle mean and
/// the critical column with the smallest index.
pub fn eigenvector_irreducible(a: &Matrix) -> Result<EigenPair> {
    require_maxplus(a)?;
    if !is_irreducible(a) {
        return Err(Error::NotIrreducible);
    }
    let crit = Critical::new(a)?;
    let c = (0..crit.n)
        .find(|&c| crit.is_critical(c))
        .ok_or_else(|| Error::InternalInvariant("no critical node".into()))?;
    Ok(EigenPair {
        eigenvalue: crit.eigenvalue(),
        eigenvector: crit.column(c),
    })
}

/// One eigenpair per cycle of the permutation, in order of each cycle's
/// smallest index. The eigenvalue of a cycle is the ℓ-th root of its weight.
pub fn eigen_monomial(m: &MonomialMatrix) -> Result<Vec<EigenPair>> {
    let s = m.semiring();
    if !matches!(s, SemiringId::MaxPlus | SemiringId::MinPlus | SemiringId::IntMaxPlus) {
        return Err(Error::NotAlgebraicallyClosed {
            semiring: s,
            value: "cycle weight".into(),
            n: 0,
        });
    }
    let n = m.dim();
    let w = |i: usize| m.weights()[i].unwrap_finite();
    m.cycles()
        .into_iter()
        .map(|cycle| {
            let len = cycle.len();
            let total: f64 = cycle.iter().map(|&i| w(i)).sum();
            let eigenvalue = s.nth_root(Scalar::Finite(total), len as u32)?;
            // scaled coordinates V = len·v: V[perm(i)] = total + V[i] − len·w(i)
            let mut scaled = vec![None; n];
            let mut current = 0.0;
            for &i in &cycle {
                scaled[i] = Some(current);
                current = total + current - len as f64 * w(i);
            }
            let entries = scaled
                .into_iter()
                .map(|v| v.map_or(Scalar::Bottom, |v| Scalar::Finite(v / len as f64)))
                .collect();
            Ok(EigenPair {
                eigenvalue,
                eigenvector: Vector::from_vec_unchecked(s, entries),
            })
        })
        .collect()
}

/// Generators of the eigensemimodule `{v : A ⊙ v = λ ⊙ v}`.
///
/// Monomial matrices contribute one generator per cycle with mean `λ`;
/// irreducible matrices one critical column per critical class. Other
/// matrices are rejected with `NotIrreducible`.
pub fn eigenspace_generators(a: &Matrix, lambda: Scalar) -> Result<Vec<Vector>> {
    require_maxplus(a)?;
    if let Ok(m) = MonomialMatrix::from_matrix(a) {
        return monomial_eigenspace(&m, lambda);
    }
    if !is_irreducible(a) {
        return Err(Error::NotIrreducible);
    }
    let crit = Critical::new(a)?;
    if !a.semiring().approx_eq(crit.eigenvalue(), lambda) {
        return Ok(Vec::new());
    }
    Ok(crit
        .class_representatives()
        .into_iter()
        .map(|c| crit.column(c))
        .collect())
}

pub(crate) fn monomial_eigenspace(m: &MonomialMatrix, lambda: Scalar) -> Result<Vec<Vector>> {
    let s = m.semiring();
    Ok(eigen_monomial(m)?
        .into_iter()
        .filter(|p| s.approx_eq(p.eigenvalue, lambda))
        .map(|p| p.eigenvector)
        .collect())
}

/// `⊕_i coeffs[i] ⊙ gens[i]`.
pub(crate) fn combine(gens: &[Vector], coeffs: &Vector) -> Vector {
    let s = coeffs.semiring();
    let dim = gens[0].dim();
    gens.iter()
        .zip(coeffs.entries())
        .fold(Vector::zeros(s, dim), |acc, (g, &c)| {
            acc.add(&g.scale(c)).expect("generators share a shape")
        })
}

/// The matrix `C` with `M ⊙ G = G ⊙ C`, where `G` has the generators as
/// columns. Generators must have pairwise disjoint supports and span an
/// `M`-invariant semimodule; anything else is an internal invariant failure.
pub(crate) fn restrict_monomial(m: &MonomialMatrix, gens: &[Vector]) -> Result<MonomialMatrix> {
    let s = m.semiring();
    let r = gens.len();
    let mut entries = vec![Scalar::Bottom; r * r];
    for (j, g) in gens.iter().enumerate() {
        let image = m.apply(g)?;
        let mut coeffs = Vec::with_capacity(r);
        for gi in gens {
            coeffs.push(gi.lower_residual(&image)?.unwrap_or(Scalar::Bottom));
        }
        let coeffs = Vector::from_vec_unchecked(s, coeffs);
        if !combine(gens, &coeffs).approx_eq(&image) {
            return Err(Error::InternalInvariant(format!(
                "image of generator {j} leaves the eigensemimodule"
            )));
        }
        for (i, &c) in coeffs.entries().iter().enumerate() {
            entries[i * r + j] = c;
        }
    }
    let c = Matrix::new(s, r, r, entries)?;
    MonomialMatrix::from_matrix(&c)
        .map_err(|_| Error::InternalInvariant("restricted operator is not invertible".into()))
}

/// Eigenvalue of `m` at `v`, read off the first support coordinate, provided
/// `m ⊙ v = λ ⊙ v` holds everywhere.
pub(crate) fn eigenvalue_at(m: &MonomialMatrix, v: &Vector) -> Option<Scalar> {
    let s = m.semiring();
    let t = *v.support().first()?;
    let image = m.apply(v).ok()?;
    let lambda = s.mul(image.get(t), s.inv(v.get(t)).ok()?);
    image.approx_eq(&v.scale(lambda)).then_some(lambda)
}

pub(crate) fn normalize(v: &Vector) -> Vector {
    let s = v.semiring();
    match v.support().first() {
        Some(&t) => v.scale(s.inv(v.get(t)).expect("nonzero coordinate")),
        None => v.clone(),
    }
}

/// A common eigenvector of a commuting family of monomial matrices.
pub(crate) fn joint_monomial(family: &[MonomialMatrix], dim: usize, s: SemiringId) -> Result<Vector> {
    let Some((first, rest)) = family.split_first() else {
        return Ok(Vector::ones(s, dim));
    };
    if first.as_scalar().is_some() {
        return joint_monomial(rest, dim, s);
    }
    let mut eigenvalues: Vec<Scalar> = eigen_monomial(first)?.into_iter().map(|p| p.eigenvalue).collect();
    eigenvalues.sort_by(|a, b| a.unwrap_finite().total_cmp(&b.unwrap_finite()));
    eigenvalues.dedup_by(|a, b| s.approx_eq(*a, *b));
    for mu in eigenvalues {
        let gens = monomial_eigenspace(first, mu)?;
        let restricted = rest
            .iter()
            .map(|m| restrict_monomial(m, &gens))
            .collect::<Result<Vec<_>>>()?;
        match joint_monomial(&restricted, gens.len(), s) {
            Ok(coeffs) => return Ok(combine(&gens, &coeffs)),
            Err(Error::ExhaustedCandidates) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ExhaustedCandidates)
}

/// Joint eigenvector of pairwise commuting invertible matrices.
pub fn joint_eigenvector_commuting(ms: &[Matrix]) -> Result<JointEigenReport> {
    let first = ms
        .first()
        .ok_or_else(|| Error::ShapeMismatch("empty matrix family".into()))?;
    let s = first.semiring();
    if !matches!(s, SemiringId::MaxPlus | SemiringId::MinPlus | SemiringId::IntMaxPlus) {
        return Err(Error::NotASemifield(s));
    }
    let monomials = ms
        .iter()
        .map(|m| {
            if m.semiring() != s {
                return Err(Error::SemiringMismatch(m.semiring(), s));
            }
            if m.rows() != first.rows() {
                return Err(Error::ShapeMismatch("matrices of different sizes".into()));
            }
            MonomialMatrix::from_matrix(m)
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in monomials.iter().enumerate() {
        for b in &monomials[i + 1..] {
            if !a.mul(b)?.approx_eq(&b.mul(a)?) {
                return Err(Error::NotCommuting);
            }
        }
    }
    let v = normalize(&joint_monomial(&monomials, first.rows(), s)?);
    let eigenvalues = monomials
        .iter()
        .map(|m| {
            eigenvalue_at(m, &v)
                .ok_or_else(|| Error::InternalInvariant("joint eigen relation fails".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JointEigenReport {
        eigenvector: v,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use SemiringId::MaxPlus;

    fn mat(rows: &[&[Option<f64>]]) -> Matrix {
        Matrix::from_reals(MaxPlus, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn vecr(vals: &[Option<f64>]) -> Vector {
        Vector::from_reals(MaxPlus, vals).unwrap()
    }

    fn swap() -> Matrix {
        mat(&[&[None, Some(4.0)], &[Some(-2.0), None]])
    }

    #[test]
    fn cycle_mean_examples() {
        let a = mat(&[&[Some(0.0), Some(3.0)], &[Some(-1.0), Some(1.0)]]);
        assert_eq!(max_cycle_mean(&a), Ok(Scalar::Finite(1.0)));
        assert_eq!(max_cycle_mean(&mat(&[&[Some(-2.5)]])), Ok(Scalar::Finite(-2.5)));
        let upper = mat(&[&[None, Some(1.0), Some(2.0)], &[None, None, Some(3.0)], &[None, None, None]]);
        assert_eq!(max_cycle_mean(&upper), Err(Error::NoCycle));
        let third = mat(&[&[None, Some(1.0), None], &[None, None, Some(0.0)], &[Some(0.0), None, None]]);
        assert_eq!(max_cycle_mean(&third), Ok(Scalar::Finite(1.0 / 3.0)));
    }

    #[test]
    fn irreducible_eigenvector() {
        let a = mat(&[&[Some(0.0), Some(3.0)], &[Some(-1.0), Some(1.0)]]);
        let p = eigenvector_irreducible(&a).unwrap();
        assert_eq!(p.eigenvalue, Scalar::Finite(1.0));
        assert_eq!(p.eigenvector, vecr(&[Some(0.0), Some(-2.0)]));
        assert!(p.satisfies(&a));

        let p = eigenvector_irreducible(&mat(&[&[Some(7.0)]])).unwrap();
        assert_eq!(p.eigenvalue, Scalar::Finite(7.0));
        assert_eq!(p.eigenvector, vecr(&[Some(0.0)]));

        let upper = mat(&[&[Some(0.0), Some(1.0)], &[None, Some(0.0)]]);
        assert_eq!(eigenvector_irreducible(&upper), Err(Error::NotIrreducible));
        assert_eq!(
            eigenvector_irreducible(&Matrix::identity(MaxPlus, 2)),
            Err(Error::NotIrreducible)
        );
    }

    #[test]
    fn monomial_decomposition() {
        let m = MonomialMatrix::from_matrix(&swap()).unwrap();
        let pairs = eigen_monomial(&m).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].eigenvalue, Scalar::Finite(1.0));
        assert_eq!(pairs[0].eigenvector, vecr(&[Some(0.0), Some(-3.0)]));
        assert!(pairs[0].satisfies(&swap()));

        let d = MonomialMatrix::diagonal(MaxPlus, vec![2.0.into(), 5.0.into()]).unwrap();
        let pairs = eigen_monomial(&d).unwrap();
        assert_eq!(pairs[0].eigenvalue, Scalar::Finite(2.0));
        assert_eq!(pairs[0].eigenvector, Vector::unit(MaxPlus, 2, 0));
        assert_eq!(pairs[1].eigenvalue, Scalar::Finite(5.0));
        assert_eq!(pairs[1].eigenvector, Vector::unit(MaxPlus, 2, 1));

        for p in eigen_monomial(&MonomialMatrix::identity(MaxPlus, 3)).unwrap() {
            assert_eq!(p.eigenvalue, Scalar::Finite(0.0));
        }
    }

    #[test]
    fn generators() {
        let a = mat(&[&[Some(0.0), Some(3.0)], &[Some(-1.0), Some(1.0)]]);
        let gens = eigenspace_generators(&a, Scalar::Finite(1.0)).unwrap();
        assert_eq!(gens.len(), 1);
        assert!(eigenspace_generators(&a, Scalar::Finite(2.0)).unwrap().is_empty());

        let gens = eigenspace_generators(&Matrix::identity(MaxPlus, 3), Scalar::Finite(0.0)).unwrap();
        assert_eq!(gens, (0..3).map(|i| Vector::unit(MaxPlus, 3, i)).collect::<Vec<_>>());

        let gens = eigenspace_generators(&swap(), Scalar::Finite(1.0)).unwrap();
        assert_eq!(gens, vec![vecr(&[Some(0.0), Some(-3.0)])]);

        // two critical loops that do not share a cycle give two generators
        let two = mat(&[&[Some(0.0), Some(-5.0)], &[Some(-5.0), Some(0.0)]]);
        let gens = eigenspace_generators(&two, Scalar::Finite(0.0)).unwrap();
        assert_eq!(gens, vec![vecr(&[Some(0.0), Some(-5.0)]), vecr(&[Some(0.0), Some(5.0)])]);

        let reducible = mat(&[&[Some(0.0), Some(1.0)], &[None, Some(1.0)], ]);
        assert_eq!(
            eigenspace_generators(&reducible, Scalar::Finite(1.0)),
            Err(Error::NotIrreducible)
        );
    }

    #[test]
    fn joint_diagonal() {
        let a = mat(&[&[Some(1.0), None], &[None, Some(2.0)]]);
        let b = mat(&[&[Some(3.0), None], &[None, Some(0.0)]]);
        let r = joint_eigenvector_commuting(&[a, b]).unwrap();
        assert_eq!(r.eigenvector, Vector::unit(MaxPlus, 2, 0));
        assert_eq!(r.eigenvalues, vec![Scalar::Finite(1.0), Scalar::Finite(3.0)]);
    }

    #[test]
    fn joint_powers() {
        let m = swap();
        let m2 = m.mul(&m).unwrap();
        let r = joint_eigenvector_commuting(&[m, m2]).unwrap();
        assert_eq!(r.eigenvector, vecr(&[Some(0.0), Some(-3.0)]));
        assert_eq!(r.eigenvalues, vec![Scalar::Finite(1.0), Scalar::Finite(2.0)]);
    }

    #[test]
    fn joint_rejects() {
        let d = mat(&[&[Some(0.0), None], &[None, Some(5.0)]]);
        assert_eq!(joint_eigenvector_commuting(&[swap(), d]), Err(Error::NotCommuting));
        let full = mat(&[&[Some(0.0), Some(0.0)], &[Some(0.0), Some(0.0)]]);
        assert_eq!(joint_eigenvector_commuting(&[swap(), full]), Err(Error::NotInvertible));
    }

    #[test]
    fn scaling_shifts_eigenvalue() {
        let a = mat(&[&[Some(0.0), Some(3.0), None], &[None, Some(-1.0), Some(2.0)], &[Some(1.0), None, Some(0.0)]]);
        let p = eigenvector_irreducible(&a).unwrap();
        let shifted = eigenvector_irreducible(&a.scale(Scalar::Finite(4.0))).unwrap();
        assert_eq!(
            shifted.eigenvalue.unwrap_finite(),
            p.eigenvalue.unwrap_finite() + 4.0
        );
        assert_eq!(shifted.eigenvector, p.eigenvector);
    }
}
