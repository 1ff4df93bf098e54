//! Finite groups acting on `Kⁿ` by invertible (monomial) matrices.
//!
//! For a finite group every orbit is bounded, so the orbit sum
//! `a = ⊕_g π(g) x` is a fixed vector and every representation has a joint
//! eigenvector with the trivial character. Nilpotent groups are additionally
//! handled by an Engel-style descent through central elements, which returns a
//! joint eigenvector together with its character.

mod group;

use std::sync::Arc;

pub use group::{lower_central_series, validate_group, FiniteGroup, LowerCentralSeries};

use crate::error::{Error, Result};
use crate::linalg::{MonomialMatrix, Vector};
use crate::semiring::{Scalar, SemiringId};
use crate::spectral::{
    combine, eigen_monomial, eigenvalue_at, joint_monomial, monomial_eigenspace, normalize,
    restrict_monomial,
};

/// A map from group elements to monomial matrices, indexed by element.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    semiring: SemiringId,
    images: Vec<MonomialMatrix>,
}

/// A multiplicative map `λ(gh) = λ(g) ⊙ λ(h)` from the group to the scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub group: Arc<FiniteGroup>,
    pub semiring: SemiringId,
    pub values: Vec<Scalar>,
}

impl Representation {
    /// Shape checks only; see [`Representation::validate`] for the
    /// homomorphism property.
    pub fn new(group: Arc<FiniteGroup>, images: Vec<MonomialMatrix>) -> Result<Self> {
        let first = images
            .first()
            .ok_or_else(|| Error::NotARepresentation("no images".into()))?;
        if images.len() != group.order() {
            return Err(Error::NotARepresentation(format!(
                "{} images for a group of order {}",
                images.len(),
                group.order()
            )));
        }
        let semiring = first.semiring();
        if !semiring.is_semifield() {
            return Err(Error::NotASemifield(semiring));
        }
        if images.iter().any(|m| m.dim() != first.dim() || m.semiring() != semiring) {
            return Err(Error::NotARepresentation("images differ in size or semiring".into()));
        }
        Ok(Representation {
            group,
            semiring,
            images,
        })
    }

    /// Every element acts as the identity.
    pub fn trivial(group: Arc<FiniteGroup>, semiring: SemiringId, dim: usize) -> Result<Self> {
        let images = vec![MonomialMatrix::identity(semiring, dim); group.order()];
        Representation::new(group, images)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn semiring(&self) -> SemiringId {
        self.semiring
    }

    pub fn dim(&self) -> usize {
        self.images[0].dim()
    }

    pub fn images(&self) -> &[MonomialMatrix] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &MonomialMatrix {
        &self.images[g]
    }

    /// Checks `π(e) = I` and `π(gh) = π(g) ⊙ π(h)` for every pair, reporting
    /// the first failure.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let identity = MonomialMatrix::identity(self.semiring, self.dim());
        if !self.images[g.identity()].approx_eq(&identity) {
            return Err(Error::NotARepresentation("identity is not mapped to I".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let product = self.images[a].mul(&self.images[b])?;
                if !product.approx_eq(&self.images[g.mul(a, b)]) {
                    return Err(Error::NotARepresentation(format!(
                        "π({a}·{b}) ≠ π({a}) ⊙ π({b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Whether `π(g) ⊙ v = λ(g) ⊙ v` for every element.
    pub fn is_joint_eigenvector(&self, v: &Vector, lambda: &Character) -> bool {
        !v.is_zero()
            && self.images.iter().zip(&lambda.values).all(|(m, &l)| {
                m.apply(v).is_ok_and(|image| image.approx_eq(&v.scale(l)))
            })
    }
}

/// Free-function form of [`Representation::validate`].
pub fn validate_representation(pi: &Representation) -> Result<()> {
    pi.validate()
}

/// Exhaustive multiplicativity test.
pub fn character_check(lambda: &Character) -> bool {
    let g = &lambda.group;
    let s = lambda.semiring;
    lambda.values.len() == g.order()
        && s.approx_eq(lambda.values[g.identity()], s.one())
        && (0..g.order()).all(|a| {
            (0..g.order()).all(|b| {
                s.approx_eq(
                    lambda.values[g.mul(a, b)],
                    s.mul(lambda.values[a], lambda.values[b]),
                )
            })
        })
}

/// `a = ⊕_g π(g) x`, a vector fixed by every `π(g)`.
pub fn orbit_sum(pi: &Representation, x: &Vector) -> Result<Vector> {
    if x.dim() != pi.dim() || x.semiring() != pi.semiring {
        return Err(Error::ShapeMismatch("seed does not match the representation".into()));
    }
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut a = Vector::zeros(pi.semiring, pi.dim());
    for m in &pi.images {
        a = a.add(&m.apply(x)?)?;
    }
    for (g, m) in pi.images.iter().enumerate() {
        if !m.apply(&a)?.approx_eq(&a) {
            return Err(Error::InternalInvariant(format!("orbit sum not fixed by element {g}")));
        }
    }
    Ok(a)
}

fn trivial_character(pi: &Representation) -> Character {
    Character {
        group: pi.group.clone(),
        semiring: pi.semiring,
        values: vec![pi.semiring.one(); pi.group.order()],
    }
}

/// Joint eigenvector of a finite-group representation: the orbit sum of the
/// all-𝟙 vector, with the constant character 𝟙.
pub fn joint_eigenvector_finite(pi: &Representation) -> Result<(Vector, Character)> {
    let a = orbit_sum(pi, &Vector::ones(pi.semiring, pi.dim()))?;
    Ok((a, trivial_character(pi)))
}

/// Joint eigenvector of a representation of a nilpotent group, with its
/// character, verified on every group element before it is returned.
pub fn joint_eigenvector_nilpotent(pi: &Representation) -> Result<(Vector, Character)> {
    if !lower_central_series(&pi.group).nilpotent {
        return Err(Error::NotNilpotent);
    }
    let s = pi.semiring;
    if !matches!(s, SemiringId::MaxPlus | SemiringId::MinPlus) {
        return Err(Error::NotAlgebraicallyClosed {
            semiring: s,
            value: "representation".into(),
            n: 0,
        });
    }
    let center = pi.group.center();
    let v = normalize(&descend(&pi.images, pi.dim(), s, &center)?);
    let values = pi
        .images
        .iter()
        .map(|m| {
            eigenvalue_at(m, &v).ok_or_else(|| {
                Error::InternalInvariant("descent returned a non-eigenvector".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lambda = Character {
        group: pi.group.clone(),
        semiring: s,
        values,
    };
    if !character_check(&lambda) || !pi.is_joint_eigenvector(&v, &lambda) {
        return Err(Error::InternalInvariant("eigenvalue map is not a character".into()));
    }
    Ok((v, lambda))
}

fn pairwise_commute(images: &[MonomialMatrix]) -> Result<bool> {
    for (i, a) in images.iter().enumerate() {
        for b in &images[i + 1..] {
            if !a.mul(b)?.approx_eq(&b.mul(a)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `images` is indexed by group element and forms a representation (possibly
/// a restriction of the original one) on `Kᵈⁱᵐ`.
fn descend(images: &[MonomialMatrix], dim: usize, s: SemiringId, center: &[usize]) -> Result<Vector> {
    if pairwise_commute(images)? {
        let mut distinct: Vec<MonomialMatrix> = Vec::new();
        for m in images {
            if !distinct.iter().any(|d| d.approx_eq(m)) {
                distinct.push(m.clone());
            }
        }
        return joint_monomial(&distinct, dim, s);
    }
    if let Some(&z) = center.iter().find(|&&z| images[z].as_scalar().is_none()) {
        let mut eigenvalues: Vec<Scalar> = eigen_monomial(&images[z])?
            .into_iter()
            .map(|p| p.eigenvalue)
            .collect();
        eigenvalues.sort_by(|a, b| a.unwrap_finite().total_cmp(&b.unwrap_finite()));
        eigenvalues.dedup_by(|a, b| s.approx_eq(*a, *b));
        for mu in eigenvalues {
            let gens = monomial_eigenspace(&images[z], mu)?;
            let restricted = images
                .iter()
                .map(|m| restrict_monomial(m, &gens))
                .collect::<Result<Vec<_>>>()?;
            match descend(&restricted, gens.len(), s, center) {
                Ok(coeffs) => return Ok(combine(&gens, &coeffs)),
                Err(Error::ExhaustedCandidates) => continue,
                Err(e) => return Err(e),
            }
        }
        return Err(Error::ExhaustedCandidates);
    }
    candidate_search(images, dim, s)
}

/// Tries each orbit of the coordinate permutations as a support: the
/// eigenvalue of every element is forced by its cycle through the orbit's
/// smallest coordinate, and the coordinates by propagation from that one.
fn candidate_search(images: &[MonomialMatrix], dim: usize, s: SemiringId) -> Result<Vector> {
    let mut orbit_of = vec![usize::MAX; dim];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..dim {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        orbit_of[start] = id;
        let mut next = 0;
        while next < orbit.len() {
            let i = orbit[next];
            for m in images {
                let j = m.perm()[i];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    orbit.push(j);
                }
            }
            next += 1;
        }
        orbits.push(orbit);
    }

    'orbits: for orbit in orbits {
        let base = orbit[0];
        let lambdas: Vec<f64> = images
            .iter()
            .map(|m| {
                let (mut i, mut total, mut len) = (base, 0.0, 0usize);
                loop {
                    total += m.weights()[i].unwrap_finite();
                    len += 1;
                    i = m.perm()[i];
                    if i == base {
                        break total / len as f64;
                    }
                }
            })
            .collect();
        let mut values: Vec<Option<f64>> = vec![None; dim];
        values[base] = Some(0.0);
        let mut queue = vec![base];
        while let Some(i) = queue.pop() {
            let vi = values[i].expect("queued coordinates are set");
            for (m, &l) in images.iter().zip(&lambdas) {
                let j = m.perm()[i];
                let vj = l + vi - m.weights()[i].unwrap_finite();
                match values[j] {
                    None => {
                        values[j] = Some(vj);
                        queue.push(j);
                    }
                    Some(existing) => {
                        if !s.approx_eq(Scalar::Finite(existing), Scalar::Finite(vj)) {
                            continue 'orbits;
                        }
                    }
                }
            }
        }
        let v = Vector::from_reals(s, &values)?;
        if images.iter().all(|m| eigenvalue_at(m, &v).is_some()) {
            return Ok(v);
        }
    }
    Err(Error::ExhaustedCandidates)
}
