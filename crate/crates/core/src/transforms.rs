//! Idempotent integration, sup-convolution and the Legendre transform.
//!
//! Functions live on uniform one-dimensional grids and are extended by the
//! semiring zero outside the stored samples, so every `sup` ranges over the
//! stored support only.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::representations::FiniteGroup;
use crate::semiring::{Scalar, SemiringId};

/// Relative tolerance for comparing grid parameters.
pub const GRID_TOL: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= GRID_TOL * (1.0 + a.abs().max(b.abs()))
}

/// Points `origin + i·step` for `i < count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub origin: f64,
    pub step: f64,
    pub count: usize,
}

/// The grid of dual variables `ξ`.
pub type XiGrid = Grid;

impl Grid {
    pub fn new(origin: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && origin.is_finite()) || count == 0 {
            return Err(Error::GridMismatch(format!(
                "need step > 0 and count ≥ 1, got step {step}, count {count}"
            )));
        }
        Ok(Grid { origin, step, count })
    }

    /// `count` evenly spaced points from `min` to `max` inclusive.
    pub fn from_range(min: f64, max: f64, count: usize) -> Result<Self> {
        match count {
            0 => Grid::new(min, 1.0, 0),
            1 if min == max => Grid::new(min, 1.0, 1),
            _ if max > min => Grid::new(min, (max - min) / (count - 1) as f64, count),
            _ => Err(Error::GridMismatch(format!("empty range [{min}, {max}]"))),
        }
    }

    pub fn point(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    pub fn same_as(&self, other: &Grid) -> bool {
        self.count == other.count && close(self.step, other.step) && close(self.origin, other.origin)
    }
}

/// Samples `values[i]` of a function at `grid.point(i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub semiring: SemiringId,
    pub grid: Grid,
    pub values: Vec<Scalar>,
}

impl SampledFunction {
    pub fn new(semiring: SemiringId, grid: Grid, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != grid.count {
            return Err(Error::GridMismatch(format!(
                "{} values for {} grid points",
                values.len(),
                grid.count
            )));
        }
        let values = values
            .into_iter()
            .map(|v| semiring.validate(v))
            .collect::<Result<_>>()?;
        Ok(SampledFunction {
            semiring,
            grid,
            values,
        })
    }

    /// Samples `f` at every grid point.
    pub fn sample(semiring: SemiringId, grid: Grid, f: impl Fn(f64) -> Scalar) -> Result<Self> {
        let values = grid.points().into_iter().map(f).collect();
        SampledFunction::new(semiring, grid, values)
    }

    /// A single sample `𝟙` at `x0`.
    pub fn delta(semiring: SemiringId, x0: f64) -> Self {
        SampledFunction {
            semiring,
            grid: Grid {
                origin: x0,
                step: 1.0,
                count: 1,
            },
            values: vec![semiring.one()],
        }
    }

    pub fn scale(&self, k: Scalar) -> SampledFunction {
        let s = self.semiring;
        SampledFunction {
            values: self.values.iter().map(|&v| s.mul(k, v)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &SampledFunction) -> Result<SampledFunction> {
        check_same(self, other)?;
        let s = self.semiring;
        Ok(SampledFunction {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| s.add(a, b)).collect(),
            ..self.clone()
        })
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.value().is_none_or(|x| x.fract() == 0.0))
    }
}

fn check_same(phi: &SampledFunction, psi: &SampledFunction) -> Result<()> {
    if phi.semiring != psi.semiring {
        return Err(Error::SemiringMismatch(phi.semiring, psi.semiring));
    }
    if !phi.grid.same_as(&psi.grid) {
        return Err(Error::GridMismatch(format!("{:?} vs {:?}", phi.grid, psi.grid)));
    }
    Ok(())
}

/// `⊕_x φ(x)`: the supremum for max-plus, the infimum for min-plus.
pub fn idempotent_integral(phi: &SampledFunction) -> Scalar {
    phi.semiring.sup_set(phi.values.iter().copied())
}

/// `⊕_x φ(x) ⊙ ψ(x)`, the integral of `φ` against the measure with density `ψ`.
pub fn integral_wrt_measure(phi: &SampledFunction, psi: &SampledFunction) -> Result<Scalar> {
    check_same(phi, psi)?;
    let s = phi.semiring;
    Ok(s.sup_set(phi.values.iter().zip(&psi.values).map(|(&a, &b)| s.mul(a, b))))
}

/// The idempotent scalar product `⟨φ, ψ⟩`; symmetric in its arguments.
pub fn scalar_product(phi: &SampledFunction, psi: &SampledFunction) -> Result<Scalar> {
    integral_wrt_measure(phi, psi)
}

/// Sup-convolution (inf-convolution for min-plus) on the Minkowski-sum grid:
/// `(φ⊛ψ)(z) = ⊕_{x+y=z} φ(x) ⊙ ψ(y)`.
pub fn convolve_grid(phi: &SampledFunction, psi: &SampledFunction) -> Result<SampledFunction> {
    if phi.semiring != psi.semiring {
        return Err(Error::SemiringMismatch(phi.semiring, psi.semiring));
    }
    if !close(phi.grid.step, psi.grid.step) && phi.grid.count > 1 && psi.grid.count > 1 {
        return Err(Error::StepMismatch(phi.grid.step, psi.grid.step));
    }
    let s = phi.semiring;
    let step = if phi.grid.count > 1 { phi.grid.step } else { psi.grid.step };
    let count = phi.grid.count + psi.grid.count - 1;
    let mut values = vec![s.zero(); count];
    for (i, &a) in phi.values.iter().enumerate() {
        if a.is_bottom() {
            continue;
        }
        for (j, &b) in psi.values.iter().enumerate() {
            values[i + j] = s.add(values[i + j], s.mul(a, b));
        }
    }
    Ok(SampledFunction {
        semiring: s,
        grid: Grid {
            origin: phi.grid.origin + psi.grid.origin,
            step,
            count,
        },
        values,
    })
}

/// A function on the elements of a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    pub group: Arc<FiniteGroup>,
    pub semiring: SemiringId,
    pub values: Vec<Scalar>,
}

impl GroupFunction {
    pub fn new(group: Arc<FiniteGroup>, semiring: SemiringId, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::ShapeMismatch(format!(
                "{} values on a group of order {}",
                values.len(),
                group.order()
            )));
        }
        let values = values
            .into_iter()
            .map(|v| semiring.validate(v))
            .collect::<Result<_>>()?;
        Ok(GroupFunction {
            group,
            semiring,
            values,
        })
    }

    /// `δ_e`: 𝟙 at the identity, 𝟘 elsewhere; the unit of `⊛`.
    pub fn delta(group: Arc<FiniteGroup>, semiring: SemiringId) -> Self {
        let mut values = vec![semiring.zero(); group.order()];
        values[group.identity()] = semiring.one();
        GroupFunction {
            group,
            semiring,
            values,
        }
    }

    pub fn add(&self, other: &GroupFunction) -> Result<GroupFunction> {
        same_group(self, other)?;
        let s = self.semiring;
        Ok(GroupFunction {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| s.add(a, b)).collect(),
            ..self.clone()
        })
    }
}

fn same_group(phi: &GroupFunction, psi: &GroupFunction) -> Result<()> {
    if !(Arc::ptr_eq(&phi.group, &psi.group) || phi.group == psi.group) {
        return Err(Error::GroupMismatch);
    }
    if phi.semiring != psi.semiring {
        return Err(Error::SemiringMismatch(phi.semiring, psi.semiring));
    }
    Ok(())
}

/// `(φ⊛ψ)(g) = ⊕_x φ(x) ⊙ ψ(x⁻¹g)`.
pub fn convolve_group(phi: &GroupFunction, psi: &GroupFunction) -> Result<GroupFunction> {
    same_group(phi, psi)?;
    let g = &phi.group;
    let s = phi.semiring;
    let mut values = vec![s.zero(); g.order()];
    for (x, &a) in phi.values.iter().enumerate() {
        if a.is_bottom() {
            continue;
        }
        for (y, &b) in psi.values.iter().enumerate() {
            // x⁻¹g = y  ⇔  g = xy
            let target = g.mul(x, y);
            values[target] = s.add(values[target], s.mul(a, b));
        }
    }
    Ok(GroupFunction {
        group: g.clone(),
        semiring: s,
        values,
    })
}

fn require_maxplus(phi: &SampledFunction) -> Result<()> {
    if phi.semiring != SemiringId::MaxPlus {
        return Err(Error::SemiringMismatch(phi.semiring, SemiringId::MaxPlus));
    }
    Ok(())
}

/// `φ̃(ξ) = sup_x (ξ·x + φ(x))` for every `ξ` of the dual grid.
pub fn legendre(phi: &SampledFunction, xis: &XiGrid) -> Result<SampledFunction> {
    require_maxplus(phi)?;
    let support: Vec<(f64, f64)> = phi
        .values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.value().map(|v| (phi.grid.point(i), v)))
        .collect();
    if support.is_empty() {
        return Err(Error::AllBottom);
    }
    let values = xis
        .points()
        .into_iter()
        .map(|xi| {
            let best = support
                .iter()
                .map(|&(x, v)| xi * x + v)
                .fold(f64::NEG_INFINITY, f64::max);
            Scalar::Finite(best)
        })
        .collect();
    Ok(SampledFunction {
        semiring: SemiringId::MaxPlus,
        grid: *xis,
        values,
    })
}

/// `ψ(x) = inf_ξ (φ̃(ξ) − ξ·x)` on the grid `xs`, the inverse transform
/// taken over the sampled dual variables.
pub fn legendre_inverse(phi_tilde: &SampledFunction, xs: &Grid) -> Result<SampledFunction> {
    require_maxplus(phi_tilde)?;
    let dual: Vec<(f64, f64)> = phi_tilde
        .values
        .iter()
        .enumerate()
        .filter_map(|(k, v)| v.value().map(|v| (phi_tilde.grid.point(k), v)))
        .collect();
    if dual.is_empty() {
        return Err(Error::AllBottom);
    }
    let values = xs
        .points()
        .into_iter()
        .map(|x| {
            let best = dual
                .iter()
                .map(|&(xi, v)| v - xi * x)
                .fold(f64::INFINITY, f64::min);
            Scalar::Finite(best)
        })
        .collect();
    Ok(SampledFunction {
        semiring: SemiringId::MaxPlus,
        grid: *xs,
        values,
    })
}

/// Slopes `num/den` of the upper hull of the finite samples, in index
/// coordinates.
fn hull_slopes(points: &[(i64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(i64, f64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly above the chord a–p
            let cross = (b.0 - a.0) as f64 * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) as f64;
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2)
        .map(|w| (w[1].1 - w[0].1, (w[1].0 - w[0].0) as f64))
        .collect()
}

/// Double Legendre transform mapped back onto the original grid: the least
/// concave majorant of the samples, `Bottom` outside their support.
///
/// The dual variables are the negated slopes of the upper hull, one per hull
/// edge, so the second transform is attained exactly at every grid point.
/// Each slope is kept as a fraction `num/den` and the two transforms are
/// evaluated as `(max_j(den·φ_j − num·j) + num·i) / den`, which rounds once.
pub fn legendre_involution(phi: &SampledFunction) -> Result<SampledFunction> {
    require_maxplus(phi)?;
    let points: Vec<(i64, f64)> = phi
        .values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.value().map(|v| (i as i64, v)))
        .collect();
    let (first, last) = match (points.first(), points.last()) {
        (Some(f), Some(l)) => (f.0, l.0),
        _ => return Err(Error::AllBottom),
    };
    let mut slopes = hull_slopes(&points);
    if slopes.is_empty() {
        slopes.push((0.0, 1.0));
    }
    // den·φ̃(−num/den), one value per dual variable
    let conjugate: Vec<f64> = slopes
        .iter()
        .map(|&(num, den)| {
            points
                .iter()
                .map(|&(j, v)| den * v - num * j as f64)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let values = (0..phi.grid.count as i64)
        .map(|i| {
            if i < first || i > last {
                return Scalar::Bottom;
            }
            let best = slopes
                .iter()
                .zip(&conjugate)
                .map(|(&(num, den), &c)| (c + num * i as f64) / den)
                .fold(f64::INFINITY, f64::min);
            Scalar::Finite(best)
        })
        .collect();
    Ok(SampledFunction {
        semiring: SemiringId::MaxPlus,
        grid: phi.grid,
        values,
    })
}
