//! The heat-type equation `h u_t = (h²/2m) u_xx + V u`, its logarithmic
//! transform `S = −h ln u`, and the Hamilton–Jacobi limit `h → 0`.
//!
//! Under `S = −h ln u` the heat equation becomes
//! `S_t + S_x²/2m + V = (h/2m) S_xx`, and as `h → 0` the viscous term drops
//! out. For `V ≡ 0` the limit is given by the Hopf–Lax formula, which is the
//! reference for the experiments below.

use crate::error::{Error, Result};
use crate::transforms::Grid;

/// Lower bound for boundary and initial values of `u`.
pub const FLOOR: f64 = 1e-300;
/// Fraction of the explicit stability bound used for the time step.
pub const CFL_FRACTION: f64 = 0.4;

/// `H(p, x) = p²/2m + V(x)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    pub mass: f64,
    pub potential: Vec<f64>,
}

impl HamiltonianSpec {
    pub fn new(mass: f64, potential: Vec<f64>) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::UnstableParameters(format!("mass must be positive, got {mass}")));
        }
        if let Some(v) = potential.iter().find(|v| !v.is_finite()) {
            return Err(Error::UnstableParameters(format!("potential value {v}")));
        }
        Ok(HamiltonianSpec { mass, potential })
    }

    /// `V ≡ 0`.
    pub fn free(mass: f64, grid: &Grid) -> Result<Self> {
        HamiltonianSpec::new(mass, vec![0.0; grid.count])
    }

    fn is_free(&self) -> bool {
        self.potential.iter().all(|&v| v == 0.0)
    }
}

/// Time-stepping parameters for [`evolve_heat`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatRun {
    pub h: f64,
    pub grid: Grid,
    pub dt: f64,
    pub t_final: f64,
}

impl HeatRun {
    /// Largest stable step is `m·dx²/h`.
    pub fn stability_bound(h: f64, mass: f64, dx: f64) -> f64 {
        mass * dx * dx / h
    }

    /// A run with `dt = 0.4·m·dx²/h`, shortened so that a whole number of
    /// steps reaches `t_final`.
    pub fn new(h: f64, grid: Grid, mass: f64, t_final: f64) -> Result<Self> {
        if !(h > 0.0 && t_final > 0.0) {
            return Err(Error::UnstableParameters(format!(
                "need h > 0 and t > 0, got h = {h}, t = {t_final}"
            )));
        }
        let target = CFL_FRACTION * HeatRun::stability_bound(h, mass, grid.step);
        let steps = (t_final / target).ceil().max(1.0);
        Ok(HeatRun {
            h,
            grid,
            dt: t_final / steps,
            t_final,
        })
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }
}

/// Values of the action `S` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionField {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl ActionField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.count {
            return Err(Error::GridMismatch(format!(
                "{} values for {} grid points",
                values.len(),
                grid.count
            )));
        }
        Ok(ActionField { grid, values })
    }

    pub fn sample(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        ActionField {
            values: grid.points().into_iter().map(f).collect(),
            grid,
        }
    }
}

/// The default experiment grid: `[−4, 4]` with `dx = 0.01`.
pub fn default_grid() -> Grid {
    grid_with_step(0.01)
}

/// `[−4, 4]` with step `dx` (rounded to divide the interval evenly).
///
/// Panics unless `0 < dx ≤ 4`.
pub fn grid_with_step(dx: f64) -> Grid {
    assert!(dx > 0.0 && dx <= 4.0, "grid step {dx} outside (0, 4]");
    let intervals = (8.0 / dx).round() as usize;
    Grid {
        origin: -4.0,
        step: 8.0 / intervals as f64,
        count: intervals + 1,
    }
}

/// Explicit Euler for `u_t = (h/2m) u_xx + (V/h) u`.
///
/// Both end values are held at their initial values (at least [`FLOOR`]);
/// the potential enters through the factor `exp(V·dt/h)` per step.
pub fn evolve_heat(u0: &[f64], spec: &HamiltonianSpec, run: &HeatRun) -> Result<Vec<f64>> {
    let n = run.grid.count;
    if u0.len() != n || spec.potential.len() != n {
        return Err(Error::GridMismatch(format!(
            "u0 has {}, potential {}, grid {} points",
            u0.len(),
            spec.potential.len(),
            n
        )));
    }
    if let Some(i) = u0.iter().position(|&u| !(u > 0.0)) {
        return Err(Error::NonPositiveInput(u0[i], i));
    }
    let dx = run.grid.step;
    let bound = HeatRun::stability_bound(run.h, spec.mass, dx);
    if run.dt > bound * (1.0 + 1e-12) {
        return Err(Error::UnstableParameters(format!(
            "dt = {} exceeds m·dx²/h = {bound}",
            run.dt
        )));
    }
    let r = run.h / (2.0 * spec.mass) * run.dt / (dx * dx);
    let factor: Option<Vec<f64>> =
        (!spec.is_free()).then(|| spec.potential.iter().map(|v| (v * run.dt / run.h).exp()).collect());
    let mut u = u0.to_vec();
    let (left, right) = (u0[0].max(FLOOR), u0[n - 1].max(FLOOR));
    let mut next = vec![0.0; n];
    for _ in 0..run.steps() {
        for i in 1..n.saturating_sub(1) {
            next[i] = u[i] + r * (u[i - 1] - 2.0 * u[i] + u[i + 1]);
        }
        next[0] = left;
        next[n - 1] = right;
        if let Some(f) = &factor {
            for i in 1..n - 1 {
                next[i] *= f[i];
            }
        }
        std::mem::swap(&mut u, &mut next);
    }
    Ok(u)
}

/// `S = −h ln u`.
pub fn log_transform(u: &[f64], h: f64, grid: Grid) -> Result<ActionField> {
    if let Some(i) = u.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::NonPositiveInput(u[i], i));
    }
    ActionField::new(grid, u.iter().map(|v| -h * v.ln()).collect())
}

/// `u = e^{−S/h}`, the inverse of [`log_transform`].
pub fn exp_transform(s: &ActionField, h: f64) -> Vec<f64> {
    s.values.iter().map(|v| (-v / h).exp()).collect()
}

/// `−h ln(e^{−a/h} + e^{−b/h})` in a form that cannot overflow.
fn min_h(a: f64, b: f64, h: f64) -> f64 {
    let m = a.min(b);
    m - h * ((-(a - m) / h).exp() + (-(b - m) / h).exp()).ln()
}

/// `(λ₁ ⊙ S₁) ⊕_h (λ₂ ⊙ S₂)` pointwise in the min-plus dequantized
/// semiring; it lies in `[min − h ln 2, min]` of `min(λ₁+S₁, λ₂+S₂)`.
pub fn deq_superpose_min(
    s1: &ActionField,
    s2: &ActionField,
    lambda1: f64,
    lambda2: f64,
    h: f64,
) -> Result<ActionField> {
    if !s1.grid.same_as(&s2.grid) {
        return Err(Error::GridMismatch(format!("{:?} vs {:?}", s1.grid, s2.grid)));
    }
    let values = s1
        .values
        .iter()
        .zip(&s2.values)
        .map(|(&a, &b)| min_h(lambda1 + a, lambda2 + b, h))
        .collect();
    ActionField::new(s1.grid, values)
}

/// `S(x, t) = min_y (S₀(y) + m(x−y)²/2t)` with `y` ranging over the grid.
pub fn hopf_lax(s0: &ActionField, t: f64, mass: f64) -> ActionField {
    let xs = s0.grid.points();
    let k = mass / (2.0 * t);
    let values = xs
        .iter()
        .map(|&x| {
            xs.iter()
                .zip(&s0.values)
                .map(|(&y, &s)| s + k * (x - y) * (x - y))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    ActionField {
        grid: s0.grid,
        values,
    }
}

/// Indices of the central half of the grid.
pub fn central_window(count: usize) -> std::ops::Range<usize> {
    count / 4..count - count / 4
}

fn sup_error(a: &[f64], b: &[f64], window: std::ops::Range<usize>) -> f64 {
    window.map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

fn require_free(spec: &HamiltonianSpec) -> Result<()> {
    if !spec.is_free() {
        return Err(Error::UnstableParameters(
            "the Hopf–Lax reference needs V ≡ 0".into(),
        ));
    }
    Ok(())
}

/// `u₀ = e^{−S₀/h}`, clamped below at the boundary floor.
fn initial_density(s0: &ActionField, h: f64) -> Vec<f64> {
    exp_transform(s0, h).into_iter().map(|u| u.max(FLOOR)).collect()
}

/// The transformed heat solution at time `t`.
pub fn heat_action(s0: &ActionField, spec: &HamiltonianSpec, h: f64, t: f64) -> Result<ActionField> {
    let run = HeatRun::new(h, s0.grid, spec.mass, t)?;
    let u = evolve_heat(&initial_density(s0, h), spec, &run)?;
    log_transform(&u, h, s0.grid)
}

/// Per-point comparison `(x, S_h, S_hopf_lax)` on the whole grid.
pub fn dequantization_profile(
    s0: &ActionField,
    spec: &HamiltonianSpec,
    h: f64,
    t: f64,
) -> Result<Vec<(f64, f64, f64)>> {
    require_free(spec)?;
    let sh = heat_action(s0, spec, h, t)?;
    let reference = hopf_lax(s0, t, spec.mass);
    Ok(s0
        .grid
        .points()
        .into_iter()
        .zip(sh.values)
        .zip(reference.values)
        .map(|((x, a), b)| (x, a, b))
        .collect())
}

/// For each `h`: the sup-norm distance on the central window between the
/// transformed heat solution and the Hopf–Lax solution.
pub fn dequantization_experiment(
    s0: &ActionField,
    spec: &HamiltonianSpec,
    hs: &[f64],
    t: f64,
) -> Result<Vec<(f64, f64)>> {
    require_free(spec)?;
    let reference = hopf_lax(s0, t, spec.mass);
    hs.iter()
        .map(|&h| {
            let sh = heat_action(s0, spec, h, t)?;
            let err = sup_error(&sh.values, &reference.values, central_window(s0.grid.count));
            Ok((h, err))
        })
        .collect()
}

/// Sup-norm discrepancy on the central window between evolving the
/// superposition `λ₁⊙S₁ ⊕_h λ₂⊙S₂` and superposing the evolved `S₁`, `S₂`.
pub fn superposition_experiment(
    s1: &ActionField,
    s2: &ActionField,
    lambda1: f64,
    lambda2: f64,
    spec: &HamiltonianSpec,
    h: f64,
    t: f64,
) -> Result<f64> {
    require_free(spec)?;
    let combined = deq_superpose_min(s1, s2, lambda1, lambda2, h)?;
    let path_a = heat_action(&combined, spec, h, t)?;
    let path_b = deq_superpose_min(
        &heat_action(s1, spec, h, t)?,
        &heat_action(s2, spec, h, t)?,
        lambda1,
        lambda2,
        h,
    )?;
    Ok(sup_error(&path_a.values, &path_b.values, central_window(s1.grid.count)))
}
