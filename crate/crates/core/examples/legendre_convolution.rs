//! Idempotent integrals, sup-convolution, and the Legendre transform on a
//! grid, including the concave hull produced by applying it twice.

use idempotent::transforms::{
    convolve_grid, idempotent_integral, legendre, legendre_involution, scalar_product, Grid, SampledFunction,
};
use idempotent::{Scalar, SemiringId};

fn row(f: &SampledFunction) -> String {
    let s = f.semiring;
    f.values.iter().map(|&v| s.format_scalar(v)).collect::<Vec<_>>().join(" ")
}

fn main() -> idempotent::Result<()> {
    let s = SemiringId::MaxPlus;
    let grid = Grid::from_range(-2.0, 2.0, 9)?;
    let phi = SampledFunction::sample(s, grid, |x| Scalar::Finite(-x * x))?;
    let psi = SampledFunction::sample(s, grid, Scalar::Finite)?;
    println!("φ = -x² on {:?}", grid.points());
    println!("∫ φ = {}", s.format_scalar(idempotent_integral(&phi)));
    println!("⟨φ, x⟩ = {}", s.format_scalar(scalar_product(&phi, &psi)?));

    let sq = convolve_grid(&phi, &phi)?;
    println!("\nφ ⋆ φ from {} with step {}: {}", sq.grid.origin, sq.grid.step, row(&sq));

    let xis = Grid::from_range(-4.0, 4.0, 9)?;
    let dual = legendre(&phi, &xis)?;
    println!("\nLegendre transform at ξ = {:?}:\n{}", xis.points(), row(&dual));

    let dip = SampledFunction::new(
        s,
        Grid::new(0.0, 1.0, 5)?,
        [0.0, 3.0, -1.0, 2.0, 0.0].map(Scalar::Finite).to_vec(),
    )?;
    println!("\nφ = {}\nconcave hull = {}", row(&dip), row(&legendre_involution(&dip)?));
    Ok(())
}
