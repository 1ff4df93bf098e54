//! Heat equation → Hamilton–Jacobi as h → 0, and the ⊕_h superposition
//! principle for the transformed solutions.

use idempotent::dequantization::{
    default_grid, dequantization_experiment, superposition_experiment, ActionField,
    HamiltonianSpec,
};

fn main() -> idempotent::Result<()> {
    let grid = default_grid();
    let spec = HamiltonianSpec::free(1.0, &grid)?;
    let s0 = ActionField::sample(grid, |x| x * x);

    println!("h,sup_error,error/h");
    for (h, err) in dequantization_experiment(&s0, &spec, &[0.8, 0.4, 0.2, 0.1], 1.0)? {
        println!("{h},{err:.6},{:.4}", err / h);
    }

    let s1 = ActionField::sample(grid, |x| (x - 1.0).powi(2));
    let s2 = ActionField::sample(grid, |x| 0.5 * (x + 1.0).powi(2) + 0.3);
    let gap = superposition_experiment(&s1, &s2, 0.2, -0.1, &spec, 0.2, 1.0)?;
    println!("superposition discrepancy at h = 0.2: {gap:.3e}");
    Ok(())
}
