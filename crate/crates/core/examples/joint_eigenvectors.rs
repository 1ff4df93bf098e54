//! Common eigenvectors: a commuting family of monomial matrices, and a
//! monomial representation of the quaternion group.

use std::sync::Arc;

use idempotent::generate;
use idempotent::representations::{joint_eigenvector_nilpotent, lower_central_series, orbit_sum, FiniteGroup};
use idempotent::spectral::joint_eigenvector_commuting;
use idempotent::{Matrix, SemiringId, Vector};

fn show(v: &Vector) -> String {
    let s = v.semiring();
    v.entries().iter().map(|&x| s.format_scalar(x)).collect::<Vec<_>>().join(" ")
}

fn main() -> idempotent::Result<()> {
    let mut rng = generate::rng(1);
    let family = generate::random_commuting_family(&mut rng, 5, 3);
    let dense: Vec<Matrix> = family.iter().map(|m| m.to_matrix()).collect();
    let report = joint_eigenvector_commuting(&dense)?;
    let s = SemiringId::MaxPlus;
    let lambdas: Vec<String> = report.eigenvalues.iter().map(|&l| s.format_scalar(l)).collect();
    println!("commuting family of 3: v = {}, λ = {}", show(&report.eigenvector), lambdas.join(", "));

    let q8 = Arc::new(FiniteGroup::quaternion());
    let series = lower_central_series(&q8);
    println!("\nQ8 nilpotency class: {:?}", series.class);
    let pi = generate::random_representation(&mut rng, q8)?;
    println!("random representation of dimension {}", pi.dim());
    let (v, chi) = joint_eigenvector_nilpotent(&pi)?;
    println!("joint eigenvector: {}", show(&v));
    // g^k = e forces k·λ(g) = 0, so the character is trivial.
    let chars: Vec<String> = chi.values.iter().map(|&l| s.format_scalar(l)).collect();
    println!("character: {}", chars.join(" "));
    println!("orbit sum of the first basis vector: {}", show(&orbit_sum(&pi, &Vector::unit(s, pi.dim(), 0))?));
    Ok(())
}
