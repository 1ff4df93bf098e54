//! Max-plus eigenvalues: the maximum cycle mean of an irreducible matrix,
//! the cycle-by-cycle spectrum of a monomial matrix, and the eigenspace.

use idempotent::linalg::MonomialMatrix;
use idempotent::spectral::{eigen_monomial, eigenspace_generators, eigenvector_irreducible, is_irreducible};
use idempotent::{Matrix, Scalar, SemiringId, Vector};

fn show(v: &Vector) -> String {
    let s = v.semiring();
    v.entries().iter().map(|&x| s.format_scalar(x)).collect::<Vec<_>>().join(" ")
}

fn main() -> idempotent::Result<()> {
    let s = SemiringId::MaxPlus;
    let a = Matrix::from_reals(
        s,
        &[
            vec![Some(1.0), Some(-1.0), None],
            vec![Some(4.0), None, Some(0.0)],
            vec![None, Some(2.0), Some(-3.0)],
        ],
    )?;
    println!("irreducible: {}", is_irreducible(&a));
    let pair = eigenvector_irreducible(&a)?;
    println!("λ = {}, v = {}", s.format_scalar(pair.eigenvalue), show(&pair.eigenvector));
    println!("A ⊙ v = {}", show(&a.mul_vec(&pair.eigenvector)?));
    for (k, g) in eigenspace_generators(&a, pair.eigenvalue)?.iter().enumerate() {
        println!("eigenspace generator {k}: {}", show(g));
    }

    // A 2-cycle with weights 2 and 0 next to a fixed point of weight -1.
    let m = MonomialMatrix::new(
        s,
        vec![1, 0, 2],
        vec![Scalar::Finite(2.0), Scalar::Finite(0.0), Scalar::Finite(-1.0)],
    )?;
    for p in eigen_monomial(&m)? {
        println!("monomial: λ = {}, v = {}", s.format_scalar(p.eigenvalue), show(&p.eigenvector));
    }
    Ok(())
}
