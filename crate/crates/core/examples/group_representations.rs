//! Finite groups from their Cayley tables, monomial representations, and
//! what the validator says about a broken one.

use std::sync::Arc;

use idempotent::generate;
use idempotent::linalg::MonomialMatrix;
use idempotent::representations::{lower_central_series, FiniteGroup, Representation};
use idempotent::{Scalar, SemiringId};

fn main() -> idempotent::Result<()> {
    for name in ["c6", "d4", "q8", "heis3", "s3", "s4"] {
        let g = FiniteGroup::from_name(name)?;
        let series = lower_central_series(&g);
        let sizes: Vec<usize> = series.subgroups.iter().map(Vec::len).collect();
        println!(
            "{name:>6}: order {:>2}, center {}, lower central series {:?}, nilpotent {}",
            g.order(),
            g.center().len(),
            sizes,
            series.nilpotent
        );
    }

    // C2 acting by swapping two coordinates, twisted by weights 3 and -3.
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let s = SemiringId::MaxPlus;
    let swap = MonomialMatrix::new(s, vec![1, 0], vec![Scalar::Finite(3.0), Scalar::Finite(-3.0)])?;
    let pi = Representation::new(c2.clone(), vec![MonomialMatrix::identity(s, 2), swap])?;
    println!("\nswap with weights 3, -3: {:?}", pi.validate());
    let skew = MonomialMatrix::new(s, vec![1, 0], vec![Scalar::Finite(3.0), Scalar::Finite(-2.0)])?;
    let broken = Representation::new(c2, vec![MonomialMatrix::identity(s, 2), skew])?;
    println!("swap with weights 3, -2: {}", broken.validate().unwrap_err());

    let mut rng = generate::rng(11);
    let heis = Arc::new(FiniteGroup::heisenberg(3));
    let rho = generate::random_representation(&mut rng, heis)?;
    println!("\nrandom representation of heis3: dimension {}, valid {}", rho.dim(), rho.is_valid());
    Ok(())
}
