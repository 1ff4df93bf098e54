//! Shortest paths as a linear system over min-plus, solved three ways,
//! and what happens when a negative cycle is present.

use idempotent::io;
use idempotent::linalg::{closure_star, graph_to_matrix, path_weights, ClosureMethod, SolveMethod, WeightedGraph};
use idempotent::{Error, Scalar, SemiringId};

fn main() -> idempotent::Result<()> {
    let s = SemiringId::MinPlus;
    let edges = vec![
        (0, 1, Scalar::Finite(4.0)),
        (0, 2, Scalar::Finite(1.0)),
        (2, 1, Scalar::Finite(2.0)),
        (1, 3, Scalar::Finite(1.0)),
        (2, 3, Scalar::Finite(5.0)),
    ];
    let g = WeightedGraph::new(4, edges)?;
    for method in [SolveMethod::Jacobi, SolveMethod::GaussSeidel, SolveMethod::GaussJordan] {
        let d = path_weights(&g, s, 0, method)?;
        let row: Vec<String> = d.entries().iter().map(|&x| s.format_scalar(x)).collect();
        println!("{:>12}: {}", method.name(), row.join(" "));
    }

    let a = graph_to_matrix(&g, s)?;
    println!("\nall-pairs closure A*:\n{}", io::write_matrix(&closure_star(&a, ClosureMethod::GaussJordan)?));

    let bad = WeightedGraph::new(
        3,
        vec![
            (0, 1, Scalar::Finite(1.0)),
            (1, 2, Scalar::Finite(-3.0)),
            (2, 1, Scalar::Finite(1.0)),
        ],
    )?;
    match path_weights(&bad, s, 0, SolveMethod::Jacobi) {
        Err(Error::NonStable) => println!("cycle 1 → 2 → 1 weighs -2: no shortest paths"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
