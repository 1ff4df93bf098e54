//! Idempotent (tropical) mathematics.
//!
//! - [`semiring`]: the built-in idempotent semirings, their order, and the
//!   dequantized addition `⊕_h`.
//! - [`linalg`]: matrices and vectors over a semiring, closures `A*`, least
//!   solutions of `X = H ⊙ X ⊕ F`, residuation, monomial (invertible) matrices.
//! - [`spectral`]: max-plus eigenvalues and eigenvectors, joint eigenvectors of
//!   commuting invertible matrices.
//! - [`representations`]: finite groups, monomial representations, orbit sums and
//!   joint eigenvectors.
//! - [`transforms`]: idempotent integrals, sup-convolution, the Legendre transform.
//! - [`dequantization`]: the heat equation, its logarithmic transform, and the
//!   Hamilton–Jacobi limit.
//! - [`io`] and [`cli`]: plain-text file formats and the `idem` front end.

pub mod cli;
pub mod dequantization;
pub mod error;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod representations;
pub mod semiring;
pub mod spectral;
pub mod transforms;

pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use semiring::{Scalar, SemiringId};
