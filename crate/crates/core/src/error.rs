use thiserror::Error;

use crate::semiring::SemiringId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Mathematical failures (a divergent cycle, a non-commuting family, ...) and
/// input failures (bad shapes, unparsable files) share one enum; [`Error::is_math`]
/// tells them apart, which is what the command-line front end uses to pick an
/// exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroNotInvertible,
    #[error("{0} is not a semifield")]
    NotASemifield(SemiringId),
    #[error("{semiring}: no {n}-th root of {value}")]
    NotAlgebraicallyClosed {
        semiring: SemiringId,
        value: String,
        n: u32,
    },
    #[error("infimum of an empty set")]
    EmptySet,
    #[error("invalid scalar {value} for {semiring}")]
    InvalidScalar { semiring: SemiringId, value: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("semiring mismatch: {0} vs {1}")]
    SemiringMismatch(SemiringId, SemiringId),
    #[error("closure does not stabilize (improving cycle)")]
    NonStable,
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("no finite scalar multiple dominates the target vector")]
    NotDominated,
    #[error("matrix is not invertible (not monomial)")]
    NotInvertible,
    #[error("precedence graph has no cycle")]
    NoCycle,
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("candidate search exhausted without a joint eigenvector")]
    ExhaustedCandidates,
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("step mismatch: {0} vs {1}")]
    StepMismatch(f64, f64),
    #[error("function has no finite value")]
    AllBottom,
    #[error("functions live on different groups")]
    GroupMismatch,
    #[error("unstable parameters: {0}")]
    UnstableParameters(String),
    #[error("input must be strictly positive (found {0} at index {1})")]
    NonPositiveInput(f64, usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// The bare variant name, e.g. `NonStable`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroNotInvertible => "ZeroNotInvertible",
            Error::NotASemifield(_) => "NotASemifield",
            Error::NotAlgebraicallyClosed { .. } => "NotAlgebraicallyClosed",
            Error::EmptySet => "EmptySet",
            Error::InvalidScalar { .. } => "InvalidScalar",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::SemiringMismatch(..) => "SemiringMismatch",
            Error::NonStable => "NonStable",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotDominated => "NotDominated",
            Error::NotInvertible => "NotInvertible",
            Error::NoCycle => "NoCycle",
            Error::NotIrreducible => "NotIrreducible",
            Error::NotCommuting => "NotCommuting",
            Error::NotAGroup(_) => "NotAGroup",
            Error::NotARepresentation(_) => "NotARepresentation",
            Error::ZeroVector => "ZeroVector",
            Error::NotNilpotent => "NotNilpotent",
            Error::ExhaustedCandidates => "ExhaustedCandidates",
            Error::GridMismatch(_) => "GridMismatch",
            Error::StepMismatch(..) => "StepMismatch",
            Error::AllBottom => "AllBottom",
            Error::GroupMismatch => "GroupMismatch",
            Error::UnstableParameters(_) => "UnstableParameters",
            Error::NonPositiveInput(..) => "NonPositiveInput",
            Error::InternalInvariant(_) => "InternalInvariant",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }

    /// True for failures of the mathematics rather than of the input.
    pub fn is_math(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_)
                | Error::Io(_)
                | Error::InvalidScalar { .. }
                | Error::ShapeMismatch(_)
                | Error::SemiringMismatch(..)
                | Error::IndexOutOfRange { .. }
                | Error::GridMismatch(_)
                | Error::StepMismatch(..)
                | Error::GroupMismatch
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
