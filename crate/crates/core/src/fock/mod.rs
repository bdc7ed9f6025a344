//! Truncated Fock spaces and the operator-matrix carrier.

mod basis;
mod clambda;
mod matrix;

pub use basis::{make_fock_space, FockBasis};
pub(crate) use clambda::root_of_unity;
pub use clambda::{
    klein_operator, ladder_operators, number_operator, projector, projectors,
    structure_function_operator, StructureFunctionSpec, PROJECTOR_CROSSCHECK_TOL,
};
pub use matrix::{masked_residual, q_bracket, MaskedResidual, OperatorMatrix};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum FockError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operators live on different bases ({left} vs {right})")]
    BasisMismatch { left: String, right: String },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("representation failure: structure function F({level}) = {value} is negative")]
    RepresentationFailure { level: usize, value: f64 },
    #[error("projector P_{mu} disagrees with the congruence indicator at level {level} by {deviation:e}")]
    ProjectorMismatch {
        mu: usize,
        level: usize,
        deviation: f64,
    },
}

impl FockError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        FockError::InvalidArgument(msg.into())
    }
}
