//! ν-deformed exotic-particle constructions on truncated Fock spaces.
//!
//! A single mode carries the C_λ-extended ladder pair together with the
//! deformation operators `ξ = e^{iνπK}`, `e^{±iπK}` and a position/momentum
//! pair. Two modes live on the tensor product. Relation sets come from
//! shipped presets or from user presentations.

mod mode;
mod model;
mod params;
mod presets;
mod sweep;
mod taylor;
mod two_mode;

pub use mode::{
    build_mode, exp_pi_klein, momentum_singular_levels, position_momentum_action, xi_operator,
    InvertedPair, ModeRep, Momentum, MomentumAction, MomentumChoice,
};
pub use model::{
    evaluate, instantiate, is_two_mode, CheckSettings, Evaluation, Instance, ModelConfig,
    RelationSource,
};
pub use params::{chi, default_f, default_f_branch, make_params, DeformationParams, FChoice, Sign};
pub use presets::{
    assign_parameters, case1_relation_set, case2_relation_set, cross_mode_labels,
    limit_relation_set, parameter_value, specialize_brackets, truncation_orders, LimitFamily,
    Preset, DEFORMED_CLAMBDA_SHIPPED_LAMBDA, GDOA_SHIPPED_LAMBDA,
};
pub use sweep::{family_sweep, nu_grid, nu_sweep, SweepFamily};
pub use taylor::{
    check_taylor_consistency, ladder_pair_blocks, remainder_bound, taylor_blocks, xi_polynomial,
    TaylorBlocks,
};
pub use two_mode::{assemble_two_mode, TwoModeRep};

use crate::dsl::{BindError, EvalError, ParseError};
use crate::fock::FockError;

#[derive(Debug, thiserror::Error)]
pub enum ExoticError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Bind(#[from] BindError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("momentum undefined: every level is singular for lambda = {lambda}")]
    MomentumUndefined { lambda: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

impl ExoticError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        ExoticError::InvalidArgument(msg.into())
    }
}
