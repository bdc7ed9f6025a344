//! A small text language for algebra presentations, plus binding to
//! matrices and residual checks.

mod ast;
mod error;
mod eval;
mod fold;
mod lexer;
mod parser;
mod render;

pub use ast::{AlgebraPresentation, Expr, Relation, Scalar};
pub use error::{BindError, EvalError, ParseError, ParseErrorKind};
pub use eval::{
    bind_generators, bind_representation, check_relations, BoundAlgebra, BoundGenerator,
    CheckOptions, MaskPolicy, RelationRecord, RelationStatus, ResidualReport, DEFAULT_TOLERANCE,
};
pub use fold::{fold_expr, fold_relation, FoldOptions};
pub use lexer::is_keyword;
pub use parser::{parse_presentation, MAX_NESTING};
pub use render::{render_complex, render_expr, render_presentation, render_scalar};
