use std::fmt;

use crate::fock::FockError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    InvalidLiteral(String),
    Syntax {
        expected: Vec<String>,
        found: String,
    },
    DuplicateIdentifier(String),
    UnknownSymbol(String),
    NestingTooDeep(usize),
}

/// A parse diagnostic with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        Self { line, column, kind }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::InvalidLiteral(t) => write!(f, "invalid numeric literal `{t}`"),
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected one of {}, found {found}", expected.join(", "))
            }
            ParseErrorKind::DuplicateIdentifier(n) => write!(f, "duplicate identifier `{n}`"),
            ParseErrorKind::UnknownSymbol(n) => write!(f, "unknown symbol `{n}`"),
            ParseErrorKind::NestingTooDeep(d) => write!(f, "expression nesting exceeds {d} levels"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum BindError {
    #[error("generator `{0}` has no binding")]
    MissingBinding(String),
    #[error("parameter `{0}` has neither a value nor a default")]
    MissingParameter(String),
    #[error("binding for `{name}` lives on a different basis than `{reference}`")]
    BasisMismatch { name: String, reference: String },
    #[error("presentation declares no generators to fix a basis")]
    NoGenerators,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("relation `{relation}`: evaluation produced a non-finite value")]
    NonFinite { relation: String },
    #[error("relation `{relation}`: unknown symbol `{symbol}`")]
    Unbound { relation: String, symbol: String },
    #[error("relation `{relation}`: {source}")]
    Operator {
        relation: String,
        #[source]
        source: FockError,
    },
    #[error("invalid mask: {0}")]
    InvalidMask(String),
    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),
}
