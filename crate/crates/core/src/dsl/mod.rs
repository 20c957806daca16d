//! A small language for binomial-sum identities.
//!
//! Identities are written as `lhs == rhs`, for instance
//! `sum(i+j=n) C(2*i-l,i)*C(2*j+l,j) == 4^n`. They can be checked at one
//! assignment ([`verify_numeric`]) or proved for every value of one free
//! symbol ([`verify_poly`]): both sides are polynomials in that symbol of
//! degree at most `d` (see [`degree_bound`]), so agreement at the `d + 1`
//! points `0, 1, .., d` forces agreement everywhere.

mod ast;
mod eval;
mod parse;
mod verify;

use thiserror::Error;

pub use ast::{Expr, Identity};
pub use eval::{degree_bound, env_of, eval_expr, expand_poly, Env};
pub use parse::{parse_expr, parse_identity, parse_identity_file};
pub use verify::{verify_numeric, verify_poly, Counterexample, Mode, Status, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },

    #[error("duplicate binder '{name}' at line {line}, column {col}")]
    DuplicateBinder { name: String, line: usize, col: usize },

    #[error("unbound variable '{0}'")]
    Unbound(String),

    #[error("{what} must be an integer, got {value}")]
    NotInteger { what: String, value: String },

    #[error("{what} depends on the free symbol '{symbol}'")]
    DependsOnSymbol { what: String, symbol: String },

    #[error("free symbol '{0}' must not be assigned")]
    SymbolAssigned(String),

    #[error("variable '{0}' is neither assigned nor the free symbol")]
    Unassigned(String),
}

impl DslError {
    /// Re-anchors a position-carrying error to `line` of a multi-line source.
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            DslError::Syntax { col, message, .. } => DslError::Syntax { line, col, message },
            DslError::DuplicateBinder { name, col, .. } => DslError::DuplicateBinder { name, line, col },
            other => other,
        }
    }
}
