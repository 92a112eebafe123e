//! Untyped and typed lambda calculi, SKI combinators and the syntactic
//! cartesian closed category of a typed theory.

mod lambek;
mod parse;
mod ski;
mod typed;
mod untyped;

pub use lambek::{
    closed_to_kernel, kernel_to_typed, lambda_to_ccc, typed_to_kernel, LambekCategory, LambekMor,
};
pub use parse::{parse_typed, parse_typed_file, parse_untyped, parse_untyped_file, TypedFile};
pub use ski::{ski_eliminate, ski_eval, ski_step, SkiTerm};
pub use typed::{
    beta_normal, equiv_typed, normalize_typed, substitute_typed, typecheck, LambdaTheory,
    TypedTerm, MAX_TYPED_SIZE,
};
pub use untyped::{
    alpha_canonical, alpha_eq, church_decode, church_decode_normal, church_encode,
    normalize_untyped, step, substitute, times, Term, MAX_TERM_SIZE,
};

use alloc::string::String;
use thiserror::Error;

use crate::kernel::{KernelError, Mode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equiv {
    Equal,
    NotEqual,
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("no normal form within {steps} steps; last term: {last}")]
    Fuel { steps: usize, last: String },
    #[error("term grew to {0} nodes, past the size limit")]
    TooLarge(usize),
    #[error("not a Church numeral: {0}")]
    NotNumeral(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("unknown basic term `{0}`")]
    UnknownBasic(String),
    #[error("`{name}` has type {found} where {expected} is required")]
    VarType {
        name: String,
        expected: String,
        found: String,
    },
    #[error("argument of type {found} given to a function expecting {expected}")]
    AppMismatch { expected: String, found: String },
    #[error("applying a term of non-function type {0}")]
    NotFunction(String),
    #[error("projecting from a term of non-product type {0}")]
    NotProduct(String),
    #[error("terms have different types: {lhs} versus {rhs}")]
    TypeMismatch { lhs: String, rhs: String },
    #[error("free variable `{0}` outside the allowed set")]
    FreeVariable(String),
    #[error("basic term `{0}` has no generator `1 -> T` in the signature")]
    UnmappedBasic(String),
    #[error("typed terms compile only in cartesian-closed mode, not {0}")]
    Mode(Mode),
    #[error("cannot read back {0}")]
    Unsupported(String),
}
