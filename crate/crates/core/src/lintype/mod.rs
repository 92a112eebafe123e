//! Linear type theories: combinators, variable-linear terms, the
//! combinator/variable-part decomposition, equivalence of terms and
//! combinators, and translations to and from closed symmetric signatures.

mod equiv;
mod parse;
mod syntax;
mod theory;

pub use equiv::{
    lin_equiv_combinators, lin_equiv_combinators_at, lin_equiv_terms, lin_equiv_terms_with,
    LinEquiv,
};
pub use parse::{parse_combinator, parse_lin_term, parse_lin_theory};
pub use syntax::{
    basic_term, cpvp, lin_normalize, lin_typecheck, rewrite_steps, Combinator, LinTerm, LinType,
    BASIC_COMBINATORS,
};
pub use theory::{
    combinator_to_kernel, kernel_to_combinator, kernel_to_theory, theory_to_kernel, LinTheory,
    IDENTIFICATIONS,
};

use alloc::string::String;
use thiserror::Error;

use crate::kernel::{KernelError, Mode};
use crate::rewrite::RewriteError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("variable `{0}` occurs more than once")]
    Reused(String),
    #[error("{comb} expects an argument of type {expected}, got {found}")]
    Argument {
        comb: String,
        expected: String,
        found: String,
    },
    #[error("composition mismatch: {left} does not match {right}")]
    Compose { left: String, right: String },
    #[error("combinators have different types: {lhs} versus {rhs}")]
    TypeMismatch { lhs: String, rhs: String },
    #[error("{0}")]
    Shape(String),
    #[error("{0}")]
    Infer(String),
    #[error("function symbol `{0}` is used at two different types")]
    Clash(String),
    #[error("linear type theories correspond to closed-symmetric signatures, not {0}")]
    Mode(Mode),
    #[error("no combinator for {0}")]
    Unsupported(String),
}
