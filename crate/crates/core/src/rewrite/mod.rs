//! Strictification, normal forms and the equality ladder.

mod axioms;
mod decide;
pub mod graph;
pub mod planar;
pub mod strict;

pub use axioms::{coherence_axioms, Axiom};
pub use decide::{
    beta_eta_normalize, eq_decide, symmetric_normal_form, EqConfig, EqMethod, EqVerdict,
    Normalized, Strategy, Witness,
};
pub use strict::{strictify, BlockOp, Layer, StrictTerm};

use alloc::string::String;
use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{0}")]
    Shape(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("sides have different types: {lhs} versus {rhs}")]
    TypeMismatch { lhs: String, rhs: String },
    #[error("not in the symmetric fragment: {0}")]
    NotSymmetricFragment(String),
    #[error("no strategy configured: {0}")]
    NoStrategy(String),
}
