//! Types, modes, signatures and morphism terms of the free categories.

mod infer;
mod iso;
mod parse;
mod signature;
mod term;
mod types;

pub use infer::{check_type, infer_dom_cod, validate_signature, Violation};
pub(crate) use iso::merge;
pub use iso::{from_rn, inverse, permutation_term, reassoc, rn, to_rn};
pub(crate) use parse::{
    lex, parse_type_in, type_atom_checked, type_checked, Cursor, Tok, TypeScope,
};
pub use parse::{parse_mor, parse_signature, parse_type, parse_type_free};
pub use signature::{Generator, Signature};
pub use term::{MorDisplay, MorTerm};
pub use types::{mode_allows, Caps, Ctor, Mode, TypeDisplay, TypeExpr};

use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("`{ctor}` is not allowed in {mode} mode")]
    ModeViolation { ctor: &'static str, mode: Mode },
    #[error("composition mismatch: {left} does not match {right}")]
    Mismatch { left: String, right: String },
    #[error("{0}")]
    Shape(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
}
