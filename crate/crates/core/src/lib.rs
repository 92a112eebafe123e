//! Free monoidal, braided, symmetric, closed and compact categories as executable terms.
//!
//! The crate is `no_std` with `alloc`. File formats, the command line and
//! diagram rendering live in the `rosetta-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod kernel;
pub mod lambda;
pub mod lintype;
pub mod mill;
pub mod models;
pub mod rewrite;
