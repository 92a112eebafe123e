//! Random generators and fixtures shared by the integration tests and the
//! acceptance run.
#![allow(dead_code)]

pub mod lam;
pub mod lin;
pub mod mill;
pub mod mor;

#[allow(unused_imports)]
pub use lin::*;
