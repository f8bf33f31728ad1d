//! Exact computations with central elements of the universal enveloping
//! algebra of so_n and their action on Gelfand-Tsetlin bases.

pub mod arith;
mod cache;
pub mod center;
pub mod cli;
pub mod error;
pub mod gt;
pub mod hc;
pub mod report;
pub mod uea;

pub use error::{Error, Result};
