//! Hecke algebras of the rank-two exceptional groups G4 to G8: normal forms,
//! multiplication tables, Gram matrices of the candidate trace and the checks
//! built on them.

pub mod algebra;
mod error;
pub mod gram;
pub mod rewrite;
pub mod verify;

pub use error::{Error, Result};
