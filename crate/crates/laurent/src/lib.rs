//! Exact sparse multivariate Laurent polynomials over the integers.
//!
//! Parameters are the eight symbols `a..h`. Any of them may carry a negative
//! exponent here; which ones are invertible is decided by the caller.

mod json;
mod monomial;
mod poly;
mod text;

pub use monomial::{var_index, Monomial, VarSet, MAX_VARS, VAR_NAMES};
pub use poly::{Assignment, LaurentPoly};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("no value assigned to parameter {0}")]
    MissingAssignment(char),
    #[error("parameter {0} appears inverted but is assigned zero")]
    ZeroInverted(char),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not in canonical form: {0:?}")]
    NotCanonical(String),
}
