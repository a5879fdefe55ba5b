//! Multiplication tables, the Gram matrix of the candidate trace and its
//! determinant.

mod det;
mod matrix;
mod mult;
pub mod recipe;

pub use det::{
    det_report_primes, det_report_symbolic, det_specialized, det_symbolic, prime_assignments, to_assignment,
    DetReport,
};
pub use matrix::{gram_direct, gram_inductive, recipe_dependencies, GramMatrix};
pub use mult::{center_power_combo, mult_table, mult_table_cached, spot_check, MultTable, MultTables};
pub use recipe::{ChainTerm, RowPlan, RowRecipe};
