pub mod bootstrap;
mod braid;
pub mod engine;
pub mod rules;
pub mod tables;

pub use bootstrap::{Enumerator, PassStats};
pub use braid::braid_neighbors;
pub use engine::{
    apply_special_case, cache_root_from_env, load_rules, reduce, reduce_word, validate_rule, Algebra,
    ReduceLimits, CACHE_ENV,
};
pub use rules::{parse_element, parse_rules, Exponent, RewriteRule, RuleKind, RuleSet, VarRange};
pub use tables::{OpLetter, OperatorTables, Side};
