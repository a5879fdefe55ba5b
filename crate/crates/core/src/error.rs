use heckekit_laurent::LaurentError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("word parse error at {pos}: {msg}")]
    WordParse { pos: usize, msg: String },
    #[error("rule file line {line}, column {col}: {msg}")]
    RuleParse { line: usize, col: usize, msg: String },
    #[error("rule {rule} failed validation: {msg}")]
    RuleValidation { rule: String, msg: String },
    #[error("reduction did not terminate; stuck on {term} ({pending} terms pending)")]
    NonTerminating {
        term: String,
        pending: usize,
        snapshot: Vec<String>,
    },
    #[error("coefficient {coef} of {word} inverts a non-unit parameter")]
    InvalidCoefficient { coef: String, word: String },
    #[error("row {row} needs row {needs}, which is not filled yet")]
    RecipeDependency { row: usize, needs: usize },
    #[error("table construction failed: {0}")]
    Bootstrap(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
