use heckekit_laurent::LaurentPoly;
use serde::{Deserialize, Serialize};

use crate::algebra::GenId;

/// How one row of the Gram matrix is obtained from rows filled before it.
///
/// Row and column numbers are zero-based (`b_{i+1}` is row `i`). A word
/// `w = g_1 … g_k` inside a recipe stands for `τ(b_src · w · b_j)`, evaluated
/// through the multiplication tables as `Σ_l (w·b_j)_l · A[src][l]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum RowRecipe {
    /// `τ(b_1 b_j) = δ_{1j}`.
    IdentityRow,
    /// `b_i = b_src · g`.
    GeneratorStep { src: usize, gen: GenId },
    /// `b_i = b_src · w` for a positive word `w` in the table generators.
    WordStep { src: usize, word: Vec<GenId> },
    /// `b_i = (Σ c_t b_{src_t}) · g`.
    LinearGeneratorStep { terms: Vec<(LaurentPoly, usize)>, gen: GenId },
    /// `b_i = z^k`, `k ≥ 1`: zero on the columns `j < |G| - block·k`, and
    /// `Σ_l μ_l A[block·k + j - |G|][l]` on the rest.
    ZeroThenCenter { k: usize },
    /// Row `12k + 10` of the seven-parameter group.
    G7Row10 { k: usize },
    /// Row `12k + 1`, `k ≥ 1`, of the seven-parameter group.
    G7CenterRow { k: usize },
}

/// One summand `coef · τ(b_src · word · b_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainTerm {
    pub coef: LaurentPoly,
    pub src: usize,
    pub word: Vec<GenId>,
}

impl ChainTerm {
    pub fn new(coef: LaurentPoly, src: usize, word: Vec<GenId>) -> Self {
        Self { coef, src, word }
    }
}

/// A recipe entry together with the row it fills.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowPlan {
    pub row: usize,
    pub recipe: RowRecipe,
}

impl RowRecipe {
    /// Short label used in row provenance.
    pub fn label(&self) -> String {
        match self {
            RowRecipe::IdentityRow => "identity".into(),
            RowRecipe::GeneratorStep { src, gen } => format!("step(b{}, g{})", src + 1, gen),
            RowRecipe::WordStep { src, word } => format!("word(b{}, {:?})", src + 1, word),
            RowRecipe::LinearGeneratorStep { terms, gen } => {
                let rows: Vec<String> = terms.iter().map(|(_, r)| format!("b{}", r + 1)).collect();
                format!("linear([{}], g{})", rows.join(","), gen)
            }
            RowRecipe::ZeroThenCenter { k } => format!("center(k={k})"),
            RowRecipe::G7Row10 { k } => format!("g7-row10(k={k})"),
            RowRecipe::G7CenterRow { k } => format!("g7-center(k={k})"),
        }
    }
}
