//! The Gram matrix `A = (τ(b_i b_j))`.

use heckekit_laurent::LaurentPoly;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mult::{dot, MultTables};
use super::recipe::{ChainTerm, RowRecipe};
use crate::algebra::{BasisCombo, Element, GroupName, GroupSpec};
use crate::rewrite::{reduce, Algebra, ReduceLimits, RuleSet};
use crate::{Error, Result};

/// A square matrix of Laurent polynomials; missing entries are `None`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub group: GroupName,
    pub entries: Vec<Vec<Option<LaurentPoly>>>,
    /// How each row was filled.
    pub provenance: Vec<Option<String>>,
}

impl GramMatrix {
    pub fn empty(group: GroupName, n: usize) -> Self {
        Self {
            group,
            entries: vec![vec![None; n]; n],
            provenance: vec![None; n],
        }
    }

    pub fn from_rows(group: GroupName, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let n = rows.len();
        Self {
            group,
            entries: rows
                .into_iter()
                .map(|r| r.into_iter().map(Some).collect())
                .collect(),
            provenance: vec![None; n],
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&LaurentPoly> {
        self.entries[i][j].as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(Option::is_some))
    }

    /// The entries of a complete matrix.
    pub fn rows(&self) -> Result<Vec<Vec<LaurentPoly>>> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        x.clone()
                            .ok_or_else(|| Error::Cache(format!("entry ({}, {}) is missing", i + 1, j + 1)))
                    })
                    .collect()
            })
            .collect()
    }

    /// JSON array of rows of canonical entry text, `null` where missing.
    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<Option<String>>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.as_ref().map(LaurentPoly::to_string)).collect())
            .collect();
        serde_json::to_string(&rows).expect("strings serialize")
    }

    /// Inverse of [`GramMatrix::to_json`].
    pub fn from_json(group: GroupName, text: &str) -> Result<Self> {
        let rows: Vec<Vec<Option<String>>> = serde_json::from_str(text)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Cache("matrix is not square".into()));
        }
        let entries = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| x.map(|s| s.parse::<LaurentPoly>()).transpose())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            group,
            entries,
            provenance: vec![None; n],
        })
    }

    /// Filled positions.
    pub fn filled(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, r) in self.entries.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if x.is_some() {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `Σ coef·τ(b_src·word·v)` for the vector `v`.
fn eval_chain(terms: &[ChainTerm], v: &BasisCombo, rows: &[Option<Vec<LaurentPoly>>], t: &MultTables) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for term in terms {
        let w = t.apply_word(&term.word, v);
        let r = rows[term.src].as_ref().expect("dependency filled");
        acc += &(&term.coef * &dot(&w, r));
    }
    acc
}

/// Rows a recipe reads.
pub fn recipe_dependencies(spec: &GroupSpec, recipe: &RowRecipe) -> Vec<usize> {
    let n = spec.order();
    let block = spec.block.0;
    match recipe {
        RowRecipe::IdentityRow => vec![],
        RowRecipe::GeneratorStep { src, .. } | RowRecipe::WordStep { src, .. } => vec![*src],
        RowRecipe::LinearGeneratorStep { terms, .. } => terms.iter().map(|(_, s)| *s).collect(),
        RowRecipe::ZeroThenCenter { k } => (0..(block * k).min(n)).collect(),
        RowRecipe::G7Row10 { k } => {
            if *k == 0 {
                vec![0]
            } else {
                vec![block * k + 3]
            }
        }
        RowRecipe::G7CenterRow { k } => {
            let mut d: Vec<usize> = (0..block * k).collect();
            d.extend([0, 9, 10, 11]);
            d.sort_unstable();
            d.dedup();
            d
        }
    }
}

fn fill_row(
    spec: &GroupSpec,
    recipe: &RowRecipe,
    rows: &[Option<Vec<LaurentPoly>>],
    t: &MultTables,
    mu: &BasisCombo,
) -> Vec<LaurentPoly> {
    let n = spec.order();
    let block = spec.block.0;
    let unit = BasisCombo::unit;
    let chain_row = |terms: &[ChainTerm]| -> Vec<LaurentPoly> {
        (0..n).map(|j| eval_chain(terms, &unit(j), rows, t)).collect()
    };
    let row = |i: usize| rows[i].as_ref().expect("dependency filled");
    match recipe {
        RowRecipe::IdentityRow => (0..n)
            .map(|j| if j == 0 { LaurentPoly::one() } else { LaurentPoly::zero() })
            .collect(),
        RowRecipe::GeneratorStep { src, gen } => chain_row(&[ChainTerm::new(LaurentPoly::one(), *src, vec![*gen])]),
        RowRecipe::WordStep { src, word } => chain_row(&[ChainTerm::new(LaurentPoly::one(), *src, word.clone())]),
        RowRecipe::LinearGeneratorStep { terms, gen } => {
            let chain: Vec<ChainTerm> = terms
                .iter()
                .map(|(c, s)| ChainTerm::new(c.clone(), *s, vec![*gen]))
                .collect();
            chain_row(&chain)
        }
        RowRecipe::ZeroThenCenter { k } => {
            let cut = n - block * k;
            (0..n)
                .map(|j| {
                    if j < cut {
                        LaurentPoly::zero()
                    } else {
                        dot(mu, row(j - cut))
                    }
                })
                .collect()
        }
        RowRecipe::G7Row10 { k } => {
            let [tg, ug] = spec.sage_generators;
            if *k == 0 {
                chain_row(&[ChainTerm::new(LaurentPoly::one(), 0, vec![tg, ug, ug])])
            } else {
                let src = block * k + 3;
                let (f, g, h) = (spec.param('f'), spec.param('g'), spec.param('h'));
                let hinv = h.unit_inverse(spec.unit_params).expect("unit h");
                chain_row(&[
                    ChainTerm::new(hinv.clone(), src, vec![ug, ug]),
                    ChainTerm::new(-(&f * &hinv), src, vec![ug]),
                    ChainTerm::new(-(&g * &hinv), src, vec![]),
                ])
            }
        }
        RowRecipe::G7CenterRow { k } => {
            let [tg, ug] = spec.sage_generators;
            let (f, g, h) = (spec.param('f'), spec.param('g'), spec.param('h'));
            let hinv = h.unit_inverse(spec.unit_params).expect("unit h");
            let cut = n - block * k;
            let special = (cut + 9)..(cut + 12);
            (0..n)
                .map(|j| {
                    if j < cut {
                        LaurentPoly::zero()
                    } else if special.contains(&j) {
                        let r = j - special.start;
                        let mut tu = vec![tg, ug];
                        tu.extend(std::iter::repeat(tg).take(r));
                        let chain = [
                            ChainTerm::new(hinv.clone(), 9 + r, vec![]),
                            ChainTerm::new(-(&f * &hinv), 0, tu),
                            ChainTerm::new(-(&g * &hinv), 0, vec![tg; r + 1]),
                        ];
                        eval_chain(&chain, mu, rows, t)
                    } else {
                        dot(mu, row(j - cut))
                    }
                })
                .collect()
        }
    }
}

/// Fills the matrix from the group's row recipes. Rows whose sources are
/// filled are computed together in waves.
pub fn gram_inductive(spec: &GroupSpec, tables: &MultTables, mu: &BasisCombo) -> Result<GramMatrix> {
    let n = spec.order();
    let plans = &spec.row_recipes;
    let mut rows: Vec<Option<Vec<LaurentPoly>>> = vec![None; n];
    let mut provenance: Vec<Option<String>> = vec![None; n];
    let deps: Vec<Vec<usize>> = plans.iter().map(|p| recipe_dependencies(spec, &p.recipe)).collect();
    let mut pending: Vec<usize> = (0..plans.len()).collect();
    while !pending.is_empty() {
        let (ready, wait): (Vec<usize>, Vec<usize>) = pending
            .iter()
            .partition(|&&p| deps[p].iter().all(|&d| rows[d].is_some() && d != plans[p].row));
        if ready.is_empty() {
            let p = wait[0];
            let needs = *deps[p].iter().find(|&&d| rows[d].is_none()).unwrap_or(&plans[p].row);
            return Err(Error::RecipeDependency {
                row: plans[p].row + 1,
                needs: needs + 1,
            });
        }
        let filled: Vec<(usize, Vec<LaurentPoly>)> = ready
            .par_iter()
            .map(|&p| (p, fill_row(spec, &plans[p].recipe, &rows, tables, mu)))
            .collect();
        for (p, r) in filled {
            let i = plans[p].row;
            rows[i] = Some(r);
            provenance[i] = Some(plans[p].recipe.label());
        }
        pending = wait;
    }
    if let Some(i) = rows.iter().position(Option::is_none) {
        return Err(Error::RecipeDependency { row: i + 1, needs: i + 1 });
    }
    Ok(GramMatrix {
        group: spec.name,
        entries: rows
            .into_iter()
            .map(|r| r.unwrap().into_iter().map(Some).collect())
            .collect(),
        provenance,
    })
}

/// `τ(b_i b_j)` by reducing each product; all pairs when `pairs` is `None`.
pub fn gram_direct(
    alg: &Algebra,
    rules: &RuleSet,
    pairs: Option<&[(usize, usize)]>,
    limits: &ReduceLimits,
) -> Result<GramMatrix> {
    let spec = &alg.spec;
    let n = spec.order();
    let all: Vec<(usize, usize)>;
    let pairs = match pairs {
        Some(p) => p,
        None => {
            all = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
            &all
        }
    };
    let values = pairs
        .par_iter()
        .map(|&(i, j)| {
            let e = Element::word(spec.basis[i].mul(&spec.basis[j]));
            reduce(alg, rules, &e, limits).map(|v| v.identity_coeff())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = GramMatrix::empty(spec.name, n);
    for (&(i, j), v) in pairs.iter().zip(values) {
        m.entries[i][j] = Some(v);
        m.provenance[i] = Some("direct".into());
    }
    Ok(m)
}
