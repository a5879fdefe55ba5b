//! Left multiplication tables of the two algebra generators and the
//! coordinates of the top power of the centre.

use std::path::Path;

use heckekit_laurent::LaurentPoly;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{BasisCombo, CenterStrategy, Element, GenId, GroupName, Word};
use crate::rewrite::tables::combine;
use crate::rewrite::{reduce, reduce_word, Algebra, ReduceLimits, RuleSet};
use crate::{Error, Result};

/// `g·b_j = Σ_l rows[j]_l·b_l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultTable {
    pub group: GroupName,
    pub gen: char,
    pub rows: Vec<BasisCombo>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    digest: String,
    table: MultTable,
}

fn with_row(e: Error, j: usize) -> Error {
    match e {
        Error::NonTerminating {
            term,
            pending,
            snapshot,
        } => Error::NonTerminating {
            term: format!("{term} (row b{})", j + 1),
            pending,
            snapshot,
        },
        e => e,
    }
}

/// The table of `g`, computed row by row with [`reduce`].
pub fn mult_table(alg: &Algebra, g: GenId, rules: &RuleSet, limits: &ReduceLimits) -> Result<MultTable> {
    let spec = &alg.spec;
    let gw = Word::gen_pow(g, 1);
    let rows = (0..spec.order())
        .into_par_iter()
        .map(|j| reduce_word(alg, rules, &gw.mul(&spec.basis[j]), limits).map_err(|e| with_row(e, j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultTable {
        group: spec.name,
        gen: spec.gen_name(g),
        rows,
    })
}

/// Like [`mult_table`], reading and writing `cache` keyed by group,
/// generator and rules digest. Returns the table and whether it was a hit.
pub fn mult_table_cached(
    alg: &Algebra,
    g: GenId,
    rules: &RuleSet,
    limits: &ReduceLimits,
    cache: Option<&Path>,
) -> Result<(MultTable, bool)> {
    let spec = &alg.spec;
    let digest = rules.digest(spec);
    let Some(dir) = cache else {
        return Ok((mult_table(alg, g, rules, limits)?, false));
    };
    let path = dir.join(format!("mult-{}-{}-{}.json", spec.name, spec.gen_name(g), &digest[..16]));
    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(f) = serde_json::from_slice::<TableFile>(&bytes) {
            if f.digest == digest && f.table.rows.len() == spec.order() {
                return Ok((f.table, true));
            }
        }
    }
    let table = mult_table(alg, g, rules, limits)?;
    std::fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
    let tmp = path.with_extension("tmp");
    std::fs::write(
        &tmp,
        serde_json::to_vec(&TableFile {
            digest,
            table: table.clone(),
        })?,
    )?;
    std::fs::rename(&tmp, &path)?;
    Ok((table, false))
}

/// Compares `count` random rows with `g·b_j` computed by right
/// multiplication of `g` by the word of `b_j`. Returns mismatching rows.
pub fn spot_check(alg: &Algebra, table: &MultTable, count: usize, seed: u64) -> Result<Vec<usize>> {
    let spec = &alg.spec;
    let g = spec.gen_id(table.gen).expect("table generator");
    let start = alg
        .tables
        .right_mul(&BasisCombo::unit(0), &Word::gen_pow(g, 1))?;
    let n = spec.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<usize> = sample(&mut rng, n, count.min(n)).into_vec();
    rows.sort_unstable();
    let mut bad = Vec::new();
    for j in rows {
        let v = alg.tables.right_mul(&start, &spec.basis[j])?;
        if v != table.rows[j] {
            bad.push(j);
        }
    }
    Ok(bad)
}

/// The tables of the two generators the Gram recurrences use.
#[derive(Clone, Debug)]
pub struct MultTables {
    pub tables: Vec<(GenId, MultTable)>,
}

impl MultTables {
    pub fn compute(alg: &Algebra, rules: &RuleSet, limits: &ReduceLimits, cache: Option<&Path>) -> Result<Self> {
        let mut tables = Vec::new();
        for g in alg.spec.sage_generators {
            tables.push((g, mult_table_cached(alg, g, rules, limits, cache)?.0));
        }
        Ok(Self { tables })
    }

    pub fn get(&self, g: GenId) -> &MultTable {
        &self
            .tables
            .iter()
            .find(|(h, _)| *h == g)
            .expect("table of a recurrence generator")
            .1
    }

    pub fn size(&self) -> usize {
        self.tables[0].1.rows.len()
    }

    /// `g·v`.
    pub fn apply(&self, g: GenId, v: &BasisCombo) -> BasisCombo {
        let t = self.get(g);
        combine(self.size(), v.iter().map(|(l, x)| (&t.rows[l], x)))
    }

    /// `w·v` for a positive word given as letters.
    pub fn apply_word(&self, word: &[GenId], v: &BasisCombo) -> BasisCombo {
        let mut cur = v.clone();
        for &g in word.iter().rev() {
            cur = self.apply(g, &cur);
        }
        cur
    }
}

/// Coordinates `μ` of `z^{|Z|}` by the group's strategy.
pub fn center_power_combo(
    alg: &Algebra,
    tables: &MultTables,
    rules: &RuleSet,
    limits: &ReduceLimits,
) -> Result<BasisCombo> {
    let spec = &alg.spec;
    match &spec.center_strategy {
        CenterStrategy::TableRow { gen, row } => Ok(tables.get(*gen).rows[*row].clone()),
        CenterStrategy::SevenFormula => {
            let [t, u] = spec.sage_generators;
            let a = spec.param('a');
            let b = spec.param('b');
            let tu = tables.apply(u, &tables.apply(t, &BasisCombo::unit(125)));
            Ok(tu.scale(&b).add(&BasisCombo::monomial(137, a)))
        }
        CenterStrategy::BasisProduct(i, j) => {
            let e = Element::word(spec.basis[*i].mul(&spec.basis[*j]));
            reduce(alg, rules, &e, limits)
        }
        CenterStrategy::Direct => reduce_word(alg, rules, &Word::z_pow(spec.center_order as i32), limits),
    }
}

/// `Σ_l v_l·w_l`.
pub(crate) fn dot(v: &BasisCombo, w: &[LaurentPoly]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (l, x) in v.iter() {
        if !w[l].is_zero() {
            acc += &(x * &w[l]);
        }
    }
    acc
}
