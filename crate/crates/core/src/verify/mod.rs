//! Checks on the trace: symmetry, the extra condition, specialisation to the
//! group algebra, spanning and freeness.

mod replay;

use std::time::Instant;

use heckekit_laurent::{BigRational, LaurentPoly};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use replay::{replays, check_replays, Replay};

use crate::algebra::{BasisCombo, Element, GroupName, GroupSpec, Word};
use crate::gram::{GramMatrix, MultTables};
use crate::rewrite::{reduce, reduce_word, Algebra, ReduceLimits, RuleSet};
use crate::Result;

/// One failed item of a check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub item: String,
    pub expected: String,
    pub actual: String,
}

impl Failure {
    pub fn new(item: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        Self {
            item: item.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: String,
    pub check: String,
    pub pass: bool,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn finish(group: GroupName, check: &str, failures: Vec<Failure>, start: Instant) -> Self {
        Self {
            group: group.to_string(),
            check: check.into(),
            pass: failures.is_empty(),
            failures,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Coefficient of `b_1` in the reduction of `e`.
pub fn tau(alg: &Algebra, rules: &RuleSet, e: &Element, limits: &ReduceLimits) -> Result<LaurentPoly> {
    Ok(reduce(alg, rules, e, limits)?.identity_coeff())
}

/// Entrywise `A = Aᵀ`. Failures name one-based positions `(i, j)`, `i < j`.
pub fn check_symmetry(a: &GramMatrix) -> VerificationReport {
    let start = Instant::now();
    let n = a.size();
    let mut failures = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (a.get(i, j), a.get(j, i));
            if x != y {
                let show = |p: Option<&LaurentPoly>| p.map_or("missing".to_string(), |p| p.pretty());
                failures.push(Failure::new(format!("({}, {})", i + 1, j + 1), show(y), show(x)));
            }
        }
    }
    VerificationReport::finish(a.group, "symmetry", failures, start)
}

/// `τ(b_j) = δ_{1j}` and agreement with the first row of `a`.
pub fn check_tau_row(alg: &Algebra, rules: &RuleSet, a: &GramMatrix, limits: &ReduceLimits) -> Result<VerificationReport> {
    let start = Instant::now();
    let spec = &alg.spec;
    let values = (0..spec.order())
        .into_par_iter()
        .map(|j| reduce_word(alg, rules, &spec.basis[j], limits).map(|v| v.identity_coeff()))
        .collect::<Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    for (j, v) in values.iter().enumerate() {
        let expect = if j == 0 { LaurentPoly::one() } else { LaurentPoly::zero() };
        if *v != expect || a.get(0, j) != Some(v) {
            failures.push(Failure::new(format!("b{}", j + 1), expect.pretty(), v.pretty()));
        }
    }
    Ok(VerificationReport::finish(spec.name, "tau_row", failures, start))
}

/// `τ(z^{|Z|}·b⁻¹) = 0` for every basis element other than `1`.
pub fn check_extra_condition(alg: &Algebra, rules: &RuleSet, limits: &ReduceLimits) -> Result<VerificationReport> {
    let start = Instant::now();
    let spec = &alg.spec;
    let top = Word::z_pow(spec.center_order as i32);
    let values = (1..spec.order())
        .into_par_iter()
        .map(|i| {
            let w = top.mul(&spec.basis[i].inverse());
            reduce_word(alg, rules, &w, limits).map(|v| (i, v.identity_coeff()))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures = values
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| Failure::new(format!("b{}", i + 1), "0", v.pretty()))
        .collect();
    Ok(VerificationReport::finish(spec.name, "extra_condition", failures, start))
}

fn integral(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        i64::try_from(x.to_integer()).ok()
    } else {
        None
    }
}

/// The permutation `σ` with `b_{σ(i)}` the group inverse of `b_i`, found by
/// reducing `b_i⁻¹` and specialising its coordinates to the group point.
pub fn group_inverse_oracle(alg: &Algebra, rules: &RuleSet, limits: &ReduceLimits) -> Result<Vec<Option<usize>>> {
    let spec = &alg.spec;
    (0..spec.order())
        .into_par_iter()
        .map(|i| {
            let v = reduce_word(alg, rules, &spec.basis[i].inverse(), limits)?;
            let mut hit = None;
            for (l, c) in v.iter() {
                let x = c.eval(&spec.group_point)?;
                if x.is_zero() {
                    continue;
                }
                if hit.is_some() || !x.is_one() {
                    return Ok(None);
                }
                hit = Some(l);
            }
            Ok(hit)
        })
        .collect()
}

/// At the group point `A` must be the permutation matrix of the involution
/// `b ↦ b⁻¹` found by the oracle, and `z` must have order `|Z|`.
pub fn check_group_specialization(
    alg: &Algebra,
    rules: &RuleSet,
    a: &GramMatrix,
    limits: &ReduceLimits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let spec = &alg.spec;
    let n = a.size();
    let rows = a.rows()?;
    let mut failures = Vec::new();
    let mut sigma: Vec<Option<usize>> = vec![None; n];
    let mut col_hits = vec![0usize; n];
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            let v = x.eval(&spec.group_point)?;
            match integral(&v) {
                Some(0) => {}
                Some(1) if sigma[i].is_none() => {
                    sigma[i] = Some(j);
                    col_hits[j] += 1;
                }
                _ => failures.push(Failure::new(format!("({}, {})", i + 1, j + 1), "0 or a single 1", v)),
            }
        }
        if sigma[i].is_none() {
            failures.push(Failure::new(format!("row {}", i + 1), "one entry 1", "none"));
        }
    }
    for (j, &h) in col_hits.iter().enumerate() {
        if h != 1 {
            failures.push(Failure::new(format!("column {}", j + 1), "one entry 1", format!("{h} entries")));
        }
    }
    for i in 0..n {
        if let Some(j) = sigma[i] {
            if sigma[j] != Some(i) {
                failures.push(Failure::new(format!("sigma^2 at b{}", i + 1), i + 1, sigma[j].map_or(0, |k| k + 1)));
            }
        }
    }
    let oracle = group_inverse_oracle(alg, rules, limits)?;
    for i in 0..n {
        if oracle[i] != sigma[i] {
            let show = |x: Option<usize>| x.map_or("none".to_string(), |k| format!("b{}", k + 1));
            failures.push(Failure::new(format!("inverse of b{}", i + 1), show(oracle[i]), show(sigma[i])));
        }
    }
    let z_order = (1..=spec.center_order as i32)
        .map(|k| -> Result<bool> {
            let v = reduce_word(alg, rules, &Word::z_pow(k), limits)?;
            Ok(v.get(0).eval(&spec.group_point)?.is_one())
        })
        .collect::<Result<Vec<_>>>()?
        .iter()
        .position(|&one| one)
        .map_or(0, |k| k + 1);
    if z_order != spec.center_order as usize {
        failures.push(Failure::new("order of z", spec.center_order, z_order));
    }
    Ok(VerificationReport::finish(spec.name, "group_specialization", failures, start))
}

/// Orders of the groups.
pub fn group_order(g: GroupName) -> usize {
    match g {
        GroupName::G4 => 24,
        GroupName::G5 => 72,
        GroupName::G6 => 48,
        GroupName::G7 => 144,
        GroupName::G8 => 96,
    }
}

fn valid_row(spec: &GroupSpec, v: &BasisCombo) -> bool {
    v.iter().all(|(l, c)| l < spec.order() && spec.valid_coefficient(c))
}

/// Closure of the basis under the generators, the certificate of the
/// operator tables, `|B| = |G|`, and for G7 the three expansions of `s·b_j`.
pub fn check_freeness(
    alg: &Algebra,
    tables: &MultTables,
    rules: &RuleSet,
    limits: &ReduceLimits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let spec = &alg.spec;
    let n = spec.order();
    let mut failures = Vec::new();
    if n != group_order(spec.name) {
        failures.push(Failure::new("basis size", group_order(spec.name), n));
    }
    for (g, t) in &tables.tables {
        if t.rows.len() != n {
            failures.push(Failure::new(format!("table {}", spec.gen_name(*g)), n, t.rows.len()));
        }
        for (j, row) in t.rows.iter().enumerate() {
            if !valid_row(spec, row) {
                failures.push(Failure::new(format!("{}*b{}", spec.gen_name(*g), j + 1), "a basis combination", row.to_text()));
            }
        }
        let g1 = reduce_word(alg, rules, &Word::gen_pow(*g, 1), limits)?;
        if t.rows[0] != g1 {
            failures.push(Failure::new(format!("{}*b1", spec.gen_name(*g)), g1.to_text(), t.rows[0].to_text()));
        }
    }
    for msg in alg.tables.certify(spec) {
        failures.push(Failure::new("certificate", "holds", msg));
    }
    if spec.name == GroupName::G7 {
        failures.extend(g7_s_cases(alg, rules, limits)?);
    }
    if spec.name == GroupName::G5 {
        let [s, t] = spec.sage_generators;
        let chained = tables.apply_word(&[s, t, t], &tables.get(s).rows[0]);
        let w = Word::from_syllables([(s, 1), (t, 2), (s, 1)]);
        let direct = reduce_word(alg, rules, &w, limits)?;
        if chained != direct {
            failures.push(Failure::new("s t^2 s", direct.to_text(), chained.to_text()));
        }
    }
    Ok(VerificationReport::finish(spec.name, "freeness", failures, start))
}

/// `s·b_j` in G7: `z·u·t^r` for `j = 10, 11, 12`; `u⁻¹t⁻¹·b_{j+12}` for the
/// other `j ≤ 132`; `a·b_j + b·tu·b_{j-12}` for `j ≥ 133`.
fn g7_s_cases(alg: &Algebra, rules: &RuleSet, limits: &ReduceLimits) -> Result<Vec<Failure>> {
    let spec = &alg.spec;
    let s = spec.gen_id('s').unwrap();
    let t = spec.gen_id('t').unwrap();
    let u = spec.gen_id('u').unwrap();
    let n = spec.order();
    let items = (0..n)
        .into_par_iter()
        .map(|j| -> Result<Option<Failure>> {
            let lhs = reduce_word(alg, rules, &Word::gen_pow(s, 1).mul(&spec.basis[j]), limits)?;
            let one_based = j + 1;
            let rhs = if (10..=12).contains(&one_based) {
                let target = [13, 17, 19][one_based - 10];
                let w = Word::from_syllables([(crate::algebra::Z, 1), (u, 1), (t, (one_based - 10) as i32)]);
                if spec.basis_lookup(&w) != Some(target) {
                    return Ok(Some(Failure::new(
                        format!("s*b{one_based}"),
                        format!("b{}", target + 1),
                        spec.format_word(&w),
                    )));
                }
                BasisCombo::unit(target)
            } else if one_based <= 132 {
                let w = Word::from_syllables([(u, -1), (t, -1)]).mul(&spec.basis[j + 12]);
                reduce_word(alg, rules, &w, limits)?
            } else {
                let e = Element::from_terms([
                    (spec.param('a'), spec.basis[j].clone()),
                    (spec.param('b'), Word::from_syllables([(t, 1), (u, 1)]).mul(&spec.basis[j - 12])),
                ]);
                reduce(alg, rules, &e, limits)?
            };
            Ok((lhs != rhs).then(|| Failure::new(format!("s*b{one_based}"), rhs.to_text(), lhs.to_text())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(items.into_iter().flatten().collect())
}

/// A random word of `len` letters with exponents `±1`, `±2`.
pub fn random_word(spec: &GroupSpec, rng: &mut impl Rng, len: usize) -> Word {
    let k = spec.generators.len();
    let mut w = Word::identity();
    for _ in 0..len {
        let g = rng.gen_range(0..k) as u8;
        let e = [-2, -1, 1, 2][rng.gen_range(0..4)];
        w.push(g, e);
    }
    w
}

/// `τ(ww′) = τ(w′w)` for `count` random pairs of words.
pub fn check_trace_property(
    alg: &Algebra,
    rules: &RuleSet,
    count: usize,
    seed: u64,
    limits: &ReduceLimits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let spec = &alg.spec;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Word, Word)> = (0..count)
        .map(|_| {
            let l1 = rng.gen_range(1..=5);
            let l2 = rng.gen_range(1..=5);
            (random_word(spec, &mut rng, l1), random_word(spec, &mut rng, l2))
        })
        .collect();
    let results = pairs
        .par_iter()
        .map(|(w, v)| -> Result<Option<Failure>> {
            let x = tau(alg, rules, &Element::word(w.mul(v)), limits)?;
            let y = tau(alg, rules, &Element::word(v.mul(w)), limits)?;
            Ok((x != y).then(|| {
                Failure::new(
                    format!("({}, {})", spec.format_word(w), spec.format_word(v)),
                    x.pretty(),
                    y.pretty(),
                )
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::finish(
        spec.name,
        "trace_property",
        results.into_iter().flatten().collect(),
        start,
    ))
}
