//! Reduction of elements to basis coordinates.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use heckekit_laurent::LaurentPoly;
use serde::{Deserialize, Serialize};

use super::bootstrap::Enumerator;
use super::braid::braid_neighbors;
use super::rules::{parse_rules, splice, RewriteRule, RuleSet};
use super::tables::OperatorTables;
use crate::algebra::{load_group_spec, BasisCombo, Element, GroupName, GroupSpec, Word, Z};
use crate::{Error, Result};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "HECKEKIT_CACHE";

/// Most inverse letters a word may carry for inverse Hecke expansion; longer
/// words go to the tables directly.
pub const INVERSE_EXPANSION_LIMIT: usize = 2;

const TABLE_CACHE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceLimits {
    pub max_iterations: usize,
    pub braid_search_depth: usize,
}

impl Default for ReduceLimits {
    fn default() -> Self {
        Self {
            max_iterations: 1_000_000,
            braid_search_depth: 1,
        }
    }
}

/// A group's presentation together with its operator tables.
pub struct Algebra {
    pub spec: GroupSpec,
    pub tables: OperatorTables,
    memo: Option<RwLock<HashMap<Word, BasisCombo>>>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    group: GroupName,
    version: u32,
    tables: OperatorTables,
}

/// The cache directory from [`CACHE_ENV`], if set.
pub fn cache_root_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

impl Algebra {
    pub fn from_tables(spec: GroupSpec, tables: OperatorTables) -> Self {
        Self {
            spec,
            tables,
            memo: None,
        }
    }

    /// Builds and certifies the tables.
    pub fn build(name: GroupName) -> Result<Self> {
        let spec = load_group_spec(name);
        let tables = Enumerator::new(&spec)?.run(500, |_| {})?;
        let bad = tables.certify(&spec);
        if !bad.is_empty() {
            return Err(Error::Bootstrap(format!(
                "{} certificate failures, first: {}",
                bad.len(),
                bad[0]
            )));
        }
        Ok(Self::from_tables(spec, tables))
    }

    /// Loads the tables from `cache` when present there, otherwise builds
    /// and stores them.
    pub fn load(name: GroupName, cache: Option<&Path>) -> Result<Self> {
        let Some(dir) = cache else {
            return Self::build(name);
        };
        let path = dir.join(format!("tables-{name}.json"));
        if let Ok(bytes) = std::fs::read(&path) {
            if let Ok(f) = serde_json::from_slice::<TableFile>(&bytes) {
                let spec = load_group_spec(name);
                if f.group == name
                    && f.version == TABLE_CACHE_VERSION
                    && f.tables.size() == spec.order()
                {
                    return Ok(Self::from_tables(spec, f.tables));
                }
            }
        }
        let alg = Self::build(name)?;
        std::fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let f = TableFile {
            group: name,
            version: TABLE_CACHE_VERSION,
            tables: alg.tables.clone(),
        };
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(&f)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(alg)
    }

    /// Turns the memo of single-word reductions on or off.
    pub fn with_memo(mut self, on: bool) -> Self {
        self.memo = on.then(|| RwLock::new(HashMap::new()));
        self
    }
}

/// Moves central letters to the front.
fn normalize(w: &Word) -> Word {
    if !w.contains_z() {
        return w.clone();
    }
    let (q, rest) = w.collect_z();
    Word::z_pow(q).mul(&rest)
}

/// `(z excess, non-central letters, z inversions)`, compared
/// lexicographically.
fn measure(spec: &GroupSpec, w: &Word) -> (i32, usize, usize) {
    let mut q = 0;
    let mut letters = 0;
    let mut inversions = 0;
    for s in w.syllables() {
        let k = s.exp.unsigned_abs() as usize;
        if s.gen == Z {
            q += s.exp;
            inversions += letters * k;
        } else {
            letters += k;
        }
    }
    ((q - (spec.center_order as i32 - 1)).max(0), letters, inversions)
}

enum Step {
    Basis(usize),
    Rewrite(Element),
    Table(Word, usize),
}

fn hecke_positive(spec: &GroupSpec, w: &Word) -> Option<Element> {
    let syl = w.syllables();
    let mut best: Option<usize> = None;
    for (i, s) in syl.iter().enumerate() {
        if s.gen == Z || s.exp < spec.generator(s.gen).order as i32 {
            continue;
        }
        if best.map_or(true, |b| s.exp > syl[b].exp) {
            best = Some(i);
        }
    }
    let i = best?;
    let g = syl[i].gen;
    let gd = spec.generator(g);
    let base = syl[i].exp - gd.order as i32;
    Some(expand_syllable(w, i, |out, pre, post| {
        for (k, c) in gd.coeffs.iter().enumerate() {
            out.add_term(c.clone(), pre.mul(&Word::gen_pow(g, base + k as i32)).mul(post));
        }
    }))
}

fn hecke_inverse(spec: &GroupSpec, w: &Word) -> Option<Element> {
    let syl = w.syllables();
    let neg: usize = syl
        .iter()
        .filter(|s| s.gen != Z && s.exp < 0)
        .map(|s| s.exp.unsigned_abs() as usize)
        .sum();
    if neg == 0 || neg > INVERSE_EXPANSION_LIMIT {
        return None;
    }
    let i = syl.iter().position(|s| s.gen != Z && s.exp < 0)?;
    let g = syl[i].gen;
    let gd = spec.generator(g);
    let c0 = gd.constant().unit_inverse(spec.unit_params)?;
    let e = gd.order as i32;
    let rest = syl[i].exp + 1;
    Some(expand_syllable(w, i, |out, pre, post| {
        out.add_term(c0.clone(), pre.mul(&Word::gen_pow(g, rest + e - 1)).mul(post));
        for k in 1..e {
            let c = -(&c0 * &gd.coeffs[k as usize]);
            out.add_term(c, pre.mul(&Word::gen_pow(g, rest + k - 1)).mul(post));
        }
    }))
}

fn expand_syllable(w: &Word, i: usize, f: impl FnOnce(&mut Element, &Word, &Word)) -> Element {
    let syl = w.syllables();
    let pre = Word::from_syllables(syl[..i].iter().map(|s| (s.gen, s.exp)));
    let post = Word::from_syllables(syl[i + 1..].iter().map(|s| (s.gen, s.exp)));
    let mut out = Element::zero();
    f(&mut out, &pre, &post);
    out
}

fn step(spec: &GroupSpec, rules: &RuleSet, w: &Word, limits: &ReduceLimits) -> Step {
    if let Some(i) = spec.basis_lookup(w) {
        return Step::Basis(i);
    }
    let m0 = measure(spec, w);
    for m in rules.matches(w) {
        let e = splice(w, &m);
        if e.terms().all(|(v, _)| measure(spec, &normalize(v)) < m0) {
            return Step::Rewrite(e);
        }
    }
    if let Some(e) = hecke_positive(spec, w) {
        return Step::Rewrite(e);
    }
    if spec.positive_basis() {
        if let Some(e) = hecke_inverse(spec, w) {
            return Step::Rewrite(e);
        }
    }
    if limits.braid_search_depth > 0 {
        for v in braid_neighbors(spec, w, limits.braid_search_depth) {
            if &v != w && (spec.basis_lookup(&v).is_some() || hecke_positive(spec, &v).is_some()) {
                return Step::Rewrite(Element::word(v));
            }
        }
    }
    let (q, rest) = w.collect_z();
    let letters = rest.letters();
    let zq = Word::z_pow(q);
    for k in 0..=letters.len() {
        let suffix = Word::from_letters(&letters[k..]);
        let prefix = Word::from_letters(&letters[..k]);
        if let Some(i) = spec.basis_lookup(&zq.mul(&suffix)) {
            return Step::Table(prefix, i);
        }
        if let Some(i) = spec.basis_lookup(&suffix) {
            return Step::Table(zq.mul(&prefix), i);
        }
    }
    unreachable!("the identity is a basis word")
}

fn add_term(list: &mut BTreeMap<Word, LaurentPoly>, w: Word, c: LaurentPoly) {
    use std::collections::btree_map::Entry;
    match list.entry(w) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Basis coordinates of `e`.
pub fn reduce(alg: &Algebra, rules: &RuleSet, e: &Element, limits: &ReduceLimits) -> Result<BasisCombo> {
    if e.len() == 1 {
        if let Some(memo) = &alg.memo {
            let (w, c) = e.terms().next().unwrap();
            let key = normalize(w);
            let hit = memo.read().unwrap().get(&key).cloned();
            let v = match hit {
                Some(v) => v,
                None => {
                    let v = reduce_uncached(alg, rules, &Element::word(key.clone()), limits)?;
                    memo.write().unwrap().insert(key, v.clone());
                    v
                }
            };
            return Ok(v.scale(c));
        }
    }
    reduce_uncached(alg, rules, e, limits)
}

fn reduce_uncached(alg: &Algebra, rules: &RuleSet, e: &Element, limits: &ReduceLimits) -> Result<BasisCombo> {
    let spec = &alg.spec;
    let n = spec.order();
    let mut list: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
    for (w, c) in e.terms() {
        add_term(&mut list, normalize(w), c.clone());
    }
    let mut acc: Vec<LaurentPoly> = vec![LaurentPoly::zero(); n];
    let mut pops: HashMap<Word, Vec<(usize, LaurentPoly)>> = HashMap::new();
    let mut iterations = 0usize;
    while !list.is_empty() {
        let mut next: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
        for (w, c) in &list {
            iterations += 1;
            if iterations > limits.max_iterations {
                let snapshot = list
                    .iter()
                    .chain(next.iter())
                    .take(20)
                    .map(|(w, c)| format!("{}*{}", c.pretty_factor(), spec.format_word(w)))
                    .collect();
                return Err(Error::NonTerminating {
                    term: spec.format_word(w),
                    pending: list.len() + next.len(),
                    snapshot,
                });
            }
            match step(spec, rules, w, limits) {
                Step::Basis(i) => acc[i] += c,
                Step::Table(prefix, i) => pops.entry(prefix).or_default().push((i, c.clone())),
                Step::Rewrite(el) => {
                    for (v, x) in el.terms() {
                        let y = c * x;
                        if !spec.valid_coefficient(&y) {
                            return Err(Error::InvalidCoefficient {
                                coef: y.pretty(),
                                word: spec.format_word(v),
                            });
                        }
                        add_term(&mut next, normalize(v), y);
                    }
                }
            }
        }
        list = next;
    }
    let mut pops: Vec<(Word, Vec<(usize, LaurentPoly)>)> = pops.into_iter().collect();
    pops.sort_by(|a, b| a.0.cmp(&b.0));
    for (prefix, entries) in pops {
        let v = BasisCombo::from_entries(entries);
        let r = alg.tables.left_mul(&prefix, &v)?;
        for (l, y) in r.iter() {
            acc[l] += y;
        }
    }
    Ok(BasisCombo::from_entries(
        acc.into_iter().enumerate().filter(|(_, p)| !p.is_zero()),
    ))
}

/// Basis coordinates of one word.
pub fn reduce_word(alg: &Algebra, rules: &RuleSet, w: &Word, limits: &ReduceLimits) -> Result<BasisCombo> {
    reduce(alg, rules, &Element::word(w.clone()), limits)
}

/// Applies the first special-case instance found in `c·w`: rule order
/// first, then leftmost, then longest. `None` when nothing matches.
pub fn apply_special_case(rules: &RuleSet, c: &LaurentPoly, w: &Word) -> Option<Element> {
    let m = rules.matches(w).into_iter().next()?;
    Some(splice(w, &m).scale(c))
}

/// Checks every instance of `rule` by exact reduction of both sides with
/// the defining relations alone.
pub fn validate_rule(alg: &Algebra, rule: &RewriteRule) -> Result<()> {
    let plain = RuleSet::defining(&alg.spec);
    let limits = ReduceLimits::default();
    for (lhs, rhs) in rule.instances() {
        let l = reduce(alg, &plain, &Element::word(lhs.clone()), &limits)?;
        let r = reduce(alg, &plain, &rhs, &limits)?;
        if l != r {
            return Err(Error::RuleValidation {
                rule: rule.name.clone(),
                msg: format!("instance {} differs", alg.spec.format_word(&lhs)),
            });
        }
    }
    Ok(())
}

/// The built-in rules followed by the validated rules of each file.
pub fn load_rules<P: AsRef<Path>>(alg: &Algebra, paths: &[P]) -> Result<RuleSet> {
    let mut set = RuleSet::builtin(&alg.spec);
    for path in paths {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        for r in parse_rules(&alg.spec, &text, &path.display().to_string())? {
            validate_rule(alg, &r)?;
            set.push(r);
        }
    }
    Ok(set)
}
