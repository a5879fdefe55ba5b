use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use heckekit_laurent::{Assignment, LaurentPoly, Monomial, VarSet};
use serde::{Deserialize, Serialize};

use super::word::{GenId, Word, Z};
use crate::gram::recipe::{RowPlan, RowRecipe};
use crate::Error;

/// The five groups with built-in data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupName {
    G4,
    G5,
    G6,
    G7,
    G8,
}

impl GroupName {
    pub const ALL: [GroupName; 5] = [
        GroupName::G4,
        GroupName::G5,
        GroupName::G6,
        GroupName::G7,
        GroupName::G8,
    ];
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupName::G4 => "G4",
            GroupName::G5 => "G5",
            GroupName::G6 => "G6",
            GroupName::G7 => "G7",
            GroupName::G8 => "G8",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "G4" => Ok(GroupName::G4),
            "G5" => Ok(GroupName::G5),
            "G6" => Ok(GroupName::G6),
            "G7" => Ok(GroupName::G7),
            "G8" => Ok(GroupName::G8),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

/// A generator with its positive Hecke relation `g^e = Σ_{i<e} c_i g^i`.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: char,
    pub order: usize,
    /// `coeffs[i]` multiplies `g^i`.
    pub coeffs: Vec<LaurentPoly>,
    /// Parameter names of the relation, highest power first.
    pub params: Vec<char>,
}

impl Generator {
    /// Constant term of the relation, a unit of the ring.
    pub fn constant(&self) -> &LaurentPoly {
        &self.coeffs[0]
    }
}

/// How `z^{|Z|}` is expressed in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterStrategy {
    /// Copy the row `row` of the table of `gen`.
    TableRow { gen: GenId, row: usize },
    /// `μ_l = a·δ_{l,138} + b·Σ_r λ^t_{126,r} λ^u_{r,l}`.
    SevenFormula,
    /// Reduce the product of two basis elements.
    BasisProduct(usize, usize),
    /// Reduce `z^{|Z|}` directly.
    Direct,
}

/// Elimination of a generator through the centre: `gen = z · cofactor⁻¹`.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub gen: GenId,
    pub cofactor: Word,
}

/// Presentation and basis data of one Hecke algebra.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: GroupName,
    pub generators: Vec<Generator>,
    /// Parameters in their fixed order.
    pub params: Vec<char>,
    pub unit_params: VarSet,
    /// Positive braid relations `lhs = rhs`.
    pub braid_relations: Vec<(Word, Word)>,
    /// The seed set the basis is built from; empty for G4.
    pub seeds: Vec<Word>,
    /// Ordered basis, `basis[0]` the identity. Powers of the centre appear as
    /// the abstract letter [`Z`].
    pub basis: Vec<Word>,
    pub block: (usize, usize),
    pub center_word: Word,
    pub center_order: u32,
    pub sage_generators: [GenId; 2],
    pub row_recipes: Vec<RowPlan>,
    pub center_strategy: CenterStrategy,
    pub elimination: Option<Elimination>,
    /// Claimed Gram determinant `sign · monomial`.
    pub claimed_det: (i32, Monomial),
    /// Parameter values that turn the algebra into the group algebra.
    pub group_point: Assignment,
    index: HashMap<Word, usize>,
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        self.basis.len()
    }

    pub fn gen_id(&self, name: char) -> Option<GenId> {
        if name == 'z' {
            return Some(Z);
        }
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as GenId)
    }

    pub fn gen_name(&self, g: GenId) -> char {
        if g == Z {
            'z'
        } else {
            self.generators[g as usize].name
        }
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.generators[g as usize]
    }

    /// Position of `w` in the basis. The word is matched literally after
    /// moving central letters to the front; fully expanded forms of the
    /// centre are recognised as well.
    pub fn basis_index(&self, w: &Word) -> Option<usize> {
        if let Some(&i) = self.index.get(w) {
            return Some(i);
        }
        let (q, rest) = w.collect_z();
        let moved = Word::z_pow(q).mul(&rest);
        if let Some(&i) = self.index.get(&moved) {
            return Some(i);
        }
        let expanded = w.expand_z(&self.center_word);
        self.basis
            .iter()
            .position(|b| b.expand_z(&self.center_word) == expanded)
    }

    /// Position of `z^q·rest` in the basis, where `w = z^q·rest` after moving
    /// central letters to the front. No expansion of the centre.
    pub fn basis_lookup(&self, w: &Word) -> Option<usize> {
        if let Some(&i) = self.index.get(w) {
            return Some(i);
        }
        if !w.contains_z() {
            return None;
        }
        let (q, rest) = w.collect_z();
        self.index.get(&Word::z_pow(q).mul(&rest)).copied()
    }

    /// Split of a basis word into its centre power and the remaining word.
    pub fn basis_parts(&self, i: usize) -> (i32, Word) {
        self.basis[i].collect_z()
    }

    /// True when no basis word contains a negative exponent.
    pub fn positive_basis(&self) -> bool {
        self.basis.iter().all(|w| w.is_positive())
    }

    pub fn claimed_det_poly(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.claimed_det.0, self.claimed_det.1)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, Error> {
        parse_word(text, |c| self.gen_id(c))
    }

    /// Text form `z^2 s^3 t^2`; the identity prints as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".into();
        }
        let parts: Vec<String> = w
            .syllables()
            .iter()
            .map(|s| {
                let n = self.gen_name(s.gen);
                if s.exp == 1 {
                    n.to_string()
                } else {
                    format!("{n}^{}", s.exp)
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Hecke coefficient polynomial for the generator named `name`.
    pub fn param(&self, name: char) -> LaurentPoly {
        let i = heckekit_laurent::var_index(name).expect("parameter name");
        LaurentPoly::var(i)
    }

    /// True when every negative exponent of `p` sits on a unit parameter.
    pub fn valid_coefficient(&self, p: &LaurentPoly) -> bool {
        p.negative_vars().0 & !self.unit_params.0 == 0
    }
}

/// Parses `s t^-1 s^2`; spaces are optional between syllables.
pub fn parse_word(text: &str, lookup: impl Fn(char) -> Option<GenId>) -> Result<Word, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut w = Word::identity();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '·' {
            i += 1;
            continue;
        }
        if c == '1' && w.is_identity() && chars[i + 1..].iter().all(|c| c.is_whitespace()) {
            i += 1;
            continue;
        }
        let g = lookup(c).ok_or_else(|| Error::WordParse {
            pos: i,
            msg: format!("unknown generator {c:?}"),
        })?;
        i += 1;
        let mut e = 1i32;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            e = s.parse().map_err(|_| Error::WordParse {
                pos: start,
                msg: "bad exponent".into(),
            })?;
        }
        w.push(g, e);
    }
    Ok(w)
}

/// Loads the built-in data of one group.
pub fn load_group_spec(name: GroupName) -> GroupSpec {
    match name {
        GroupName::G4 => g4(),
        GroupName::G5 => g5(),
        GroupName::G6 => g6(),
        GroupName::G7 => g7(),
        GroupName::G8 => g8(),
    }
}

fn var(c: char) -> LaurentPoly {
    LaurentPoly::var(heckekit_laurent::var_index(c).unwrap())
}

fn generator(name: char, params: &[char]) -> Generator {
    let order = params.len();
    let coeffs = params.iter().rev().map(|&c| var(c)).collect();
    Generator {
        name,
        order,
        coeffs,
        params: params.to_vec(),
    }
}

fn units(cs: &[char]) -> VarSet {
    let idx: Vec<usize> = cs
        .iter()
        .map(|&c| heckekit_laurent::var_index(c).unwrap())
        .collect();
    VarSet::from_indices(&idx)
}

fn point(params: &[char], ones: &[char]) -> Assignment {
    let mut a = Assignment::new();
    for &c in params {
        a = a.with(c, if ones.contains(&c) { 1 } else { 0 });
    }
    a
}

fn det_claim(sign: i32, exps: &[(char, i32)]) -> (i32, Monomial) {
    let mut m = Monomial::ONE;
    for &(c, e) in exps {
        m = m.mul(&Monomial::var(heckekit_laurent::var_index(c).unwrap(), e));
    }
    (sign, m)
}

fn words(names: &str, list: &[&str]) -> Vec<Word> {
    let lookup = |c: char| {
        if c == 'z' {
            Some(Z)
        } else {
            names.chars().position(|n| n == c).map(|i| i as GenId)
        }
    };
    list.iter().map(|s| parse_word(s, lookup).unwrap()).collect()
}

fn z_graded(seeds: &[Word], center_order: u32) -> Vec<Word> {
    let mut out = Vec::with_capacity(seeds.len() * center_order as usize);
    for k in 0..center_order as i32 {
        for m in seeds {
            out.push(Word::z_pow(k).mul(m));
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn build(
    name: GroupName,
    gen_names: &str,
    generators: Vec<Generator>,
    params: &[char],
    unit: &[char],
    braid: &[(&str, &str)],
    seeds: Vec<Word>,
    basis: Vec<Word>,
    block: (usize, usize),
    center: &str,
    center_order: u32,
    sage: [GenId; 2],
    row_recipes: Vec<RowPlan>,
    center_strategy: CenterStrategy,
    elimination: Option<Elimination>,
    claimed_det: (i32, Monomial),
) -> GroupSpec {
    let pairs: Vec<&str> = braid.iter().flat_map(|(l, r)| [*l, *r]).collect();
    let bw = words(gen_names, &pairs);
    let braid_relations = bw.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    let center_word = words(gen_names, &[center]).remove(0);
    let mut index = HashMap::new();
    for (i, w) in basis.iter().enumerate() {
        let prev = index.insert(w.clone(), i);
        assert!(prev.is_none(), "duplicate basis word");
    }
    GroupSpec {
        name,
        generators,
        params: params.to_vec(),
        unit_params: units(unit),
        braid_relations,
        seeds,
        basis,
        block,
        center_word,
        center_order,
        sage_generators: sage,
        row_recipes,
        center_strategy,
        elimination,
        claimed_det,
        group_point: point(params, unit),
        index,
    }
}

/// Builds the per-block recipes from `(m, m', g)` steps with one-based `m`.
fn block_recipes(
    block: usize,
    count: usize,
    steps: &[(usize, usize, GenId)],
    special: impl Fn(usize, usize) -> Option<RowRecipe>,
    lead: impl Fn(usize) -> RowRecipe,
) -> Vec<RowPlan> {
    let mut out = Vec::new();
    for k in 0..count {
        let base = block * k;
        out.push(RowPlan {
            row: base,
            recipe: if k == 0 { RowRecipe::IdentityRow } else { lead(k) },
        });
        for m in 2..=block {
            let recipe = if let Some(r) = special(k, m) {
                r
            } else {
                let &(_, src, gen) = steps
                    .iter()
                    .find(|(mm, _, _)| *mm == m)
                    .expect("missing step");
                RowRecipe::GeneratorStep {
                    src: base + src - 1,
                    gen,
                }
            };
            out.push(RowPlan {
                row: base + m - 1,
                recipe,
            });
        }
    }
    out
}

const S: GenId = 0;
const T: GenId = 1;

fn g4() -> GroupSpec {
    let gens = vec![generator('s', &['a', 'b', 'c']), generator('t', &['a', 'b', 'c'])];
    let basis = words(
        "st",
        &[
            "", "s", "s^2", "z", "z s", "z s^2", "t^2", "t", "t^2 s", "t s", "t^2 s^2", "t s^2",
            "s t^2", "s t", "s t^2 s", "s t s", "s t^2 s^2", "s t s^2", "s^2 t^2", "s^2 t",
            "s^2 t^2 s", "s^2 t s", "s^2 t^2 s^2", "s^2 t s^2",
        ],
    );
    // (row, source, generator), one-based, in fill order.
    let steps: [(usize, usize, GenId); 20] = [
        (2, 1, S),
        (3, 2, S),
        (8, 1, T),
        (7, 8, T),
        (9, 7, S),
        (10, 8, S),
        (11, 9, S),
        (12, 10, S),
        (14, 2, T),
        (13, 14, T),
        (15, 13, S),
        (16, 14, S),
        (17, 15, S),
        (18, 16, S),
        (20, 3, T),
        (19, 20, T),
        (21, 19, S),
        (22, 20, S),
        (23, 21, S),
        (24, 22, S),
    ];
    let mut recipes = vec![RowPlan {
        row: 0,
        recipe: RowRecipe::IdentityRow,
    }];
    for (row, src, gen) in steps {
        recipes.push(RowPlan {
            row: row - 1,
            recipe: RowRecipe::GeneratorStep { src: src - 1, gen },
        });
    }
    recipes.push(RowPlan {
        row: 3,
        recipe: RowRecipe::WordStep {
            src: 15,
            word: vec![T, S, T],
        },
    });
    recipes.push(RowPlan {
        row: 4,
        recipe: RowRecipe::GeneratorStep { src: 3, gen: S },
    });
    recipes.push(RowPlan {
        row: 5,
        recipe: RowRecipe::GeneratorStep { src: 4, gen: S },
    });
    build(
        GroupName::G4,
        "st",
        gens,
        &['a', 'b', 'c'],
        &['c'],
        &[("s t s", "t s t")],
        Vec::new(),
        basis,
        (24, 1),
        "s t s t s t",
        2,
        [S, T],
        recipes,
        CenterStrategy::Direct,
        None,
        det_claim(-1, &[('c', 58)]),
    )
}

fn g8() -> GroupSpec {
    let gens = vec![
        generator('s', &['a', 'b', 'c', 'd']),
        generator('t', &['a', 'b', 'c', 'd']),
    ];
    let seeds = words(
        "st",
        &[
            "", "s", "s^2", "s^3", "t", "t s", "t s^2", "t s^3", "s t", "s t s", "s t s^2",
            "s t s^3", "s^2 t", "s^2 t s", "s^2 t s^2", "s^2 t s^3", "s^3 t", "s^3 t s",
            "s^3 t s^2", "s^3 t s^3", "t^2", "s t^2", "s^2 t^2", "s^3 t^2",
        ],
    );
    let basis = z_graded(&seeds, 4);
    let steps = [
        (2, 1, S),
        (3, 2, S),
        (4, 3, S),
        (5, 1, T),
        (6, 5, S),
        (7, 6, S),
        (8, 7, S),
        (9, 2, T),
        (10, 9, S),
        (11, 10, S),
        (12, 11, S),
        (13, 3, T),
        (14, 13, S),
        (15, 14, S),
        (16, 15, S),
        (17, 4, T),
        (18, 17, S),
        (19, 18, S),
        (20, 19, S),
        (21, 5, T),
        (22, 9, T),
        (23, 13, T),
        (24, 17, T),
    ];
    let recipes = block_recipes(24, 4, &steps, |_, _| None, |k| RowRecipe::ZeroThenCenter { k });
    build(
        GroupName::G8,
        "st",
        gens,
        &['a', 'b', 'c', 'd'],
        &['d'],
        &[("s t s", "t s t")],
        seeds,
        basis,
        (24, 4),
        "s t s t s t",
        4,
        [S, T],
        recipes,
        CenterStrategy::TableRow { gen: T, row: 86 },
        None,
        det_claim(1, &[('d', 600)]),
    )
}

fn g6() -> GroupSpec {
    let gens = vec![generator('s', &['a', 'b']), generator('t', &['c', 'd', 'e'])];
    let seeds = words(
        "st",
        &[
            "", "t", "t^2", "s", "s t", "s t^2", "t s", "t^2 s", "t s t", "t s t^2", "t^2 s t",
            "t^2 s t^2",
        ],
    );
    let basis = z_graded(&seeds, 4);
    let steps = [
        (2, 1, T),
        (3, 2, T),
        (4, 1, S),
        (5, 4, T),
        (6, 5, T),
        (7, 2, S),
        (8, 3, S),
        (9, 7, T),
        (10, 9, T),
        (11, 8, T),
        (12, 11, T),
    ];
    let recipes = block_recipes(12, 4, &steps, |_, _| None, |k| RowRecipe::ZeroThenCenter { k });
    build(
        GroupName::G6,
        "st",
        gens,
        &['a', 'b', 'c', 'd', 'e'],
        &['b', 'e'],
        &[("s t s t s t", "t s t s t s")],
        seeds,
        basis,
        (12, 4),
        "s t s t s t",
        4,
        [S, T],
        recipes,
        CenterStrategy::BasisProduct(12, 36),
        None,
        det_claim(1, &[('b', 252), ('e', 200)]),
    )
}

fn g5() -> GroupSpec {
    let gens = vec![
        generator('s', &['a', 'b', 'c']),
        generator('t', &['d', 'e', 'f']),
    ];
    let seeds = words(
        "st",
        &[
            "", "s", "s^2", "t", "t^2", "s t", "s^2 t", "s t^2", "s^2 t^2", "t^-1 s",
            "t^-1 s t", "t^-1 s t^2",
        ],
    );
    let basis = z_graded(&seeds, 6);
    let steps = [
        (2, 1, S),
        (3, 2, S),
        (4, 1, T),
        (5, 4, T),
        (6, 2, T),
        (7, 3, T),
        (8, 6, T),
        (9, 7, T),
        (11, 10, T),
        (12, 11, T),
    ];
    let f_inv = LaurentPoly::monomial(1, Monomial::var(5, -1));
    let (d, e) = (var('d'), var('e'));
    let special = move |k: usize, m: usize| {
        (m == 10).then(|| {
            let base = 12 * k;
            RowRecipe::LinearGeneratorStep {
                terms: vec![
                    (f_inv.clone(), base + 4),
                    (-(&d * &f_inv), base + 3),
                    (-(&e * &f_inv), base),
                ],
                gen: S,
            }
        })
    };
    let recipes = block_recipes(12, 6, &steps, special, |k| RowRecipe::ZeroThenCenter { k });
    build(
        GroupName::G5,
        "st",
        gens,
        &['a', 'b', 'c', 'd', 'e', 'f'],
        &['c', 'f'],
        &[("s t s t", "t s t s")],
        seeds,
        basis,
        (12, 6),
        "s t s t",
        6,
        [S, T],
        recipes,
        CenterStrategy::BasisProduct(36, 36),
        None,
        det_claim(-1, &[('c', 288), ('f', 276)]),
    )
}

fn g7() -> GroupSpec {
    const T7: GenId = 1;
    const U7: GenId = 2;
    let gens = vec![
        generator('s', &['a', 'b']),
        generator('t', &['c', 'd', 'e']),
        generator('u', &['f', 'g', 'h']),
    ];
    let seeds = words(
        "stu",
        &[
            "", "u", "u^2", "t", "t^2", "u t", "u^2 t", "u t^2", "u^2 t^2", "t u^-1",
            "t u^-1 t", "t u^-1 t^2",
        ],
    );
    let mut basis = z_graded(&seeds, 12);
    let repl = words("stu", &["t u^2", "t u^2 t", "t u^2 t^2"]);
    for (r, w) in repl.into_iter().enumerate() {
        basis[9 + r] = w;
    }
    let steps = [
        (2, 1, U7),
        (3, 2, U7),
        (4, 1, T7),
        (5, 4, T7),
        (6, 2, T7),
        (7, 3, T7),
        (8, 6, T7),
        (9, 7, T7),
        (11, 10, T7),
        (12, 11, T7),
    ];
    let special = |k: usize, m: usize| (m == 10).then_some(RowRecipe::G7Row10 { k });
    let recipes = block_recipes(12, 12, &steps, special, |k| RowRecipe::G7CenterRow { k });
    let cofactor = words("stu", &["t u"]).remove(0);
    build(
        GroupName::G7,
        "stu",
        gens,
        &['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'],
        &['b', 'e', 'h'],
        &[("s t u", "t u s"), ("t u s", "u s t")],
        seeds,
        basis,
        (12, 12),
        "t u s",
        12,
        [T7, U7],
        recipes,
        CenterStrategy::SevenFormula,
        Some(Elimination { gen: 0, cofactor }),
        det_claim(1, &[('b', 792), ('e', 648), ('h', 582)]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_centres() {
        let expect = [(24, 2), (72, 6), (48, 4), (144, 12), (96, 4)];
        for (g, (n, z)) in GroupName::ALL.iter().zip(expect) {
            let s = load_group_spec(*g);
            assert_eq!(s.order(), n);
            assert_eq!(s.center_order, z);
            assert!(s.basis[0].is_identity());
            for (l, r) in &s.braid_relations {
                assert_eq!(l.letter_len(), r.letter_len());
            }
        }
    }

    #[test]
    fn printed_positions() {
        let g8 = load_group_spec(GroupName::G8);
        assert_eq!(g8.format_word(&g8.basis[71]), "z^2 s^3 t^2");
        let g7 = load_group_spec(GroupName::G7);
        assert_eq!(g7.format_word(&g7.basis[9]), "t u^2");
        assert_eq!(g7.format_word(&g7.basis[11]), "t u^2 t^2");
        let g4 = load_group_spec(GroupName::G4);
        let z = g4.parse_word("s t s t s t").unwrap();
        assert_eq!(g4.basis_index(&z), Some(3));
        let g6 = load_group_spec(GroupName::G6);
        assert_eq!(g6.basis_index(&g6.parse_word("t s t^2").unwrap()), Some(9));
        let w = g8.parse_word("s^3 t s^3").unwrap();
        assert_eq!(g8.basis_index(&w), Some(19));
        let w = g8.parse_word("s^3 t s^4").unwrap();
        assert_eq!(g8.basis_index(&w), None);
        assert_eq!(g8.basis_index(&Word::identity()), Some(0));
    }

    #[test]
    fn parse_forms() {
        let g = load_group_spec(GroupName::G4);
        let a = g.parse_word("s t^-1 s^2").unwrap();
        let b = g.parse_word("st^-1s^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(g.format_word(&a), "s t^-1 s^2");
        assert!(g.parse_word("s x").is_err());
        assert!(g.parse_word("").unwrap().is_identity());
    }
}
