//! Rewrite rules: the defining relations of a group plus special-case
//! templates, with the text grammar used by rule files.
//!
//! ```text
//! # comment
//! var m in 0..2; var n in 0..2;
//! name: t^m s t^2 s t^n -> c*t^m s t s t^n + (a + b)*t^(m+n-1) - 2*e^-1*z s^-1
//! ```
//!
//! Variable ranges are inclusive. A pattern is a word whose exponents are
//! integers or variables; replacement exponents may be linear expressions in
//! the pattern's variables. The optional `name:` prefix labels the rule.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use heckekit_laurent::LaurentPoly;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Element, GenId, GroupName, GroupSpec, Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleKind {
    PositiveHecke,
    InverseHecke,
    EquivalentPositive,
    Braid,
    SpecialCase,
}

/// A linear exponent expression `c + Σ k_i·v_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponent {
    pub constant: i32,
    pub vars: Vec<(String, i32)>,
}

impl Exponent {
    pub fn constant(c: i32) -> Self {
        Self { constant: c, vars: Vec::new() }
    }

    pub fn var(name: &str) -> Self {
        Self {
            constant: 0,
            vars: vec![(name.to_string(), 1)],
        }
    }

    fn eval(&self, env: &HashMap<&str, i32>) -> i32 {
        self.constant + self.vars.iter().map(|(v, k)| k * env[v.as_str()]).sum::<i32>()
    }

    fn is_single_var(&self) -> bool {
        self.constant == 0 && self.vars.len() == 1 && self.vars[0].1 == 1
    }

    fn text(&self) -> String {
        if self.vars.is_empty() {
            return self.constant.to_string();
        }
        if self.is_single_var() {
            return self.vars[0].0.clone();
        }
        let mut s = String::new();
        for (i, (v, k)) in self.vars.iter().enumerate() {
            match (*k, i) {
                (1, 0) => s.push_str(v),
                (1, _) => write!(s, "+{v}").unwrap(),
                (-1, _) => write!(s, "-{v}").unwrap(),
                (k, 0) => write!(s, "{k}*{v}").unwrap(),
                (k, _) if k > 0 => write!(s, "+{k}*{v}").unwrap(),
                (k, _) => write!(s, "{k}*{v}").unwrap(),
            }
        }
        match self.constant {
            0 => {}
            c if c > 0 => write!(s, "+{c}").unwrap(),
            c => write!(s, "{c}").unwrap(),
        }
        format!("({s})")
    }
}

/// A word with symbolic exponents.
pub type Template = Vec<(GenId, Exponent)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarRange {
    pub name: String,
    pub lo: i32,
    pub hi: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RewriteRule {
    pub kind: RuleKind,
    pub name: String,
    /// Variables of the pattern with their ranges, in order of appearance.
    pub vars: Vec<VarRange>,
    pub pattern: Template,
    pub replacement: Vec<(LaurentPoly, Template)>,
}

fn instantiate(t: &Template, env: &HashMap<&str, i32>) -> Word {
    let mut w = Word::identity();
    for (g, e) in t {
        w.push(*g, e.eval(env));
    }
    w
}

fn template_text(spec: &GroupSpec, t: &Template) -> String {
    if t.is_empty() {
        return "1".into();
    }
    t.iter()
        .map(|(g, e)| {
            let n = spec.gen_name(*g);
            if e.vars.is_empty() && e.constant == 1 {
                n.to_string()
            } else {
                format!("{n}^{}", e.text())
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl RewriteRule {
    /// Every admissible instance `(pattern word, replacement)`.
    pub fn instances(&self) -> Vec<(Word, Element)> {
        let mut out = Vec::new();
        let mut vals: Vec<i32> = self.vars.iter().map(|v| v.lo).collect();
        if self.vars.iter().any(|v| v.lo > v.hi) {
            return out;
        }
        loop {
            let env: HashMap<&str, i32> = self
                .vars
                .iter()
                .zip(&vals)
                .map(|(v, &x)| (v.name.as_str(), x))
                .collect();
            let lhs = instantiate(&self.pattern, &env);
            let rhs = Element::from_terms(
                self.replacement
                    .iter()
                    .map(|(c, t)| (c.clone(), instantiate(t, &env))),
            );
            out.push((lhs, rhs));
            let mut i = 0;
            loop {
                if i == vals.len() {
                    return out;
                }
                if vals[i] < self.vars[i].hi {
                    vals[i] += 1;
                    break;
                }
                vals[i] = self.vars[i].lo;
                i += 1;
            }
        }
    }

    /// The rule in file syntax.
    pub fn text(&self, spec: &GroupSpec) -> String {
        let mut s = String::new();
        for v in &self.vars {
            write!(s, "var {} in {}..{}; ", v.name, v.lo, v.hi).unwrap();
        }
        write!(s, "{}: {} -> ", self.name, template_text(spec, &self.pattern)).unwrap();
        if self.replacement.is_empty() {
            s.push('0');
        }
        for (i, (c, t)) in self.replacement.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            write!(s, "{}*{}", c.pretty_factor(), template_text(spec, t)).unwrap();
        }
        s
    }
}

/// Special-case instance found inside a word.
#[derive(Clone, Debug)]
pub struct Match {
    pub rule: usize,
    pub start: usize,
    pub len: usize,
    pub replacement: Element,
}

/// Ordered rules of one group and an index of special-case instances.
#[derive(Clone, Debug)]
pub struct RuleSet {
    pub group: GroupName,
    pub rules: Vec<RewriteRule>,
    index: HashMap<Vec<Letter>, (usize, Element)>,
    max_len: usize,
}

impl RuleSet {
    /// Defining relations and the group's built-in special cases.
    pub fn builtin(spec: &GroupSpec) -> Self {
        let mut set = Self::defining(spec);
        if let Some(text) = builtin_special_cases(spec.name) {
            set.extend_text(spec, text, "builtin").expect("built-in rules parse");
        }
        set
    }

    /// Hecke and braid relations only.
    pub fn defining(spec: &GroupSpec) -> Self {
        let mut rules = Vec::new();
        for (g, gd) in spec.generators.iter().enumerate() {
            let g = g as GenId;
            let e = gd.order as i32;
            rules.push(RewriteRule {
                kind: RuleKind::PositiveHecke,
                name: format!("hecke-{}", gd.name),
                vars: vec![],
                pattern: vec![(g, Exponent::constant(e))],
                replacement: (0..e)
                    .rev()
                    .map(|i| (gd.coeffs[i as usize].clone(), vec![(g, Exponent::constant(i))]))
                    .filter(|(c, _)| !c.is_zero())
                    .collect(),
            });
            let c0_inv = gd.constant().unit_inverse(spec.unit_params).expect("unit constant");
            let mut inv = vec![(c0_inv.clone(), vec![(g, Exponent::constant(e - 1))])];
            for i in (1..e).rev() {
                let c = -(&c0_inv * &gd.coeffs[i as usize]);
                if !c.is_zero() {
                    inv.push((c, vec![(g, Exponent::constant(i - 1))]));
                }
            }
            rules.push(RewriteRule {
                kind: RuleKind::InverseHecke,
                name: format!("inverse-hecke-{}", gd.name),
                vars: vec![],
                pattern: vec![(g, Exponent::constant(-1))],
                replacement: inv,
            });
            let mut eq: Vec<(LaurentPoly, Template)> = (1..e)
                .rev()
                .map(|i| (gd.coeffs[i as usize].clone(), vec![(g, Exponent::constant(i - 1))]))
                .filter(|(c, _)| !c.is_zero())
                .collect();
            eq.push((gd.constant().clone(), vec![(g, Exponent::constant(-1))]));
            rules.push(RewriteRule {
                kind: RuleKind::EquivalentPositive,
                name: format!("equivalent-hecke-{}", gd.name),
                vars: vec![],
                pattern: vec![(g, Exponent::constant(e - 1))],
                replacement: eq,
            });
        }
        let to_t = |w: &Word| -> Template {
            w.syllables().iter().map(|s| (s.gen, Exponent::constant(s.exp))).collect()
        };
        for (i, (l, r)) in spec.braid_relations.iter().enumerate() {
            rules.push(RewriteRule {
                kind: RuleKind::Braid,
                name: format!("braid-{}", i + 1),
                vars: vec![],
                pattern: to_t(l),
                replacement: vec![(LaurentPoly::one(), to_t(r))],
            });
        }
        Self {
            group: spec.name,
            rules,
            index: HashMap::new(),
            max_len: 0,
        }
    }

    /// Appends rules from text in the file grammar.
    pub fn extend_text(&mut self, spec: &GroupSpec, text: &str, source: &str) -> Result<()> {
        let parsed = parse_rules(spec, text, source)?;
        for r in parsed {
            self.push(r);
        }
        Ok(())
    }

    /// Appends a rule; an exact duplicate of an earlier rule is dropped.
    pub fn push(&mut self, rule: RewriteRule) {
        if self.rules.iter().any(|r| {
            r.kind == rule.kind && r.vars == rule.vars && r.pattern == rule.pattern && r.replacement == rule.replacement
        }) {
            return;
        }
        let k = self.rules.len();
        if rule.kind == RuleKind::SpecialCase {
            for (w, rep) in rule.instances() {
                let key = w.letters();
                if key.is_empty() || rep == Element::word(w.clone()) {
                    continue;
                }
                self.max_len = self.max_len.max(key.len());
                self.index.entry(key).or_insert((k, rep));
            }
        }
        self.rules.push(rule);
    }

    /// Rules of one kind, in priority order.
    pub fn of_kind(&self, kind: RuleKind) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().filter(move |r| r.kind == kind)
    }

    /// Special-case instances occurring as factors of `w`, ordered by rule
    /// priority, then leftmost start, then longest factor.
    pub fn matches(&self, w: &Word) -> Vec<Match> {
        let letters = w.letters();
        let mut out = Vec::new();
        for start in 0..letters.len() {
            let top = self.max_len.min(letters.len() - start);
            for len in 1..=top {
                if let Some((rule, rep)) = self.index.get(&letters[start..start + len]) {
                    out.push(Match {
                        rule: *rule,
                        start,
                        len,
                        replacement: rep.clone(),
                    });
                }
            }
        }
        out.sort_by(|a, b| (a.rule, a.start, std::cmp::Reverse(a.len)).cmp(&(b.rule, b.start, std::cmp::Reverse(b.len))));
        out
    }

    /// Canonical text of all rules, one per line.
    pub fn text(&self, spec: &GroupSpec) -> String {
        let mut s = String::new();
        for r in &self.rules {
            writeln!(s, "{:?} {}", r.kind, r.text(spec)).unwrap();
        }
        s
    }

    /// Hex SHA-256 of the group name and the canonical rule text.
    pub fn digest(&self, spec: &GroupSpec) -> String {
        let mut h = Sha256::new();
        h.update(self.group.to_string().as_bytes());
        h.update(b"\n");
        h.update(self.text(spec).as_bytes());
        hex::encode(h.finalize())
    }

    /// A copy without rule `k`.
    pub fn without(&self, k: usize) -> Self {
        let mut out = Self {
            group: self.group,
            rules: Vec::new(),
            index: HashMap::new(),
            max_len: 0,
        };
        for (i, r) in self.rules.iter().enumerate() {
            if i != k {
                out.push(r.clone());
            }
        }
        out
    }
}

/// Replaces the factor of a match inside `w`.
pub fn splice(w: &Word, m: &Match) -> Element {
    let letters = w.letters();
    let pre = Word::from_letters(&letters[..m.start]);
    let post = Word::from_letters(&letters[m.start + m.len..]);
    Element::from_terms(
        m.replacement
            .terms()
            .map(|(v, c)| (c.clone(), pre.mul(v).mul(&post))),
    )
}

fn builtin_special_cases(g: GroupName) -> Option<&'static str> {
    match g {
        GroupName::G6 => Some(G6_CASES),
        _ => None,
    }
}

const G6_CASES: &str = "\
var k in 1..3; var l1 in 0..1; var l2 in 0..1;
var m1 in 0..2; var m2 in 0..2; var n1 in 0..2; var n2 in 0..2;
case1: t^m1 s^l1 t^n1 z^k t^m2 s^l2 t^n2 -> z^k t^m1 s^l1 t^(n1+m2) s^l2 t^n2
var k in 0..2; var m in 0..2; var n in 0..2;
case2: z^k t^m s t s t^n -> z^(k+1) t^(m-1) s^-1 t^(n-1)
var k in 1..3;
case3: z^k t^m s t^2 s t^n -> c*z^k t^m s t s t^n + d*z^k t^m s^2 t^n + a*e*z^k t^(m-1) s t^n + a*b*e*z^k t^m s^-1 t^(n-1) + e*b^2*z^(k-1) t^(m+1) s t^(n+1)
case4: z^3 t^m s t s t^n -> a*z^3 t^(m+1) s t^n + a*b*z^3 t^m s^-1 t^(n+1) + c*b^2*z^3 t^m s^-2 t^n + d*b^2*z^2 t^(m+1) s t^(n+1) + a*b^2*e*z^2 t^(m+n+1) + b^3*e*z t^(m+1) s t^2 s t^(n+1)
case5: t^m s t^2 s t^n -> -a*b^-2*z t^m s t s t^(n-2) + b^-2*e^-1*z^2 t^(m-1) s^-1 t s t^(n-1) - b^-2*c*e^-1*z^2 t^(m+n-2) - a*b^-2*d*e^-1*z t^m s t s t^(n-1) - b^-1*d*e^-1*z t^m s t^n - a*b^-1*z t^(m+n-1)
case6: z^4 -> a*z^3 t s t s t + b*c*z^3 t s t + b*d*z^2 t s t s^2 t s t + a*b*e*z^2 t s^2 t s t + a*b^2*e*z^2 t s t^2 + b^3*e*c*z^2 s^-1 t s t + b^3*e*d*z t s^2 t^2 s t + a*b^3*e^2*z s t^2 s t + a*b^4*e^2*z t s^-1 t s t + b^5*e^2*t^2 s t^3 s t
";

/// Parses rule text. `source` names the origin in error messages.
pub fn parse_rules(spec: &GroupSpec, text: &str, source: &str) -> Result<Vec<RewriteRule>> {
    let mut ranges: BTreeMap<String, (i32, i32)> = BTreeMap::new();
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut col = 0;
        for stmt in line.split(';') {
            let offset = col + stmt.len() - stmt.trim_start().len();
            col += stmt.len() + 1;
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let err = |c: usize, msg: String| Error::RuleParse {
                line: ln + 1,
                col: offset + c + 1,
                msg,
            };
            if let Some(rest) = stmt.strip_prefix("var ") {
                let (name, range) = rest
                    .split_once(" in ")
                    .ok_or_else(|| err(0, "expected `var NAME in LO..HI`".into()))?;
                let name = name.trim();
                if !is_var_name(name) {
                    return Err(err(4, format!("bad variable name {name:?}")));
                }
                let (lo, hi) = range
                    .split_once("..")
                    .ok_or_else(|| err(0, "expected a range LO..HI".into()))?;
                let lo: i32 = lo.trim().parse().map_err(|_| err(0, "bad range bound".into()))?;
                let hi: i32 = hi.trim().parse().map_err(|_| err(0, "bad range bound".into()))?;
                ranges.insert(name.to_string(), (lo, hi));
                continue;
            }
            let (lhs, rhs) = stmt
                .split_once("->")
                .ok_or_else(|| err(0, "expected `PATTERN -> SUM`".into()))?;
            let (name, lhs, lhs_off) = match lhs.split_once(':') {
                Some((n, l)) => (n.trim().to_string(), l, n.len() + 1),
                None => (format!("{source}:{}", ln + 1), lhs, 0),
            };
            let mut p = TermParser::new(spec, lhs, lhs_off);
            let mut product = p.term().map_err(|(c, m)| err(c, m))?;
            p.end().map_err(|(c, m)| err(c, m))?;
            if product.len() != 1 || !product[0].0.is_one() {
                return Err(err(lhs_off, "a pattern is a single word".into()));
            }
            let pattern = product.pop().unwrap().1;
            let mut vars: Vec<VarRange> = Vec::new();
            for (_, e) in &pattern {
                if e.vars.is_empty() {
                    continue;
                }
                if !e.is_single_var() {
                    return Err(err(lhs_off, "pattern exponents are integers or variables".into()));
                }
                let v = &e.vars[0].0;
                if vars.iter().any(|r| &r.name == v) {
                    return Err(err(lhs_off, format!("variable {v} repeats in the pattern")));
                }
                let (lo, hi) = *ranges
                    .get(v)
                    .ok_or_else(|| err(lhs_off, format!("variable {v} has no range")))?;
                vars.push(VarRange { name: v.clone(), lo, hi });
            }
            let rhs_off = stmt.find("->").unwrap() + 2;
            let mut p = TermParser::new(spec, rhs, rhs_off);
            let replacement = p.sum().map_err(|(c, m)| err(c, m))?;
            p.end().map_err(|(c, m)| err(c, m))?;
            for (_, t) in &replacement {
                for (_, e) in t {
                    for (v, _) in &e.vars {
                        if !vars.iter().any(|r| &r.name == v) {
                            return Err(err(rhs_off, format!("variable {v} is not bound by the pattern")));
                        }
                    }
                }
            }
            out.push(RewriteRule {
                kind: RuleKind::SpecialCase,
                name,
                vars,
                pattern,
                replacement,
            });
        }
    }
    Ok(out)
}

fn is_var_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

type PResult<T> = std::result::Result<T, (usize, String)>;

struct TermParser<'a> {
    spec: &'a GroupSpec,
    src: Vec<char>,
    pos: usize,
    offset: usize,
}

impl<'a> TermParser<'a> {
    fn new(spec: &'a GroupSpec, text: &str, offset: usize) -> Self {
        Self {
            spec,
            src: text.chars().collect(),
            pos: 0,
            offset,
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err((self.offset + self.pos, msg.into()))
    }

    fn peek(&mut self) -> Option<char> {
        while self.pos < self.src.len() && self.src[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn end(&mut self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.fail(format!("unexpected {c:?}")),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        self.peek();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.src[start..self.pos].iter().collect();
        s.parse().or_else(|_| {
            self.pos = start;
            self.fail("expected an integer")
        })
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        self.src[start..self.pos].iter().collect()
    }

    fn exponent(&mut self) -> PResult<Exponent> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let mut e = Exponent::constant(0);
                let mut first = true;
                loop {
                    let sign = match self.peek() {
                        Some(')') if !first => {
                            self.pos += 1;
                            break;
                        }
                        Some('+') => {
                            self.pos += 1;
                            1
                        }
                        Some('-') => {
                            self.pos += 1;
                            -1
                        }
                        _ if first => 1,
                        _ => return self.fail("expected `+`, `-` or `)`"),
                    };
                    first = false;
                    match self.peek() {
                        Some(c) if c.is_ascii_digit() => {
                            let k = self.int()? as i32;
                            if self.peek() == Some('*') {
                                self.pos += 1;
                                self.peek();
                                let v = self.ident();
                                if !is_var_name(&v) {
                                    return self.fail("expected a variable");
                                }
                                e.vars.push((v, sign * k));
                            } else {
                                e.constant += sign * k;
                            }
                        }
                        Some(c) if c.is_ascii_lowercase() => {
                            let v = self.ident();
                            e.vars.push((v, sign));
                        }
                        _ => return self.fail("expected a number or variable"),
                    }
                }
                let mut merged: BTreeMap<String, i32> = BTreeMap::new();
                for (v, k) in e.vars.drain(..) {
                    *merged.entry(v).or_default() += k;
                }
                e.vars = merged.into_iter().filter(|(_, k)| *k != 0).collect();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' => Ok(Exponent::constant(self.int()? as i32)),
            Some(c) if c.is_ascii_lowercase() => {
                let v = self.ident();
                Ok(Exponent::var(&v))
            }
            _ => self.fail("expected an exponent"),
        }
    }

    /// A product of coefficient factors, generator powers and parenthesised
    /// sums, expanded into terms.
    fn term(&mut self) -> PResult<Vec<(LaurentPoly, Template)>> {
        let mut acc: Vec<(LaurentPoly, Template)> = vec![(LaurentPoly::one(), Vec::new())];
        let scale = |acc: &mut Vec<(LaurentPoly, Template)>, p: &LaurentPoly| {
            for (c, _) in acc.iter_mut() {
                *c = &*c * p;
            }
        };
        let mut any = false;
        loop {
            match self.peek() {
                Some('*') if any => {
                    self.pos += 1;
                    continue;
                }
                Some('(') => {
                    let start = self.pos + 1;
                    let mut depth = 0;
                    let mut end = None;
                    for i in self.pos..self.src.len() {
                        match self.src[i] {
                            '(' => depth += 1,
                            ')' => {
                                depth -= 1;
                                if depth == 0 {
                                    end = Some(i);
                                    break;
                                }
                            }
                            _ => {}
                        }
                    }
                    let Some(end) = end else { return self.fail("unclosed parenthesis") };
                    let inner: String = self.src[start..end].iter().collect();
                    match inner.parse::<LaurentPoly>() {
                        Ok(p) => scale(&mut acc, &p),
                        Err(_) => {
                            let mut sub = TermParser::new(self.spec, &inner, self.offset + start);
                            let sum = sub.sum()?;
                            sub.end()?;
                            let mut next = Vec::with_capacity(acc.len() * sum.len());
                            for (c, t) in &acc {
                                for (c2, t2) in &sum {
                                    let mut w = t.clone();
                                    w.extend(t2.iter().cloned());
                                    next.push((c * c2, w));
                                }
                            }
                            acc = next;
                        }
                    }
                    self.pos = end + 1;
                }
                Some(c) if c.is_ascii_digit() => {
                    let k = self.int()?;
                    scale(&mut acc, &LaurentPoly::constant(k));
                }
                Some(c) if c.is_ascii_lowercase() => {
                    let start = self.pos;
                    let id = self.ident();
                    if id.chars().any(|c| !c.is_ascii_lowercase()) {
                        self.pos -= id.len();
                        return self.fail(format!("unexpected {id:?}"));
                    }
                    let chars: Vec<char> = id.chars().collect();
                    for (i, &c) in chars.iter().enumerate() {
                        let last = i + 1 == chars.len();
                        let has_exp = last && self.src.get(self.pos) == Some(&'^');
                        if let Some(g) = self.spec.gen_id(c) {
                            let e = if has_exp {
                                self.pos += 1;
                                self.exponent()?
                            } else {
                                Exponent::constant(1)
                            };
                            for (_, t) in acc.iter_mut() {
                                t.push((g, e.clone()));
                            }
                        } else if self.spec.params.contains(&c) {
                            let k = if has_exp {
                                self.pos += 1;
                                self.int()? as i32
                            } else {
                                1
                            };
                            scale(&mut acc, &param_pow(self.spec, c, k));
                        } else {
                            self.pos = start + i;
                            return self.fail(format!("unknown symbol {c:?}"));
                        }
                    }
                }
                _ => break,
            }
            any = true;
        }
        if !any {
            return self.fail("expected a term");
        }
        Ok(acc)
    }

    fn sum(&mut self) -> PResult<Vec<(LaurentPoly, Template)>> {
        let mut out = Vec::new();
        let mut sign = 1;
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -1;
        }
        loop {
            for (c, w) in self.term()? {
                out.push((if sign < 0 { -c } else { c }, w));
            }
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => break,
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        Ok(out)
    }
}

fn param_pow(spec: &GroupSpec, c: char, k: i32) -> LaurentPoly {
    let (m, _) = spec.param(c).terms()[0].clone();
    LaurentPoly::monomial(1, m.pow(k))
}

/// Parses a sum such as `a*z^11 t + b*z^10 t u t` into an element.
pub fn parse_element(spec: &GroupSpec, text: &str) -> Result<Element> {
    if text.trim().is_empty() {
        return Ok(Element::word(Word::identity()));
    }
    let mut p = TermParser::new(spec, text, 0);
    let err = |(pos, msg): (usize, String)| Error::WordParse { pos, msg };
    let terms = p.sum().map_err(err)?;
    p.end().map_err(err)?;
    let env = HashMap::new();
    let mut out = Element::zero();
    for (c, t) in terms {
        if t.iter().any(|(_, e)| !e.vars.is_empty()) {
            return Err(Error::WordParse {
                pos: 0,
                msg: "exponent variables are not allowed here".into(),
            });
        }
        out.add_term(c, instantiate(&t, &env));
    }
    Ok(out)
}
