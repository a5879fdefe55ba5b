//! Construction of the left and right multiplication operators on the basis
//! by deduction: known products of generators with basis words seed the
//! columns, and consequences of the defining relations fill in the rest.

use std::collections::{BTreeMap, HashMap, HashSet};

use heckekit_laurent::{LaurentPoly, VarSet};

use super::braid::{Key, Keyer};
use super::tables::{combine, OpLetter, OperatorTables, Side};
use crate::algebra::{BasisCombo, GenId, GroupSpec, Word, Z};
use crate::{Error, Result};

type OpWord = Vec<OpLetter>;

const SIDES: [Side; 2] = [Side::Left, Side::Right];

/// Unknown column `(side, op, position)`; central columns always use `Left`.
type ColKey = (Side, usize, usize);

struct Op {
    gen: GenId,
    order: usize,
    coeffs: Vec<LaurentPoly>,
    c0_inv: LaurentPoly,
}

struct Equation {
    coefs: BTreeMap<ColKey, LaurentPoly>,
    rhs: BasisCombo,
}

/// Progress report of one deduction pass.
#[derive(Clone, Debug)]
pub struct PassStats {
    pub pass: usize,
    pub missing_left: usize,
    pub missing_right: usize,
    pub solved_linear: usize,
    pub eliminated: usize,
    pub pending_relations: usize,
    /// Unknown columns as `(is_left, op, position)`.
    pub unknown: Vec<(bool, usize, usize)>,
}

pub struct Enumerator<'a> {
    spec: &'a GroupSpec,
    n: usize,
    /// Basis size plus the auxiliary vectors `z·b` for `b` in the top block.
    nt: usize,
    extra_words: Vec<Word>,
    /// Expressions of auxiliary vectors that have been eliminated.
    sub: Vec<Option<BasisCombo>>,
    pending: Vec<BasisCombo>,
    /// `z⁻¹` as a combination of words free of `z⁻¹`.
    zinv_expr: Vec<(LaurentPoly, OpWord)>,
    eliminated: Option<(GenId, OpWord)>,
    ops: Vec<Op>,
    zop: usize,
    units: VarSet,
    cols: [Vec<Vec<Option<BasisCombo>>>; 2],
    relators: Vec<OpWord>,
    linear: Vec<Vec<(LaurentPoly, OpWord)>>,
    basis_words: Vec<OpWord>,
    gen_index: Vec<Option<usize>>,
    eqs: Vec<Equation>,
    progress: bool,
    inv: [Vec<Vec<Option<BasisCombo>>>; 2],
    closed: HashSet<(u8, usize, usize, usize)>,
}

fn side_ix(s: Side) -> usize {
    match s {
        Side::Left => 0,
        Side::Right => 1,
    }
}

fn inverse_word(w: &[OpLetter]) -> OpWord {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn rotations(w: &[OpLetter]) -> Vec<OpWord> {
    let mut out = Vec::new();
    for word in [w.to_vec(), inverse_word(w)] {
        for i in 0..word.len() {
            let mut r = word[i..].to_vec();
            r.extend_from_slice(&word[..i]);
            out.push(r);
        }
    }
    out
}

impl<'a> Enumerator<'a> {
    pub fn new(spec: &'a GroupSpec) -> Result<Self> {
        Self::with_elimination(spec, true)
    }

    /// Like [`Enumerator::new`]; `eliminate = false` keeps every generator
    /// as an operator even when the presentation names one to eliminate.
    pub fn with_elimination(spec: &'a GroupSpec, eliminate: bool) -> Result<Self> {
        let elim = if eliminate { spec.elimination.as_ref().map(|e| e.gen) } else { None };
        let gens: Vec<GenId> = (0..spec.generators.len() as GenId)
            .filter(|g| Some(*g) != elim)
            .collect();
        let units = spec.unit_params;
        let mut ops = Vec::new();
        for &g in &gens {
            let gd = spec.generator(g);
            let c0_inv = gd.constant().unit_inverse(units).ok_or_else(|| {
                Error::Bootstrap(format!("constant term of {} is not a unit", gd.name))
            })?;
            ops.push(Op {
                gen: g,
                order: gd.order,
                coeffs: gd.coeffs.clone(),
                c0_inv,
            });
        }
        let zop = ops.len();
        let n = spec.order();
        let to_op = |g: GenId| -> Option<usize> {
            if g == Z {
                Some(zop)
            } else {
                gens.iter().position(|&h| h == g)
            }
        };
        let conv = |w: &Word| -> Option<OpWord> {
            w.letters()
                .into_iter()
                .map(|(g, e)| to_op(g).map(|o| (o, e)))
                .collect()
        };

        let mut relators: HashSet<OpWord> = HashSet::new();
        for (l, r) in &spec.braid_relations {
            if let (Some(l), Some(r)) = (conv(l), conv(r)) {
                let mut w = l;
                w.extend(inverse_word(&r));
                relators.extend(rotations(&w));
            }
        }
        if let Some(zw) = conv(&spec.center_word) {
            let mut w = vec![(zop, -1)];
            w.extend(zw);
            relators.extend(rotations(&w));
        }
        for o in 0..zop {
            relators.extend(rotations(&[(zop, 1), (o, 1), (zop, -1), (o, -1)]));
        }
        let mut relators: Vec<OpWord> = relators.into_iter().collect();
        relators.sort();

        let mut eliminated = None;
        let (linear, zinv_expr) = match spec.elimination.as_ref().filter(|_| eliminate) {
            Some(e) => {
                let cof = conv(&e.cofactor)
                    .ok_or_else(|| Error::Bootstrap("cofactor uses the eliminated generator".into()))?;
                eliminated = Some((e.gen, cof.clone()));
                (linear_relations(spec, e.gen, &cof, zop), eliminated_zinv(spec, e.gen, &cof, zop))
            }
            None => {
                let zw = conv(&spec.center_word)
                    .ok_or_else(|| Error::Bootstrap("centre word uses an eliminated generator".into()))?;
                (Vec::new(), vec![(LaurentPoly::one(), inverse_word(&zw))])
            }
        };

        let basis_words: Vec<OpWord> = spec
            .basis
            .iter()
            .map(|w| conv(w).ok_or_else(|| Error::Bootstrap("basis uses eliminated generator".into())))
            .collect::<Result<_>>()?;
        let gen_index = (0..=zop)
            .map(|o| spec.basis_index(&Word::gen_pow(if o == zop { Z } else { gens[o] }, 1)))
            .collect();

        let top = spec.center_order as i32 - 1;
        let extra_words: Vec<Word> = (0..n)
            .filter(|&i| spec.basis_parts(i).0 == top)
            .map(|i| Word::z_pow(1).mul(&spec.basis[i]))
            .collect();
        let nt = n + extra_words.len();
        let mut me = Self {
            spec,
            n,
            nt,
            extra_words,
            sub: vec![None; nt],
            pending: Vec::new(),
            zinv_expr,
            eliminated,
            cols: [vec![vec![None; nt]; zop + 1], vec![vec![None; nt]; zop + 1]],
            ops,
            zop,
            units,
            relators,
            linear,
            basis_words,
            gen_index,
            eqs: Vec::new(),
            progress: false,
            inv: [vec![vec![None; nt]; zop + 1], vec![vec![None; nt]; zop + 1]],
            closed: HashSet::new(),
        };
        me.seed();
        Ok(me)
    }

    /// Columns that are a single basis element, found by comparing braid keys.
    fn seed(&mut self) {
        let keyer = Keyer::new(self.spec);
        let mut key_of: HashMap<Key, usize> = HashMap::new();
        let words: Vec<Word> = self.spec.basis.iter().chain(&self.extra_words).cloned().collect();
        for (i, w) in words.iter().enumerate() {
            let k = keyer.key(0, w);
            let prev = key_of.insert(k, i);
            assert!(prev.is_none(), "basis words {i} and {prev:?} are equal braids");
        }
        let idx = |w: &Word| key_of.get(&keyer.key(0, w)).copied();
        for i in 0..self.n {
            let b = self.spec.basis[i].clone();
            for o in 0..self.zop {
                let g = self.ops[o].gen;
                let gw = Word::gen_pow(g, 1);
                let gi = Word::gen_pow(g, -1);
                if let Some(j) = idx(&gw.mul(&b)) {
                    self.set(Side::Left, o, i, BasisCombo::unit(j));
                }
                if let Some(j) = idx(&b.mul(&gw)) {
                    self.set(Side::Right, o, i, BasisCombo::unit(j));
                }
                if let Some(j) = idx(&gi.mul(&b)) {
                    self.set(Side::Left, o, j, BasisCombo::unit(i));
                    self.inv[0][o][i] = Some(BasisCombo::unit(j));
                }
                if let Some(j) = idx(&b.mul(&gi)) {
                    self.set(Side::Right, o, j, BasisCombo::unit(i));
                    self.inv[1][o][i] = Some(BasisCombo::unit(j));
                }
            }
            if let Some(j) = idx(&Word::z_pow(1).mul(&b)) {
                self.set(Side::Left, self.zop, i, BasisCombo::unit(j));
            }
            if let Some(j) = idx(&Word::z_pow(-1).mul(&b)) {
                self.inv[0][self.zop][i] = Some(BasisCombo::unit(j));
            }
        }
    }

    fn get(&self, side: Side, op: usize, j: usize) -> Option<&BasisCombo> {
        let s = if op == self.zop { 0 } else { side_ix(side) };
        self.cols[s][op][j].as_ref()
    }

    fn set(&mut self, side: Side, op: usize, j: usize, v: BasisCombo) {
        let s = if op == self.zop { 0 } else { side_ix(side) };
        if self.sub[j].is_some() {
            return;
        }
        match &self.cols[s][op][j] {
            None => {
                self.cols[s][op][j] = Some(v);
                self.progress = true;
            }
            Some(old) => {
                if *old != v {
                    let r = old.sub(&v);
                    self.relation(r);
                }
            }
        }
    }

    /// Replaces eliminated auxiliary vectors by their expressions.
    fn reduce(&self, v: &BasisCombo) -> BasisCombo {
        if v.iter().all(|(l, _)| self.sub[l].is_none()) {
            return v.clone();
        }
        let mut out = BasisCombo::zero();
        for (l, x) in v.iter() {
            match &self.sub[l] {
                Some(e) => out = out.add_scaled(e, x),
                None => out = out.add_scaled(&BasisCombo::unit(l), x),
            }
        }
        out
    }

    /// Records a linear relation `Σ c_l e_l = 0` between module vectors.
    fn relation(&mut self, r: BasisCombo) {
        let r = self.reduce(&r);
        if !r.is_zero() && !self.pending.contains(&r) {
            self.pending.push(r);
        }
    }

    /// Eliminates auxiliary vectors through recorded relations with a unit
    /// coefficient. A relation among basis vectors alone is an error.
    fn process_relations(&mut self) -> Result<()> {
        loop {
            let pending = std::mem::take(&mut self.pending);
            let mut rest = Vec::new();
            let mut pick = None;
            for r in pending {
                let r = self.reduce(&r);
                if r.is_zero() {
                    continue;
                }
                if pick.is_none() {
                    let v = r
                        .iter()
                        .filter(|(l, x)| *l >= self.n && x.unit_inverse(self.units).is_some())
                        .map(|(l, _)| l)
                        .max();
                    if let Some(v) = v {
                        pick = Some((v, r));
                        continue;
                    }
                    if r.iter().all(|(l, _)| l < self.n) {
                        return Err(Error::Bootstrap(format!(
                            "relation among basis elements: {}",
                            r.to_text()
                        )));
                    }
                }
                rest.push(r);
            }
            self.pending = rest;
            let Some((v, r)) = pick else { return Ok(()) };
            let cv = r.get(v);
            let inv = cv.unit_inverse(self.units).unwrap();
            let expr = r.sub(&BasisCombo::monomial(v, cv)).scale(&-inv);
            self.eliminate(v, expr);
        }
    }

    fn eliminate(&mut self, v: usize, expr: BasisCombo) {
        for l in 0..self.nt {
            if let Some(e) = &self.sub[l] {
                if e.get(v).is_zero() {
                    continue;
                }
                let e = e.add_scaled(&expr, &e.get(v)).sub(&BasisCombo::monomial(v, e.get(v)));
                self.sub[l] = Some(e);
            }
        }
        self.sub[v] = Some(expr);
        for tables in [&mut self.cols, &mut self.inv] {
            for side in tables.iter_mut() {
                for col in side.iter_mut() {
                    col[v] = None;
                }
            }
        }
        let sub = &self.sub;
        let red = |c: &BasisCombo| -> BasisCombo {
            let mut out = BasisCombo::zero();
            for (l, x) in c.iter() {
                match &sub[l] {
                    Some(e) => out = out.add_scaled(e, x),
                    None => out = out.add_scaled(&BasisCombo::unit(l), x),
                }
            }
            out
        };
        for tables in [&mut self.cols, &mut self.inv] {
            for side in tables.iter_mut() {
                for col in side.iter_mut() {
                    for c in col.iter_mut().flatten() {
                        if c.get(v).is_zero() {
                            continue;
                        }
                        *c = red(c);
                    }
                }
            }
        }
        self.eqs.clear();
        self.progress = true;
    }

    fn norm_key(&self, side: Side, op: usize, j: usize) -> ColKey {
        if op == self.zop {
            (Side::Left, op, j)
        } else {
            (side, op, j)
        }
    }

    fn apply(&self, side: Side, op: usize, v: &BasisCombo) -> Option<BasisCombo> {
        let mut cols = Vec::with_capacity(v.len());
        for (l, x) in v.iter() {
            cols.push((self.get(side, op, l)?, x));
        }
        Some(combine(self.nt, cols))
    }

    /// Column of `g⁻¹` at `e_l`, computed from the Hecke relation when the
    /// powers of `g` on `e_l` are known.
    fn inv_col(&mut self, side: Side, op: usize, l: usize) -> Option<BasisCombo> {
        let s = if op == self.zop { 0 } else { side_ix(side) };
        if let Some(c) = &self.inv[s][op][l] {
            return Some(c.clone());
        }
        if op == self.zop {
            let expr = self.zinv_expr.clone();
            let el = BasisCombo::unit(l);
            let mut acc = BasisCombo::zero();
            for (c, w) in &expr {
                acc = acc.add_scaled(&self.apply_word(Side::Left, w, &el)?, c);
            }
            self.inv[0][op][l] = Some(acc.clone());
            return Some(acc);
        }
        let o = &self.ops[op];
        let (order, coeffs, c0_inv) = (o.order, o.coeffs.clone(), o.c0_inv.clone());
        let mut pw = vec![BasisCombo::unit(l)];
        for _ in 1..order {
            let next = self.apply(side, op, pw.last().unwrap())?;
            pw.push(next);
        }
        let mut r = pw[order - 1].clone();
        for i in 1..order {
            r = r.add_scaled(&pw[i - 1], &-&coeffs[i]);
        }
        let r = r.scale(&c0_inv);
        self.inv[s][op][l] = Some(r.clone());
        Some(r)
    }

    fn apply_signed(&mut self, side: Side, op: usize, e: i8, v: &BasisCombo) -> Option<BasisCombo> {
        if e > 0 {
            return self.apply(side, op, v);
        }
        let mut cols = Vec::with_capacity(v.len());
        for (l, x) in v.iter() {
            cols.push((self.inv_col(side, op, l)?, x));
        }
        Some(combine(self.nt, cols.iter().map(|(c, x)| (c, *x))))
    }

    /// Applies a word: for left operators the last letter acts first.
    fn apply_word(&mut self, side: Side, w: &[OpLetter], v: &BasisCombo) -> Option<BasisCombo> {
        let mut cur = v.clone();
        let seq: Box<dyn Iterator<Item = &OpLetter>> = match side {
            Side::Left => Box::new(w.iter().rev()),
            Side::Right => Box::new(w.iter()),
        };
        for &(g, e) in seq {
            cur = self.apply_signed(side, g, e, &cur)?;
        }
        Some(cur)
    }

    /// Records `Σ_l u_l · col(side, op, l) = target`.
    fn solve(&mut self, side: Side, op: usize, u: &BasisCombo, target: &BasisCombo) {
        let mut known = BasisCombo::zero();
        let mut unknown: BTreeMap<ColKey, LaurentPoly> = BTreeMap::new();
        for (l, x) in u.iter() {
            match self.get(side, op, l) {
                Some(c) => known = known.add_scaled(c, x),
                None => {
                    unknown.insert(self.norm_key(side, op, l), x.clone());
                }
            }
        }
        let rhs = target.sub(&known);
        if unknown.is_empty() {
            if !rhs.is_zero() {
                self.relation(rhs);
            }
            return;
        }
        if unknown.len() == 1 {
            let (k, x) = unknown.iter().next().unwrap();
            if let Some(inv) = x.unit_inverse(self.units) {
                let (s, o, l) = *k;
                self.set(s, o, l, rhs.scale(&inv));
                return;
            }
        }
        self.eqs.push(Equation { coefs: unknown, rhs });
    }

    fn hecke(&mut self, side: Side) {
        for op in 0..self.zop {
            let order = self.ops[op].order;
            for j in 0..self.n {
                let mut vs = vec![BasisCombo::unit(j)];
                for _ in 1..order {
                    match self.apply(side, op, vs.last().unwrap()) {
                        Some(x) => vs.push(x),
                        None => break,
                    }
                }
                if vs.len() < order {
                    continue;
                }
                let mut tgt = BasisCombo::zero();
                for (i, v) in vs.iter().enumerate() {
                    tgt = tgt.add_scaled(v, &self.ops[op].coeffs[i]);
                }
                let last = vs.pop().unwrap();
                self.solve(side, op, &last, &tgt);
            }
        }
    }

    /// Uses a relator `x_1 … x_k = 1` on `b_j`.
    fn scan(&mut self, side: Side, word: &[OpLetter], j: usize) -> bool {
        let seq: Vec<OpLetter> = match side {
            Side::Left => word.iter().rev().copied().collect(),
            Side::Right => word.to_vec(),
        };
        let ej = BasisCombo::unit(j);
        let mut u = ej.clone();
        for &(g, e) in &seq[..seq.len() - 1] {
            match self.apply_signed(side, g, e, &u) {
                Some(x) => u = x,
                None => return false,
            }
        }
        let (g, e) = seq[seq.len() - 1];
        if e > 0 {
            self.solve(side, g, &u, &ej);
            self.apply(side, g, &u).is_some()
        } else {
            self.solve(side, g, &ej, &u);
            self.apply(side, g, &ej).is_some()
        }
    }

    /// Uses a linear relation `Σ c_i w_i = 0` on `b_j`.
    fn scan_linear(&mut self, side: Side, rel: &[(LaurentPoly, OpWord)], j: usize) -> bool {
        let ej = BasisCombo::unit(j);
        let vals: Vec<Option<BasisCombo>> =
            rel.iter().map(|(_, w)| self.apply_word(side, w, &ej)).collect();
        if vals.iter().all(Option::is_some) {
            return true;
        }
        for (i0, (c0, w0)) in rel.iter().enumerate() {
            if w0.is_empty() {
                continue;
            }
            let mut other = BasisCombo::zero();
            let mut ok = true;
            for (i, (c, _)) in rel.iter().enumerate() {
                if i == i0 {
                    continue;
                }
                match &vals[i] {
                    Some(v) => other = other.add_scaled(v, &-c),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let ((g, e), pre) = match side {
                Side::Left => (w0[0], &w0[1..]),
                Side::Right => (w0[w0.len() - 1], &w0[..w0.len() - 1]),
            };
            let Some(u) = self.apply_word(side, pre, &ej) else {
                continue;
            };
            if e > 0 {
                self.solve(side, g, &u.scale(c0), &other);
            } else if !other.is_zero() {
                // c0·g⁻¹u = other  ⇔  g·other = c0·u
                self.solve(side, g, &other, &u.scale(c0));
            }
        }
        false
    }

    fn commute(&mut self) {
        for g in 0..self.zop {
            for h in 0..self.zop {
                for i in 0..self.n {
                    let (Some(rh), Some(lg)) = (
                        self.get(Side::Right, h, i).cloned(),
                        self.get(Side::Left, g, i).cloned(),
                    ) else {
                        continue;
                    };
                    let lhs = self.apply(Side::Left, g, &rh);
                    let rhs = self.apply(Side::Right, h, &lg);
                    match (lhs, rhs) {
                        (Some(l), None) => self.solve(Side::Right, h, &lg, &l),
                        (None, Some(r)) => self.solve(Side::Left, g, &rh, &r),
                        _ => {}
                    }
                }
            }
        }
    }

    /// `g·b_j` equals `b_g · w_j` computed with right operators, and dually.
    fn assoc(&mut self) {
        for j in 0..self.n {
            let w = self.basis_words[j].clone();
            for g in 0..=self.zop {
                let Some(gi) = self.gen_index[g] else { continue };
                let eg = BasisCombo::unit(gi);
                if self.get(Side::Left, g, j).is_none() {
                    if let Some(v) = self.apply_word(Side::Right, &w, &eg) {
                        self.set(Side::Left, g, j, v);
                    }
                }
                if g < self.zop && self.get(Side::Right, g, j).is_none() {
                    if let Some(v) = self.apply_word(Side::Left, &w, &eg) {
                        self.set(Side::Right, g, j, v);
                    }
                }
            }
        }
    }

    fn refresh_zinv(&mut self) {
        for i in 0..self.n {
            if let Some(c) = self.get(Side::Left, self.zop, i) {
                if c.len() == 1 {
                    let (j, x) = c.iter().next().unwrap();
                    if let Some(inv) = x.unit_inverse(self.units) {
                        self.inv[0][self.zop][j] = Some(BasisCombo::monomial(i, inv));
                    }
                }
            }
        }
    }

    fn col_known(&self, k: &ColKey) -> Option<&BasisCombo> {
        self.get(k.0, k.1, k.2)
    }

    /// Gaussian elimination over the collected multi-unknown equations.
    fn linsolve(&mut self) -> usize {
        let eqs = std::mem::take(&mut self.eqs);
        let one = LaurentPoly::one();
        let mut piv: HashMap<ColKey, (BTreeMap<ColKey, LaurentPoly>, BasisCombo)> = HashMap::new();
        let mut order: Vec<ColKey> = Vec::new();
        let mut solved = 0;
        for Equation { mut coefs, rhs } in eqs {
            let mut rhs = self.reduce(&rhs);
            let keys: Vec<ColKey> = coefs.keys().copied().collect();
            for k in keys {
                if let Some(c) = self.col_known(&k) {
                    let x = coefs.remove(&k).unwrap();
                    rhs = rhs.add_scaled(c, &-&x);
                }
            }
            for k in &order {
                let Some(x) = coefs.get(k).cloned() else { continue };
                let (pc, pr) = &piv[k];
                let y = &pc[k];
                let (m1, m2) = match y.unit_inverse(self.units) {
                    Some(inv) => (one.clone(), &x * &inv),
                    None => (y.clone(), x),
                };
                let mut nc: BTreeMap<ColKey, LaurentPoly> = BTreeMap::new();
                let all: HashSet<ColKey> = coefs.keys().chain(pc.keys()).copied().collect();
                for kk in all {
                    let a = coefs.get(&kk).map(|c| c * &m1).unwrap_or_default();
                    let b = pc.get(&kk).map(|c| c * &m2).unwrap_or_default();
                    let v = &a - &b;
                    if !v.is_zero() {
                        nc.insert(kk, v);
                    }
                }
                coefs = nc;
                rhs = rhs.scale(&m1).add_scaled(pr, &-&m2);
            }
            if coefs.is_empty() {
                if !rhs.is_zero() {
                    self.relation(rhs);
                }
                continue;
            }
            if coefs.len() == 1 {
                let (k, x) = coefs.iter().next().unwrap();
                let mut v = Vec::new();
                let mut exact = true;
                for (l, y) in rhs.iter() {
                    match y.exact_div(x) {
                        Some(q) => v.push((l, q)),
                        None => {
                            exact = false;
                            break;
                        }
                    }
                }
                if exact && self.col_known(k).is_none() {
                    let (s, o, l) = *k;
                    self.set(s, o, l, BasisCombo::from_entries(v));
                    solved += 1;
                }
                continue;
            }
            let k = coefs
                .iter()
                .find(|(_, c)| c.unit_inverse(self.units).is_some())
                .map(|(k, _)| *k)
                .unwrap_or_else(|| *coefs.iter().min_by_key(|(_, c)| c.len()).unwrap().0);
            piv.insert(k, (coefs, rhs));
            order.push(k);
        }
        solved
    }

    fn unknown_columns(&self) -> Vec<(bool, usize, usize)> {
        let mut out = Vec::new();
        for (s, cols) in self.cols.iter().enumerate() {
            for (op, col) in cols.iter().enumerate() {
                if s == 1 && op == self.zop {
                    continue;
                }
                for (j, c) in col[..self.n].iter().enumerate() {
                    if c.is_none() {
                        out.push((s == 0, op, j));
                    }
                }
            }
        }
        out
    }

    fn missing(&self) -> (usize, usize) {
        let n = self.n;
        let l = self.cols[0].iter().flat_map(|c| &c[..n]).filter(|c| c.is_none()).count();
        let r = self.cols[1][..self.zop]
            .iter()
            .flat_map(|c| &c[..n])
            .filter(|c| c.is_none())
            .count();
        (l, r)
    }

    /// Number of basis columns that still mention an auxiliary vector.
    fn auxiliary_refs(&self) -> usize {
        let n = self.n;
        self.cols
            .iter()
            .flatten()
            .flat_map(|c| &c[..n])
            .flatten()
            .filter(|c| c.max_index().is_some_and(|m| m >= n))
            .count()
    }

    /// Runs deduction passes until every column is known.
    pub fn run(
        mut self,
        max_passes: usize,
        mut log: impl FnMut(&PassStats),
    ) -> Result<OperatorTables> {
        for pass in 1..=max_passes {
            self.progress = false;
            self.eqs.clear();
            self.refresh_zinv();
            loop {
                self.progress = false;
                self.hecke(Side::Left);
                self.hecke(Side::Right);
                self.commute();
                self.assoc();
                self.process_relations()?;
                if !self.progress {
                    break;
                }
            }
            self.progress = false;
            if self.missing() == (0, 0) && self.auxiliary_refs() == 0 {
                return Ok(self.finish());
            }
            let relators = std::mem::take(&mut self.relators);
            let linear = std::mem::take(&mut self.linear);
            for side in SIDES {
                let sx = side_ix(side) as u8;
                for (ri, w) in relators.iter().enumerate() {
                    for j in 0..self.n {
                        if !self.closed.contains(&(sx, 0, ri, j)) && self.scan(side, w, j) {
                            self.closed.insert((sx, 0, ri, j));
                        }
                    }
                }
                for (ri, r) in linear.iter().enumerate() {
                    for j in 0..self.n {
                        if !self.closed.contains(&(sx, 1, ri, j)) && self.scan_linear(side, r, j) {
                            self.closed.insert((sx, 1, ri, j));
                        }
                    }
                }
            }
            self.relators = relators;
            self.linear = linear;
            self.commute();
            self.assoc();
            let mut solved = 0;
            if self.missing() != (0, 0) && !self.progress {
                solved = self.linsolve();
            }
            self.process_relations()?;
            let (ml, mr) = self.missing();
            let aux = self.auxiliary_refs();
            log(&PassStats {
                pass,
                missing_left: ml,
                missing_right: mr,
                solved_linear: solved,
                eliminated: self.sub.iter().filter(|x| x.is_some()).count(),
                pending_relations: self.pending.len(),
                unknown: self.unknown_columns(),
            });
            if (ml, mr, aux) == (0, 0, 0) {
                return Ok(self.finish());
            }
            if !self.progress {
                return Err(Error::Bootstrap(format!(
                    "no deduction applies; {ml} left and {mr} right columns remain"
                )));
            }
        }
        Err(Error::Bootstrap(format!("gave up after {max_passes} passes")))
    }

    fn finish(mut self) -> OperatorTables {
        let gens = self.ops.iter().map(|o| o.gen).collect();
        let n = self.n;
        let mut inv = [Vec::new(), Vec::new()];
        for (s, side) in SIDES.into_iter().enumerate() {
            for op in 0..=self.zop {
                let col: Vec<BasisCombo> = (0..n)
                    .map(|l| {
                        let c = self.inv_col(side, op, l).expect("complete tables");
                        assert!(c.max_index().is_none_or(|m| m < n));
                        c
                    })
                    .collect();
                inv[s].push(col);
            }
        }
        let eliminated = self.eliminated.take();
        let [left_inv, right_inv] = inv;
        let [l, r] = self.cols;
        let left: Vec<Vec<BasisCombo>> = l
            .into_iter()
            .map(|col| col.into_iter().take(n).map(Option::unwrap).collect())
            .collect();
        let mut right: Vec<Vec<BasisCombo>> = r
            .into_iter()
            .take(self.zop)
            .map(|col| col.into_iter().take(n).map(Option::unwrap).collect())
            .collect();
        right.push(left[self.zop].clone());
        OperatorTables {
            gens,
            left,
            right,
            left_inv,
            right_inv,
            eliminated,
        }
    }
}

const CONJUGATION_DEPTH: usize = 1;

/// `z⁻¹ = P⁻¹x⁻¹` for an eliminated generator `x = z·P⁻¹` with Hecke relation
/// `x^e = Σ c_i x^i`: `x⁻¹ = c_0⁻¹(x^{e-1} - Σ_{i≥1} c_i x^{i-1})` and
/// `x^i = z^i P^{-i}`.
fn eliminated_zinv(
    spec: &GroupSpec,
    x: GenId,
    cof: &[OpLetter],
    zop: usize,
) -> Vec<(LaurentPoly, OpWord)> {
    let gd = spec.generator(x);
    let e = gd.order;
    let c0_inv = gd.constant().unit_inverse(spec.unit_params).expect("unit constant");
    let pinv = inverse_word(cof);
    let term = |i: usize| -> OpWord {
        let mut w: OpWord = vec![(zop, 1); i];
        for _ in 0..=i {
            w.extend_from_slice(&pinv);
        }
        w
    };
    let mut out = vec![(c0_inv.clone(), term(e - 1))];
    for i in 1..e {
        out.push((-(&c0_inv * &gd.coeffs[i]), term(i - 1)));
    }
    out
}

/// Relations in the remaining generators that replace the Hecke relation of
/// an eliminated generator `x = z·P⁻¹`: `z^e = Σ c_i z^i P^{e-i}`, together
/// with left multiples and conjugates that expose every term.
fn linear_relations(
    spec: &GroupSpec,
    x: GenId,
    cof: &[OpLetter],
    zop: usize,
) -> Vec<Vec<(LaurentPoly, OpWord)>> {
    let gd = spec.generator(x);
    let e = gd.order;
    let norm = |w: &[OpLetter]| -> OpWord {
        let mut out: OpWord = Vec::new();
        for &l in w {
            if let Some(&last) = out.last() {
                if last.0 == l.0 && last.1 == -l.1 {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        let q: i32 = out.iter().filter(|l| l.0 == zop).map(|l| l.1 as i32).sum();
        let mut res: OpWord = vec![(zop, q.signum() as i8); q.unsigned_abs() as usize];
        res.extend(out.into_iter().filter(|l| l.0 != zop));
        res
    };
    let power = |k: usize| -> OpWord { cof.iter().copied().cycle().take(cof.len() * k).collect() };
    let mut base: Vec<(LaurentPoly, OpWord)> = vec![(LaurentPoly::one(), vec![(zop, 1); e])];
    for i in 0..e {
        let mut w: OpWord = vec![(zop, 1); i];
        w.extend(power(e - i));
        base.push((-&gd.coeffs[i], w));
    }
    type Rel = Vec<(LaurentPoly, OpWord)>;
    let canon = |r: Rel| -> Rel { r.into_iter().map(|(c, w)| (c, norm(&w))).collect() };
    let key = |r: &Rel| -> String { format!("{r:?}") };
    let mut all: BTreeMap<String, Rel> = BTreeMap::new();
    let mut frontier: Vec<Rel> = Vec::new();
    let base = canon(base);
    frontier.push(base.clone());
    for (_, w) in &base {
        let inv = inverse_word(w);
        frontier.push(canon(
            base.iter()
                .map(|(c, v)| {
                    let mut x = inv.clone();
                    x.extend_from_slice(v);
                    (c.clone(), x)
                })
                .collect(),
        ));
    }
    let letters: Vec<OpLetter> = (0..zop).flat_map(|g| [(g, 1), (g, -1)]).collect();
    for _ in 0..CONJUGATION_DEPTH {
        let mut next = Vec::new();
        for r in frontier {
            if all.insert(key(&r), r.clone()).is_some() {
                continue;
            }
            for &l in &letters {
                next.push(canon(
                    r.iter()
                        .map(|(c, w)| {
                            let mut x = vec![(l.0, -l.1)];
                            x.extend_from_slice(w);
                            x.push(l);
                            (c.clone(), x)
                        })
                        .collect(),
                ));
            }
        }
        frontier = next;
    }
    for r in frontier {
        all.entry(key(&r)).or_insert(r);
    }
    let mut out: Vec<Rel> = all.into_values().collect();
    out.sort_by_key(|r| (r.iter().map(|(_, w)| w.len()).sum::<usize>(), format!("{r:?}")));
    out
}
