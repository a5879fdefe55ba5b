//! Left and right multiplication operators on the basis.

use heckekit_laurent::LaurentPoly;
use serde::{Deserialize, Serialize};

use crate::algebra::{BasisCombo, GenId, GroupSpec, Letter, Word, Z};
use crate::{Error, Result};

/// A letter over operator indices: `(op, ±1)`.
pub type OpLetter = (usize, i8);

/// Left or right action.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Operator tables of one algebra.
///
/// Operators are the table generators followed by the centre `z`.
/// `left[op][j]` holds the coordinates of `g·b_j` and `right[op][j]` those of
/// `b_j·g`; the `_inv` variants hold the same for `g⁻¹`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorTables {
    pub gens: Vec<GenId>,
    pub left: Vec<Vec<BasisCombo>>,
    pub right: Vec<Vec<BasisCombo>>,
    pub left_inv: Vec<Vec<BasisCombo>>,
    pub right_inv: Vec<Vec<BasisCombo>>,
    /// A generator without its own operator, `x = z·P⁻¹`, with `P` over ops.
    pub eliminated: Option<(GenId, Vec<OpLetter>)>,
}

/// `Σ x·c` over a list of columns, accumulated densely.
pub(crate) fn combine<'c, C: std::borrow::Borrow<BasisCombo>>(
    n: usize,
    cols: impl IntoIterator<Item = (C, &'c LaurentPoly)>,
) -> BasisCombo {
    let mut acc: Vec<LaurentPoly> = vec![LaurentPoly::zero(); n];
    for (c, x) in cols {
        for (l, y) in c.borrow().iter() {
            if x.is_one() {
                acc[l] += y;
            } else {
                acc[l] += &(y * x);
            }
        }
    }
    BasisCombo::from_entries(acc.into_iter().enumerate().filter(|(_, p)| !p.is_zero()))
}

impl OperatorTables {
    /// Number of basis elements.
    pub fn size(&self) -> usize {
        self.left[0].len()
    }

    pub fn zop(&self) -> usize {
        self.gens.len()
    }

    pub fn op_of(&self, g: GenId) -> Option<usize> {
        if g == Z {
            Some(self.gens.len())
        } else {
            self.gens.iter().position(|&h| h == g)
        }
    }

    /// The column of `g^{±1}` at `b_j`.
    pub fn column(&self, side: Side, op: usize, sign: i8, j: usize) -> &BasisCombo {
        match (side, sign > 0) {
            (Side::Left, true) => &self.left[op][j],
            (Side::Left, false) => &self.left_inv[op][j],
            (Side::Right, true) => &self.right[op][j],
            (Side::Right, false) => &self.right_inv[op][j],
        }
    }

    /// Applies one operator letter to a vector.
    pub fn apply(&self, side: Side, (op, sign): OpLetter, v: &BasisCombo) -> BasisCombo {
        let n = self.size();
        combine(n, v.iter().map(|(l, x)| (self.column(side, op, sign, l), x)))
    }

    /// Operator letters of a generator letter; an eliminated generator is
    /// expanded as `x = z·P⁻¹`, `x⁻¹ = P·z⁻¹`.
    pub fn letter_ops(&self, (g, e): Letter) -> Result<Vec<OpLetter>> {
        if let Some(op) = self.op_of(g) {
            return Ok(vec![(op, e)]);
        }
        match &self.eliminated {
            Some((x, cof)) if *x == g => {
                let z = self.zop();
                let mut out = Vec::with_capacity(cof.len() + 1);
                if e > 0 {
                    out.push((z, 1));
                    out.extend(cof.iter().rev().map(|&(o, s)| (o, -s)));
                } else {
                    out.extend_from_slice(cof);
                    out.push((z, -1));
                }
                Ok(out)
            }
            _ => Err(Error::Bootstrap(format!("no operator for generator {g}"))),
        }
    }

    pub fn word_ops(&self, w: &Word) -> Result<Vec<OpLetter>> {
        let mut out = Vec::new();
        for l in w.letters() {
            out.extend(self.letter_ops(l)?);
        }
        Ok(out)
    }

    /// `w · v`.
    pub fn left_mul(&self, w: &Word, v: &BasisCombo) -> Result<BasisCombo> {
        let ops = self.word_ops(w)?;
        Ok(self.left_ops(&ops, v))
    }

    /// `v · w`.
    pub fn right_mul(&self, v: &BasisCombo, w: &Word) -> Result<BasisCombo> {
        let ops = self.word_ops(w)?;
        Ok(self.right_ops(v, &ops))
    }

    pub fn left_ops(&self, ops: &[OpLetter], v: &BasisCombo) -> BasisCombo {
        let mut cur = v.clone();
        for &l in ops.iter().rev() {
            cur = self.apply(Side::Left, l, &cur);
        }
        cur
    }

    pub fn right_ops(&self, v: &BasisCombo, ops: &[OpLetter]) -> BasisCombo {
        let mut cur = v.clone();
        for &l in ops {
            cur = self.apply(Side::Right, l, &cur);
        }
        cur
    }

    /// Product of two elements given in coordinates.
    pub fn mul(&self, spec: &GroupSpec, x: &BasisCombo, y: &BasisCombo) -> Result<BasisCombo> {
        let n = self.size();
        let mut parts = Vec::with_capacity(x.len());
        for (i, c) in x.iter() {
            parts.push((self.left_mul(&spec.basis[i], y)?, c));
        }
        Ok(combine(n, parts.iter().map(|(v, c)| (v, *c))))
    }

    /// Checks that the tables define the algebra on the basis: the basis
    /// words act on `b_1` as themselves, the Hecke and braid relations hold
    /// on both sides, inverses are inverse, and left and right operators
    /// commute. Returns the list of failed checks.
    pub fn certify(&self, spec: &GroupSpec) -> Vec<String> {
        let n = self.size();
        let mut bad = Vec::new();
        if n != spec.order() {
            bad.push(format!("table size {n} differs from group order {}", spec.order()));
            return bad;
        }
        let e0 = BasisCombo::unit(0);
        for (j, w) in spec.basis.iter().enumerate() {
            let ej = BasisCombo::unit(j);
            match (self.left_mul(w, &e0), self.right_mul(&e0, w)) {
                (Ok(l), Ok(r)) => {
                    if l != ej {
                        bad.push(format!("left action of b{} on b1", j + 1));
                    }
                    if r != ej {
                        bad.push(format!("right action of b{} on b1", j + 1));
                    }
                }
                _ => bad.push(format!("b{} uses an unknown generator", j + 1)),
            }
        }
        let basis_vecs: Vec<BasisCombo> = (0..n).map(BasisCombo::unit).collect();
        for side in [Side::Left, Side::Right] {
            let act = |w: &Word, v: &BasisCombo| -> Result<BasisCombo> {
                match side {
                    Side::Left => self.left_mul(w, v),
                    Side::Right => self.right_mul(v, w),
                }
            };
            for (g, gd) in spec.generators.iter().enumerate() {
                let g = g as GenId;
                for (j, v) in basis_vecs.iter().enumerate() {
                    let mut pw = vec![v.clone()];
                    let step = Word::gen_pow(g, 1);
                    let mut ok = true;
                    for _ in 0..gd.order {
                        match act(&step, pw.last().unwrap()) {
                            Ok(x) => pw.push(x),
                            Err(_) => ok = false,
                        }
                        if !ok {
                            break;
                        }
                    }
                    if !ok {
                        bad.push(format!("generator {} has no operator", gd.name));
                        break;
                    }
                    let rhs = combine(n, pw.iter().zip(&gd.coeffs).map(|(p, c)| (p, c)));
                    if pw[gd.order] != rhs {
                        bad.push(format!("{side:?} Hecke relation of {} at b{}", gd.name, j + 1));
                    }
                    let back = act(&Word::gen_pow(g, -1), &pw[1]);
                    if back.as_ref().ok() != Some(v) {
                        bad.push(format!("{side:?} inverse of {} at b{}", gd.name, j + 1));
                    }
                }
            }
            let mut rels: Vec<(Word, Word)> = spec.braid_relations.clone();
            rels.push((Word::z_pow(1), spec.center_word.clone()));
            for (l, r) in &rels {
                for (j, v) in basis_vecs.iter().enumerate() {
                    if act(l, v).ok() != act(r, v).ok() {
                        bad.push(format!(
                            "{side:?} relation {} = {} at b{}",
                            spec.format_word(l),
                            spec.format_word(r),
                            j + 1
                        ));
                    }
                }
            }
        }
        let z = self.zop();
        for j in 0..n {
            if self.left[z][j] != self.right[z][j] {
                bad.push(format!("z is not central at b{}", j + 1));
            }
        }
        for g in 0..=z {
            for h in 0..=z {
                for v in &basis_vecs {
                    let a = self.apply(Side::Left, (g, 1), &self.apply(Side::Right, (h, 1), v));
                    let b = self.apply(Side::Right, (h, 1), &self.apply(Side::Left, (g, 1), v));
                    if a != b {
                        bad.push(format!("left op {g} and right op {h} do not commute"));
                        break;
                    }
                }
            }
        }
        bad
    }
}
