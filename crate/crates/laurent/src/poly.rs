use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::monomial::{Monomial, VarSet, MAX_VARS, VAR_NAMES};
use crate::LaurentError;

/// Sparse multivariate Laurent polynomial with integer coefficients.
///
/// Terms are kept sorted by decreasing monomial order and never carry a zero
/// coefficient, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    /// The single parameter `VAR_NAMES[i]`.
    pub fn var(i: usize) -> Self {
        Self::monomial(1, Monomial::var(i, 1))
    }

    pub fn monomial(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        Self { terms }
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    /// Coefficient of the monomial `m`.
    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(x, _)| m.cmp(x))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// The constant term, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Every parameter that occurs in some term.
    pub fn vars(&self) -> VarSet {
        VarSet(self.terms.iter().fold(0u8, |acc, (m, _)| acc | m.vars().0))
    }

    /// Every parameter that occurs with a negative exponent.
    pub fn negative_vars(&self) -> VarSet {
        VarSet(
            self.terms
                .iter()
                .fold(0u8, |acc, (m, _)| acc | m.negative_vars().0),
        )
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (x, _)| acc.meet(x)),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `Some((sign, m))` when the polynomial is `±m` with `m` supported on
    /// `units` only.
    pub fn as_signed_monomial(&self, units: VarSet) -> Option<(i32, Monomial)> {
        let [(m, c)] = self.terms.as_slice() else {
            return None;
        };
        if m.support().any(|(i, _)| !units.contains(i)) {
            return None;
        }
        if c.is_one() {
            Some((1, *m))
        } else if (-c).is_one() {
            Some((-1, *m))
        } else {
            None
        }
    }

    /// Inverse of a unit `±m` with `m` supported on `units`.
    pub fn unit_inverse(&self, units: VarSet) -> Option<Self> {
        let (sign, m) = self.as_signed_monomial(units)?;
        Some(Self::monomial(sign, m.inv()))
    }

    /// Exact quotient `self / divisor` in the Laurent ring, or `None` when
    /// the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let [(m, c)] = divisor.terms.as_slice() {
            let inv = m.inv();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (x, y) in &self.terms {
                let (q, r) = y.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.push((x.mul(&inv), q));
            }
            return Some(Self { terms });
        }
        // Shift both sides into the polynomial ring; graded-lex long
        // division then terminates and is exact iff the Laurent one is.
        let sq = divisor.min_exponents().inv();
        let sr = self.min_exponents().inv();
        let q = divisor.mul_monomial(&sq);
        let mut r = self.mul_monomial(&sr);
        let (lq, lc) = q.terms[0].clone();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((lt, c)) = r.terms.first().cloned() {
            let d = lt.div(&lq);
            if !d.is_polynomial() {
                return None;
            }
            let (f, rem) = c.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &q.mul_monomial(&d).scale(&f);
            quot.push((d, f));
        }
        let shift = sr.inv().mul(&sq);
        Some(Self::from_terms(
            quot.into_iter().map(|(m, c)| (m.mul(&shift), c)),
        ))
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &Assignment) -> Result<BigRational, LaurentError> {
        let low = self.min_exponents();
        let mut high = [0i32; MAX_VARS];
        for (m, _) in &self.terms {
            for (i, e) in m.support() {
                high[i] = high[i].max(e);
            }
        }
        let mut used = Vec::new();
        for i in 0..MAX_VARS {
            let lo = low.exponent(i).min(0);
            if lo == 0 && high[i] == 0 {
                continue;
            }
            let v = point.values[i]
                .as_ref()
                .ok_or(LaurentError::MissingAssignment(VAR_NAMES[i]))?;
            if lo < 0 && v.is_zero() {
                return Err(LaurentError::ZeroInverted(VAR_NAMES[i]));
            }
            used.push((i, v, lo, high[i]));
        }
        if used.iter().all(|(_, v, _, _)| v.is_integer()) {
            return Ok(self.eval_integral(&used));
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut x = BigRational::from_integer(c.clone());
            for (i, e) in m.support() {
                x *= pow_rational(point.values[i].as_ref().unwrap(), e);
            }
            acc += x;
        }
        Ok(acc)
    }

    /// Evaluation at integer values: every term is shifted by the lowest
    /// exponents so that the sum stays integral, with cached powers.
    fn eval_integral(&self, used: &[(usize, &BigRational, i32, i32)]) -> BigRational {
        let powers: Vec<(usize, i32, Vec<BigInt>)> = used
            .iter()
            .map(|&(i, v, lo, hi)| {
                let base = v.to_integer();
                let mut p = Vec::with_capacity((hi - lo + 1) as usize);
                let mut cur = BigInt::one();
                for _ in lo..=hi {
                    p.push(cur.clone());
                    cur *= &base;
                }
                (i, lo, p)
            })
            .collect();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut x = c.clone();
            for (i, lo, p) in &powers {
                let k = (m.exponent(*i) - lo) as usize;
                if k > 0 {
                    x *= &p[k];
                }
            }
            acc += x;
        }
        let mut denom = BigInt::one();
        for (_, lo, p) in &powers {
            if *lo < 0 {
                denom *= &p[(-lo) as usize];
            }
        }
        BigRational::new(acc, denom)
    }

    /// Substitutes polynomials for the parameters listed in `subs`.
    pub fn substitute(&self, subs: &[(usize, LaurentPoly)]) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut t = Self::constant(c.clone());
            for (i, p) in subs {
                let e = m.exponent(*i);
                if e == 0 {
                    continue;
                }
                assert!(e > 0, "cannot substitute into a negative power");
                rest = rest.mul(&Monomial::var(*i, -e));
                t = &t * &p.pow(e as u32);
            }
            acc += &t.mul_monomial(&rest);
        }
        acc
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((*m, if negate { -c } else { c.clone() }));
        }
        Self { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let (single, many) = if self.terms.len() == 1 { (self, other) } else { (other, self) };
            let (m, c) = &single.terms[0];
            return Self {
                terms: many.terms.iter().map(|(x, y)| (x.mul(m), y * c)).collect(),
            };
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        Self::from_map(acc)
    }
}

fn pow_rational(v: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { v.recip() } else { v.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// A (partial) assignment of rational values to parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: [Option<BigRational>; MAX_VARS],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns integers to the first `vals.len()` parameters.
    pub fn integers(vals: &[i64]) -> Self {
        let mut a = Self::new();
        for (i, &v) in vals.iter().enumerate() {
            a.set(i, BigRational::from_integer(BigInt::from(v)));
        }
        a
    }

    pub fn set(&mut self, i: usize, v: BigRational) {
        self.values[i] = Some(v);
    }

    pub fn with(mut self, sym: char, v: i64) -> Self {
        let i = crate::var_index(sym).expect("unknown parameter symbol");
        self.set(i, BigRational::from_integer(BigInt::from(v)));
        self
    }

    pub fn get(&self, i: usize) -> Option<&BigRational> {
        self.values[i].as_ref()
    }

    /// Assigned parameters in order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().map(|v| (i, v)))
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.product(rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.merge(&rhs, false)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self.merge(&rhs, true)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.product(&rhs)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if !rhs.is_zero() {
            *self = self.merge(rhs, true);
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> LaurentPoly {
        LaurentPoly::var(i)
    }

    #[test]
    fn cancellation_gives_zero() {
        let a2c = &(&v(0) * &v(0)) * &v(2);
        assert!((&a2c + &(-&a2c)).is_zero());
    }

    #[test]
    fn unit_inverse_multiplies_to_one() {
        let c = v(2);
        let inv = c.unit_inverse(VarSet::from_indices(&[2])).unwrap();
        assert!((&inv * &c).is_one());
        assert!(c.unit_inverse(VarSet::from_indices(&[0])).is_none());
    }

    #[test]
    fn exact_division_roundtrip() {
        let p = &v(0) + &LaurentPoly::monomial(3, Monomial::var(2, -1));
        let q = &(&v(1) * &v(1)) - &LaurentPoly::constant(5);
        let prod = &p * &q;
        assert_eq!(prod.exact_div(&p).unwrap(), q);
        assert_eq!(prod.exact_div(&q).unwrap(), p);
        assert!(prod.exact_div(&(&v(0) + &LaurentPoly::one())).is_none());
    }

    #[test]
    fn signed_monomial_detection() {
        let units = VarSet::from_indices(&[2]);
        let p = LaurentPoly::monomial(-1, Monomial::var(2, 58));
        assert_eq!(p.as_signed_monomial(units), Some((-1, Monomial::var(2, 58))));
        let q = &(&v(0) * &v(1)) + &(&v(1) * &v(2));
        assert!(q.as_signed_monomial(units).is_none());
    }
}
