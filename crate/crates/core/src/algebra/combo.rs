use heckekit_laurent::LaurentPoly;
use serde::{Deserialize, Serialize};

/// Sparse coordinate vector over the basis.
///
/// Positions are zero-based internally (`b_{i+1}` sits at `i`); the text form
/// prints the one-based names `b1, b2, …`. Entries are sorted by position and
/// never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, Serialize, Deserialize)]
pub struct BasisCombo {
    entries: Vec<(u32, LaurentPoly)>,
}

impl BasisCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The coordinate vector of `b_{i+1}`.
    pub fn unit(i: usize) -> Self {
        Self::monomial(i, LaurentPoly::one())
    }

    pub fn monomial(i: usize, c: LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            entries: vec![(i as u32, c)],
        }
    }

    /// Builds a combination from unsorted entries, merging repeats.
    pub fn from_entries<I: IntoIterator<Item = (usize, LaurentPoly)>>(it: I) -> Self {
        let mut v: Vec<(u32, LaurentPoly)> = it.into_iter().map(|(i, c)| (i as u32, c)).collect();
        v.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(u32, LaurentPoly)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { entries: out }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> + '_ {
        self.entries.iter().map(|(i, c)| (*i as usize, c))
    }

    pub fn get(&self, i: usize) -> LaurentPoly {
        match self.entries.binary_search_by_key(&(i as u32), |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => LaurentPoly::zero(),
        }
    }

    /// Coefficient of `b_1`, the trace of the represented element.
    pub fn identity_coeff(&self) -> LaurentPoly {
        self.get(0)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        let entries = self
            .entries
            .iter()
            .map(|(i, x)| (*i, x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Self { entries }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &BasisCombo, c: &LaurentPoly) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut p, mut q) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while p < a.len() || q < b.len() {
            if q == b.len() || (p < a.len() && a[p].0 < b[q].0) {
                out.push(a[p].clone());
                p += 1;
            } else if p == a.len() || b[q].0 < a[p].0 {
                let x = if c.is_one() { b[q].1.clone() } else { &b[q].1 * c };
                out.push((b[q].0, x));
                q += 1;
            } else {
                let x = if c.is_one() { &a[p].1 + &b[q].1 } else { &a[p].1 + &(&b[q].1 * c) };
                if !x.is_zero() {
                    out.push((a[p].0, x));
                }
                p += 1;
                q += 1;
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &BasisCombo) -> Self {
        self.add_scaled(other, &LaurentPoly::one())
    }

    pub fn sub(&self, other: &BasisCombo) -> Self {
        self.add_scaled(other, &LaurentPoly::constant(-1))
    }

    /// Largest position present, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i as usize)
    }

    /// Text form `a*b3 + b*b2 + c*b1`: descending basis position, multi-term
    /// coefficients in parentheses, `0` for the zero vector.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (i, c)) in self.entries.iter().rev().enumerate() {
            let (neg, body) = signed_factor(c);
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
            out.push_str(&format!("*b{}", i + 1));
        }
        out
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<F: Fn(&LaurentPoly) -> LaurentPoly>(&self, f: F) -> Self {
        Self::from_entries(self.iter().map(|(i, c)| (i, f(c))))
    }
}

/// Sign and printable magnitude of a coefficient inside a combination.
fn signed_factor(c: &LaurentPoly) -> (bool, String) {
    if c.len() == 1 {
        let neg = c.terms()[0].1 < 0.into();
        let mag = if neg { -c } else { c.clone() };
        (neg, mag.pretty())
    } else {
        (false, c.pretty_factor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        let v = BasisCombo::from_entries([(2, p("a")), (1, p("b")), (0, p("c"))]);
        assert_eq!(v.to_text(), "a*b3 + b*b2 + c*b1");
        assert_eq!(BasisCombo::unit(0).to_text(), "1*b1");
        let w = BasisCombo::from_entries([(4, p("a + b")), (0, p("-c"))]);
        assert_eq!(w.to_text(), "(a + b)*b5 - c*b1");
    }

    #[test]
    fn merge_and_cancel() {
        let v = BasisCombo::from_entries([(3, p("a")), (1, p("b"))]);
        let w = BasisCombo::from_entries([(3, p("-a")), (2, p("1"))]);
        let s = v.add(&w);
        assert_eq!(s, BasisCombo::from_entries([(1, p("b")), (2, p("1"))]));
        assert!(v.sub(&v).is_zero());
    }
}
