use std::collections::BTreeMap;

use heckekit_laurent::LaurentPoly;

use super::word::Word;

/// A formal linear combination of words with Laurent coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Element {
    terms: BTreeMap<Word, LaurentPoly>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(LaurentPoly::one(), w)
    }

    pub fn term(c: LaurentPoly, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(c, w);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (LaurentPoly, Word)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (c, w) in it {
            e.add_term(c, w);
        }
        e
    }

    /// Adds `c·w`, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, c: LaurentPoly, w: Word) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        for (w, c) in &other.terms {
            e.add_term(c.clone(), w.clone());
        }
        e
    }

    pub fn scale(&self, c: &LaurentPoly) -> Element {
        Element::from_terms(self.terms.iter().map(|(w, x)| (x * c, w.clone())))
    }

    /// Product in the free algebra: words concatenate, coefficients multiply.
    pub fn mul(&self, other: &Element) -> Element {
        let mut e = Element::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                e.add_term(c1 * c2, w1.mul(w2));
            }
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
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
}
