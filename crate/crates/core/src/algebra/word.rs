use std::fmt;

/// Generator identifier inside a group. Real generators are numbered from 0;
/// [`Z`] stands for the central element z as an abstract letter.
pub type GenId = u8;

/// The abstract central letter z.
pub const Z: GenId = u8::MAX;

/// One syllable `g^e` of a word, `e != 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Syllable {
    pub gen: GenId,
    pub exp: i32,
}

/// A single signed letter `g^{±1}`.
pub type Letter = (GenId, i8);

/// A freely reduced word: adjacent syllables carry distinct generators and
/// no syllable has exponent zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    syl: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    /// `g^e`, the identity when `e == 0`.
    pub fn gen_pow(g: GenId, e: i32) -> Self {
        let mut w = Self::identity();
        w.push(g, e);
        w
    }

    pub fn z_pow(k: i32) -> Self {
        Self::gen_pow(Z, k)
    }

    /// Freely reduces an arbitrary syllable sequence.
    pub fn from_syllables<I: IntoIterator<Item = (GenId, i32)>>(it: I) -> Self {
        let mut w = Self::identity();
        for (g, e) in it {
            w.push(g, e);
        }
        w
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Self::from_syllables(letters.iter().map(|&(g, e)| (g, e as i32)))
    }

    /// Appends `g^e` on the right, merging and cancelling as needed.
    pub fn push(&mut self, g: GenId, e: i32) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syl.last_mut() {
            if last.gen == g {
                last.exp += e;
                if last.exp == 0 {
                    self.syl.pop();
                }
                return;
            }
        }
        self.syl.push(Syllable { gen: g, exp: e });
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syl
    }

    pub fn is_identity(&self) -> bool {
        self.syl.is_empty()
    }

    /// Number of letters, counting `g^e` as `|e|`.
    pub fn letter_len(&self) -> usize {
        self.syl.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.letter_len());
        for s in &self.syl {
            let sign = if s.exp > 0 { 1 } else { -1 };
            for _ in 0..s.exp.unsigned_abs() {
                out.push((s.gen, sign));
            }
        }
        out
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for s in &other.syl {
            w.push(s.gen, s.exp);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            syl: self
                .syl
                .iter()
                .rev()
                .map(|s| Syllable { gen: s.gen, exp: -s.exp })
                .collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// True when every exponent is positive.
    pub fn is_positive(&self) -> bool {
        self.syl.iter().all(|s| s.exp > 0)
    }

    pub fn contains_z(&self) -> bool {
        self.syl.iter().any(|s| s.gen == Z)
    }

    /// Splits off the total power of the central letter: `w = z^q · rest`.
    pub fn collect_z(&self) -> (i32, Word) {
        let mut q = 0;
        let mut rest = Word::identity();
        for s in &self.syl {
            if s.gen == Z {
                q += s.exp;
            } else {
                rest.push(s.gen, s.exp);
            }
        }
        (q, rest)
    }

    /// Replaces every occurrence of the central letter by `center`.
    pub fn expand_z(&self, center: &Word) -> Word {
        let mut w = Word::identity();
        for s in &self.syl {
            if s.gen == Z {
                w = w.mul(&center.pow(s.exp));
            } else {
                w.push(s.gen, s.exp);
            }
        }
        w
    }

    /// Sub-word of letters `[start, end)`.
    pub fn slice_letters(&self, start: usize, end: usize) -> Word {
        Word::from_letters(&self.letters()[start..end])
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syl.is_empty() {
            return f.write_str("ε");
        }
        for (i, s) in self.syl.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.gen == Z {
                f.write_str("z")?;
            } else {
                write!(f, "g{}", s.gen)?;
            }
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_at_the_junction() {
        let st = Word::from_syllables([(0, 1), (1, 1)]);
        let ti = Word::gen_pow(1, -1);
        assert_eq!(st.mul(&ti), Word::gen_pow(0, 1));
        let s2 = Word::gen_pow(0, 2);
        assert_eq!(s2.mul(&Word::gen_pow(0, 1)), Word::gen_pow(0, 3));
        assert_eq!(Word::identity().mul(&st), st);
    }

    #[test]
    fn inverse_cancels() {
        let w = Word::from_syllables([(Z, 5), (0, 1), (1, 2)]);
        assert!(w.mul(&w.inverse()).is_identity());
        assert_eq!(
            w.inverse(),
            Word::from_syllables([(1, -2), (0, -1), (Z, -5)])
        );
    }

    #[test]
    fn collect_and_expand() {
        let w = Word::from_syllables([(0, 1), (Z, 2), (1, 1), (Z, -1)]);
        let (q, rest) = w.collect_z();
        assert_eq!(q, 1);
        assert_eq!(rest, Word::from_syllables([(0, 1), (1, 1)]));
        let center = Word::from_syllables([(0, 1), (1, 1)]);
        let e = Word::z_pow(1).expand_z(&center);
        assert_eq!(e, center);
    }
}
