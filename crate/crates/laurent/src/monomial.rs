use std::cmp::Ordering;
use std::fmt;

/// Number of parameter slots a monomial can carry.
pub const MAX_VARS: usize = 8;

/// Parameter symbols in their fixed order.
pub const VAR_NAMES: [char; MAX_VARS] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];

/// Index of a parameter symbol, if it is one of `a..h`.
pub fn var_index(sym: char) -> Option<usize> {
    VAR_NAMES.iter().position(|&c| c == sym)
}

/// A set of parameter indices, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VarSet(pub u8);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);
    pub const ALL: VarSet = VarSet(u8::MAX);

    pub fn from_indices(idx: &[usize]) -> Self {
        let mut m = 0u8;
        for &i in idx {
            assert!(i < MAX_VARS, "parameter index {i} out of range");
            m |= 1 << i;
        }
        VarSet(m)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..MAX_VARS).filter(move |&i| self.contains(i))
    }
}

/// A Laurent monomial: one signed exponent per parameter slot.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `a`, then `b`, and so on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([i16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize, e: i32) -> Self {
        let mut m = Self::ONE;
        m.0[i] = narrow(e);
        m
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Self::ONE;
        for (slot, &e) in m.0.iter_mut().zip(exps) {
            *slot = narrow(e);
        }
        m
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> i32 {
        self.0[i] as i32
    }

    pub fn exponents(&self) -> [i32; MAX_VARS] {
        self.0.map(|e| e as i32)
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices and exponents of the nonzero slots.
    pub fn support(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e as i32))
    }

    /// Parameters with a nonzero exponent.
    pub fn vars(&self) -> VarSet {
        let mut m = 0u8;
        for (i, &e) in self.0.iter().enumerate() {
            if e != 0 {
                m |= 1 << i;
            }
        }
        VarSet(m)
    }

    /// Parameters with a negative exponent.
    pub fn negative_vars(&self) -> VarSet {
        let mut m = 0u8;
        for (i, &e) in self.0.iter().enumerate() {
            if e < 0 {
                m |= 1 << i;
            }
        }
        VarSet(m)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, &b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(b).expect("monomial exponent overflow");
        }
        out
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.map(|e| -e))
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut out = Self::ONE;
        for (o, &e) in out.0.iter_mut().zip(self.0.iter()) {
            *o = narrow(e as i32 * k);
        }
        out
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, &b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(b);
        }
        out
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }
}

fn narrow(e: i32) -> i16 {
    i16::try_from(e).expect("monomial exponent out of range")
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical form: `a^2*c^-1`, or `1` for the empty monomial.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, e) in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}^{}", VAR_NAMES[i], e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let a = Monomial::var(0, 1);
        let b2 = Monomial::var(1, 2);
        let c = Monomial::var(2, 1);
        assert!(b2 > a);
        assert!(a > c);
        assert!(Monomial::ONE > Monomial::var(0, -1));
    }

    #[test]
    fn mul_and_inverse() {
        let m = Monomial::from_exponents(&[1, 0, -2]);
        assert!(m.mul(&m.inv()).is_one());
        assert_eq!(m.pow(3).exponent(2), -6);
        assert_eq!(m.to_string(), "a^1*c^-2");
    }
}
