use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::monomial::{var_index, Monomial, MAX_VARS, VAR_NAMES};
use crate::{LaurentError, LaurentPoly};

/// Canonical text: `-1*a^2*c^1 - 3*b^-1`, terms in decreasing monomial
/// order, every exponent written out, `0` for the zero polynomial.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let shown = if k == 0 {
                c.to_string()
            } else if c.is_negative() {
                f.write_str(" - ")?;
                (-c).to_string()
            } else {
                f.write_str(" + ")?;
                c.to_string()
            };
            f.write_str(&shown)?;
            for (i, e) in m.support() {
                write!(f, "*{}^{}", VAR_NAMES[i], e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl LaurentPoly {
    /// Compact human form: `a*b^2 - 3*c^-1`; unit coefficients and unit
    /// exponents are omitted.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(mag.to_string());
            }
            for (i, e) in m.support() {
                if e == 1 {
                    factors.push(VAR_NAMES[i].to_string());
                } else {
                    factors.push(format!("{}^{}", VAR_NAMES[i], e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// `pretty()` wrapped in parentheses when it has more than one term.
    pub fn pretty_factor(&self) -> String {
        if self.len() > 1 {
            format!("({})", self.pretty())
        } else {
            self.pretty()
        }
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the canonical and the compact forms, with optional
    /// whitespace: `3*a^2*b^-1`, `-a*b`, `2 - c^-1`, `(a + b)*c`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> LaurentError {
        LaurentError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = LaurentPoly::zero();
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.product()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(b'+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, LaurentError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                if e < 0 {
                    return Err(self.error("negative power of a parenthesised sum"));
                }
                Ok(inner.pow(e as u32))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = text.parse().map_err(|_| self.error("bad integer"))?;
                Ok(LaurentPoly::constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let i = var_index(c as char).ok_or_else(|| self.error("unknown parameter"))?;
                self.pos += 1;
                let e = self.exponent()?;
                debug_assert!(i < MAX_VARS);
                Ok(LaurentPoly::monomial(1, Monomial::var(i, e)))
            }
            _ => Err(self.error("expected a term")),
        }
    }

    /// Optional `^int` suffix; 1 when absent.
    fn exponent(&mut self) -> Result<i32, LaurentError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| self.error("bad exponent"))
    }
}

impl LaurentPoly {
    /// Parses text that must already be in canonical form.
    pub fn parse_canonical(s: &str) -> Result<Self, LaurentError> {
        let p: LaurentPoly = s.parse()?;
        if p.to_string() != s.trim() {
            return Err(LaurentError::NotCanonical(s.to_string()));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_example() {
        let p: LaurentPoly = "-1*a^2*c^1 + 3*b^-1".parse().unwrap();
        assert_eq!(p.to_string(), "-1*a^2*c^1 + 3*b^-1");
        assert_eq!(p.pretty(), "-a^2*c + 3*b^-1");
    }

    #[test]
    fn compact_forms_parse() {
        let p: LaurentPoly = "a*b + b*c".parse().unwrap();
        assert_eq!(p.to_string(), "1*a^1*b^1 + 1*b^1*c^1");
        let q: LaurentPoly = "(a + 1)^2 - 2*a".parse().unwrap();
        assert_eq!(q.pretty(), "a^2 + 1");
        assert!("a +".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn zero_and_constants() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert_eq!(LaurentPoly::constant(-7).to_string(), "-7");
        assert_eq!(LaurentPoly::one().pretty(), "1");
    }
}
