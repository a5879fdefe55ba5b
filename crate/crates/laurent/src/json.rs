use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::monomial::{var_index, Monomial, MAX_VARS, VAR_NAMES};
use crate::LaurentPoly;

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: String,
    exps: BTreeMap<String, i32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

/// Canonical JSON: `{"terms":[{"coef":"-1","exps":{"a":2,"c":1}}]}` with the
/// terms in the same order as the canonical text.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .iter()
            .map(|(m, c)| TermJson {
                coef: c.to_string(),
                exps: m
                    .support()
                    .map(|(i, e)| (VAR_NAMES[i].to_string(), e))
                    .collect(),
            })
            .collect();
        PolyJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c: BigInt = t.coef.parse().map_err(D::Error::custom)?;
            let mut e = [0i32; MAX_VARS];
            for (k, v) in t.exps {
                let mut chars = k.chars();
                let i = match (chars.next(), chars.next()) {
                    (Some(ch), None) => var_index(ch),
                    _ => None,
                }
                .ok_or_else(|| D::Error::custom(format!("unknown parameter {k:?}")))?;
                e[i] = v;
            }
            terms.push((Monomial::from_exponents(&e), c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let p: LaurentPoly = "-1*a^2*c^1".parse().unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"terms":[{"coef":"-1","exps":{"a":2,"c":1}}]}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
