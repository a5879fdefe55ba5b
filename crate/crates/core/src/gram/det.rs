//! Determinants of Gram matrices, symbolic and at integer points.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use heckekit_laurent::{Assignment, BigInt, BigRational, LaurentPoly, Monomial};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::GramMatrix;
use crate::algebra::GroupSpec;
use crate::{Error, Result};

/// Fraction-free elimination of a square matrix over an integral domain.
/// `div` must divide exactly; the result carries the row-swap sign.
fn bareiss<T: Clone>(
    mut m: Vec<Vec<T>>,
    zero: T,
    one: T,
    is_zero: impl Fn(&T) -> bool,
    neg: impl Fn(&T) -> T,
    mul_sub: impl Fn(&T, &T, &T, &T) -> T,
    div: impl Fn(&T, &T) -> Result<T>,
    mut tick: impl FnMut() -> Result<()>,
) -> Result<T> {
    let n = m.len();
    if n == 0 {
        return Ok(one);
    }
    let mut sign = false;
    let mut prev = one.clone();
    for k in 0..n {
        if is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(zero),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                tick()?;
                let x = mul_sub(&m[k][k], &m[i][j], &m[i][k], &m[k][j]);
                m[i][j] = div(&x, &prev)?;
            }
            m[i][k] = zero.clone();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { neg(&d) } else { d })
}

/// Exact determinant. Each row is first multiplied by a monomial that
/// clears its negative exponents; the product is divided out at the end.
/// Fails with [`Error::ResourceCap`] once `cap` has elapsed.
pub fn det_symbolic(a: &GramMatrix, cap: Option<Duration>) -> Result<LaurentPoly> {
    let rows = a.rows()?;
    let mut shift = Monomial::ONE;
    let cleared: Vec<Vec<LaurentPoly>> = rows
        .into_iter()
        .map(|r| {
            let mut m = Monomial::ONE;
            for x in r.iter().filter(|x| !x.is_zero()) {
                m = m.meet(&x.min_exponents());
            }
            let inv = m.inv();
            shift = shift.mul(&m);
            r.iter().map(|x| x.mul_monomial(&inv)).collect()
        })
        .collect();
    let start = Instant::now();
    let d = bareiss(
        cleared,
        LaurentPoly::zero(),
        LaurentPoly::one(),
        LaurentPoly::is_zero,
        |x| -x.clone(),
        |a, b, c, d| &(a * b) - &(c * d),
        |x, p| {
            x.exact_div(p)
                .ok_or_else(|| Error::Bootstrap("inexact division in elimination".into()))
        },
        || match cap {
            Some(c) if start.elapsed() > c => Err(Error::ResourceCap(format!(
                "symbolic determinant exceeded {:.0} s",
                c.as_secs_f64()
            ))),
            _ => Ok(()),
        },
    )?;
    Ok(d.mul_monomial(&shift))
}

/// Exact determinant of the matrix evaluated at `point`.
pub fn det_specialized(a: &GramMatrix, point: &Assignment) -> Result<BigRational> {
    let rows = a.rows()?;
    let mut denom = BigInt::one();
    let mut ints: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for r in &rows {
        let vals: Vec<BigRational> = r.iter().map(|x| x.eval(point)).collect::<Result<_, _>>()?;
        let l = vals.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        denom *= &l;
        ints.push(vals.iter().map(|v| v.numer() * (&l / v.denom())).collect());
    }
    let d = bareiss(
        ints,
        BigInt::zero(),
        BigInt::one(),
        BigInt::is_zero,
        |x| -x,
        |a, b, c, d| a * b - c * d,
        |x, p| {
            let (q, r) = x.div_rem(p);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::Bootstrap("inexact integer division in elimination".into()))
            }
        },
        || Ok(()),
    )?;
    Ok(BigRational::new(d, denom))
}

const SMALL_PRIMES: [i64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// `trials` assignments of distinct primes to the parameters: the first
/// primes in parameter order, then seeded random draws.
pub fn prime_assignments(spec: &GroupSpec, trials: usize, seed: u64) -> Vec<BTreeMap<char, i64>> {
    let k = spec.params.len();
    let mut out = Vec::with_capacity(trials);
    if trials == 0 {
        return out;
    }
    out.push(spec.params.iter().copied().zip(SMALL_PRIMES).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < trials {
        let mut pool = SMALL_PRIMES.to_vec();
        pool.shuffle(&mut rng);
        out.push(spec.params.iter().copied().zip(pool[..k].iter().copied()).collect());
    }
    out
}

pub fn to_assignment(values: &BTreeMap<char, i64>) -> Assignment {
    values.iter().fold(Assignment::new(), |a, (&c, &v)| a.with(c, v))
}

/// One determinant computation and its comparison with the claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetReport {
    pub group: String,
    pub mode: String,
    pub assignment: BTreeMap<String, i64>,
    pub det: String,
    pub claimed: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Determinant at one prime point against the claimed monomial.
pub fn det_report_primes(spec: &GroupSpec, a: &GramMatrix, values: &BTreeMap<char, i64>) -> Result<DetReport> {
    let point = to_assignment(values);
    let det = det_specialized(a, &point)?;
    let claimed = spec.claimed_det_poly().eval(&point)?;
    Ok(DetReport {
        group: spec.name.to_string(),
        mode: "primes".into(),
        assignment: values.iter().map(|(c, v)| (c.to_string(), *v)).collect(),
        det: det.to_string(),
        claimed: spec.claimed_det_poly().pretty(),
        matches: det == claimed,
    })
}

/// Symbolic determinant against the claimed monomial.
pub fn det_report_symbolic(spec: &GroupSpec, a: &GramMatrix, cap: Option<Duration>) -> Result<DetReport> {
    let det = det_symbolic(a, cap)?;
    let claimed = spec.claimed_det_poly();
    Ok(DetReport {
        group: spec.name.to_string(),
        mode: "symbolic".into(),
        assignment: BTreeMap::new(),
        det: det.pretty(),
        claimed: claimed.pretty(),
        matches: det == claimed,
    })
}
