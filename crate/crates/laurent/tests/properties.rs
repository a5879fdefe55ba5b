use heckekit_laurent::{Assignment, BigInt, BigRational, LaurentPoly, Monomial, VarSet, MAX_VARS};
use num_traits::{One, Zero};
use proptest::prelude::*;

const VARS: usize = 4;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::array::uniform4(-3i32..=3), -20i64..=20), 0..6).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| {
            let mut full = [0i32; MAX_VARS];
            full[..VARS].copy_from_slice(&e);
            (Monomial::from_exponents(&full), BigInt::from(c))
        }))
    })
}

fn point() -> impl Strategy<Value = [i64; VARS]> {
    prop::array::uniform4(prop_oneof![-9i64..=-1, 1i64..=9])
}

fn assignment(v: &[i64; VARS]) -> Assignment {
    Assignment::integers(v)
}

fn naive_eval(p: &LaurentPoly, v: &[i64; VARS]) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let mut x = BigRational::from_integer(c.clone());
        for (i, e) in m.support() {
            let b = BigRational::from_integer(BigInt::from(v[i]));
            let b = if e < 0 { b.recip() } else { b };
            for _ in 0..e.abs() {
                x *= &b;
            }
        }
        acc += x;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_a_group(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &LaurentPoly::zero(), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(-(-p.clone()), p);
    }

    #[test]
    fn multiplication_is_a_commutative_monoid(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
        prop_assert!((&p * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn distributivity(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn canonical_text_round_trip(p in poly()) {
        let back: LaurentPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let pretty: LaurentPoly = p.pretty().parse().unwrap();
        prop_assert_eq!(pretty, p);
    }

    #[test]
    fn json_round_trip(p in poly()) {
        let s = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn eval_is_a_ring_map(p in poly(), q in poly(), v in point()) {
        let a = assignment(&v);
        let (x, y) = (p.eval(&a).unwrap(), q.eval(&a).unwrap());
        prop_assert_eq!((&p * &q).eval(&a).unwrap(), &x * &y);
        prop_assert_eq!((&p + &q).eval(&a).unwrap(), &x + &y);
        prop_assert_eq!(x, naive_eval(&p, &v));
    }

    #[test]
    fn eval_at_rationals(p in poly(), v in point(), d in 2i64..=5) {
        let mut a = Assignment::new();
        let mut scaled = Assignment::new();
        for (i, &x) in v.iter().enumerate() {
            a.set(i, BigRational::new(BigInt::from(x), BigInt::from(d)));
            scaled.set(i, BigRational::from_integer(BigInt::from(x)));
        }
        let halfway = p.eval(&a).unwrap();
        let mut expect = BigRational::zero();
        for (m, c) in p.terms() {
            let t = LaurentPoly::monomial(c.clone(), *m);
            let k = m.degree();
            let f = BigRational::from_integer(BigInt::from(d));
            let f = if k < 0 { f.pow(-k) } else { f.pow(k).recip() };
            expect += t.eval(&scaled).unwrap() * f;
        }
        prop_assert_eq!(halfway, expect);
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q), Some(p));
    }

    #[test]
    fn monomials_are_units(e in prop::array::uniform4(-3i32..=3), s in prop::bool::ANY) {
        let mut full = [0i32; MAX_VARS];
        full[..VARS].copy_from_slice(&e);
        let m = Monomial::from_exponents(&full);
        let p = LaurentPoly::monomial(if s { 1 } else { -1 }, m);
        let all = VarSet::from_indices(&[0, 1, 2, 3]);
        let inv = p.unit_inverse(all).unwrap();
        prop_assert!((&p * &inv).is_one());
    }
}

#[test]
fn non_unit_has_no_inverse() {
    let p: LaurentPoly = "a".parse().unwrap();
    assert!(p.unit_inverse(VarSet::from_indices(&[2])).is_none());
    let q: LaurentPoly = "a + 1".parse().unwrap();
    assert!(q.unit_inverse(VarSet::from_indices(&[0])).is_none());
    assert!(LaurentPoly::one().eval(&Assignment::new()).unwrap().is_one());
}
