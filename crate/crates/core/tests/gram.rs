mod common;

use common::{algebra, builtin, cache_dir};
use heckekit_core::algebra::{BasisCombo, Element, GroupName, Word};
use heckekit_core::gram::{
    center_power_combo, det_specialized, det_symbolic, gram_direct, gram_inductive, mult_table, prime_assignments,
    spot_check, to_assignment, GramMatrix, MultTables,
};
use heckekit_core::rewrite::{reduce, reduce_word, ReduceLimits};
use heckekit_laurent::{Assignment, BigInt, BigRational, LaurentPoly};

fn lim() -> ReduceLimits {
    ReduceLimits::default()
}

fn tables(g: GroupName) -> MultTables {
    MultTables::compute(algebra(g), builtin(g), &lim(), Some(&cache_dir())).unwrap()
}

#[test]
fn g8_s_times_one_is_b2() {
    let g = GroupName::G8;
    let t = tables(g);
    let s = algebra(g).spec.gen_id('s').unwrap();
    assert_eq!(t.get(s).rows[0], BasisCombo::unit(1));
}

#[test]
fn first_row_is_the_generator() {
    for g in [GroupName::G4, GroupName::G5, GroupName::G6] {
        let alg = algebra(g);
        for (gen, table) in &tables(g).tables {
            let direct = reduce_word(alg, builtin(g), &Word::gen_pow(*gen, 1), &lim()).unwrap();
            assert_eq!(table.rows[0], direct);
            assert!(spot_check(alg, table, 10, 3).unwrap().is_empty());
        }
    }
}

#[test]
fn g7_t_rows_have_no_identity_part() {
    let g = GroupName::G7;
    let t = tables(g);
    let tg = algebra(g).spec.gen_id('t').unwrap();
    let table = t.get(tg);
    for k in 1..12 {
        for m in [2, 6, 8] {
            assert!(table.rows[12 * k + m - 1].get(0).is_zero(), "k={k} m={m}");
        }
    }
}

#[test]
fn uncached_table_matches_cached() {
    let g = GroupName::G6;
    let alg = algebra(g);
    let t = tables(g);
    let (gen, cached) = &t.tables[1];
    assert_eq!(&mult_table(alg, *gen, builtin(g), &lim()).unwrap(), cached);
}

#[test]
fn center_power_is_reduced() {
    for g in [GroupName::G4, GroupName::G5, GroupName::G6, GroupName::G8] {
        let alg = algebra(g);
        let t = tables(g);
        let mu = center_power_combo(alg, &t, builtin(g), &lim()).unwrap();
        let z = Word::z_pow(alg.spec.center_order as i32);
        assert_eq!(reduce_word(alg, builtin(g), &z, &lim()).unwrap(), mu, "{g}");
        let again = Element::from_terms(mu.iter().map(|(i, c)| (c.clone(), alg.spec.basis[i].clone())));
        assert_eq!(reduce(alg, builtin(g), &again, &lim()).unwrap(), mu, "{g}");
    }
}

#[test]
fn g4_inductive_equals_direct() {
    let g = GroupName::G4;
    let alg = algebra(g);
    let t = tables(g);
    let mu = center_power_combo(alg, &t, builtin(g), &lim()).unwrap();
    let a = gram_inductive(&alg.spec, &t, &mu).unwrap();
    let d = gram_direct(alg, builtin(g), None, &lim()).unwrap();
    assert!(d.is_complete());
    assert_eq!(a.rows().unwrap(), d.rows().unwrap());
    assert_eq!(det_symbolic(&a, None).unwrap(), "-c^58".parse().unwrap());
    let at5 = det_specialized(&a, &Assignment::new().with('a', 2).with('b', 3).with('c', 5)).unwrap();
    assert_eq!(at5, -BigRational::from_integer(BigInt::from(5).pow(58u32)));
}

#[test]
fn g8_structure() {
    let g = GroupName::G8;
    let alg = algebra(g);
    let t = tables(g);
    let mu = center_power_combo(alg, &t, builtin(g), &lim()).unwrap();
    let a = gram_inductive(&alg.spec, &t, &mu).unwrap();
    for i in 0..96 {
        assert_eq!(a.get(0, i).unwrap().is_one(), i == 0);
    }
    for k in 1..4 {
        for j in 0..24 * (4 - k) {
            assert!(a.get(24 * k, j).unwrap().is_zero(), "k={k} j={j}");
        }
    }
    let point = Assignment::new().with('a', 2).with('b', 3).with('c', 5).with('d', 7);
    assert_eq!(
        det_specialized(&a, &point).unwrap(),
        BigRational::from_integer(BigInt::from(7).pow(600u32))
    );
    let pairs: Vec<(usize, usize)> = (0..40).map(|k| ((k * 37 + 5) % 96, (k * 53 + 2) % 96)).collect();
    let d = gram_direct(alg, builtin(g), Some(&pairs), &lim()).unwrap();
    for &(i, j) in &pairs {
        assert_eq!(d.get(i, j), a.get(i, j), "({i}, {j})");
    }
}

#[test]
fn small_determinants() {
    let one = GramMatrix::from_rows(GroupName::G4, vec![vec![LaurentPoly::one()]]);
    assert!(det_symbolic(&one, None).unwrap().is_one());
    let p = |s: &str| s.parse::<LaurentPoly>().unwrap();
    let m = GramMatrix::from_rows(GroupName::G4, vec![vec![p("a"), p("c^-1")], vec![p("c"), p("b")]]);
    assert_eq!(det_symbolic(&m, None).unwrap(), p("a*b - 1"));
    let id = GramMatrix::from_rows(
        GroupName::G4,
        (0..3)
            .map(|i| (0..3).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect())
            .collect(),
    );
    let point = Assignment::new().with('a', 7);
    assert_eq!(det_specialized(&id, &point).unwrap(), BigRational::from_integer(BigInt::from(1)));
}

#[test]
fn matrix_json_round_trip() {
    let p = |s: &str| s.parse::<LaurentPoly>().unwrap();
    let mut m = GramMatrix::from_rows(GroupName::G5, vec![vec![p("1"), p("-a*c^-1 + 2")], vec![p("0"), p("f")]]);
    m.entries[1][0] = None;
    let text = m.to_json();
    assert_eq!(text, r#"[["1","-1*a^1*c^-1 + 2"],[null,"1*f^1"]]"#);
    assert_eq!(GramMatrix::from_json(GroupName::G5, &text).unwrap(), m);
}

#[test]
fn prime_assignments_are_distinct_and_seeded() {
    let spec = &algebra(GroupName::G7).spec;
    let a = prime_assignments(spec, 3, 42);
    assert_eq!(a, prime_assignments(spec, 3, 42));
    assert_eq!(a.len(), 3);
    assert_eq!(a[0].values().copied().collect::<Vec<_>>(), [2, 3, 5, 7, 11, 13, 17, 19]);
    for v in &a {
        let mut xs: Vec<i64> = v.values().copied().collect();
        xs.sort_unstable();
        xs.dedup();
        assert_eq!(xs.len(), 8);
        assert!(to_assignment(v).get(0).is_some());
    }
}
