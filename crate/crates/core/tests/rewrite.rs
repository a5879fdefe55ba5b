mod common;

use common::{algebra, builtin, data_rules, GROUPS};
use heckekit_core::algebra::{BasisCombo, Element, GroupName, Word};
use heckekit_core::rewrite::{
    apply_special_case, braid_neighbors, load_rules, parse_element, parse_rules, reduce, reduce_word, Algebra,
    ReduceLimits, RuleKind, RuleSet,
};
use heckekit_core::verify::random_word;
use heckekit_core::Error;
use heckekit_laurent::LaurentPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lim() -> ReduceLimits {
    ReduceLimits::default()
}

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn word(g: GroupName, s: &str) -> Word {
    algebra(g).spec.parse_word(s).unwrap()
}

fn rw(g: GroupName, s: &str) -> String {
    let alg = algebra(g);
    let e = parse_element(&alg.spec, s).unwrap();
    reduce(alg, builtin(g), &e, &lim()).unwrap().to_text()
}

#[test]
fn g4_cube_of_s() {
    assert_eq!(rw(GroupName::G4, "s^3"), "a*b3 + b*b2 + c*b1");
}

#[test]
fn empty_word_is_the_identity() {
    for g in GROUPS {
        assert_eq!(rw(g, ""), "1*b1");
    }
}

#[test]
fn g7_s_expansion() {
    let g = GroupName::G7;
    let alg = algebra(g);
    let got = reduce_word(alg, builtin(g), &word(g, "s"), &lim()).unwrap();
    let expect = parse_element(
        &alg.spec,
        "e^-1*h^-1*(z u^2 t^2 - c*z u^2 t - f*z u t^2 - d*z u^2 - g*z t^2 + c*f*z u t + d*f*z u + c*g*z t + d*g*z)",
    )
    .unwrap();
    assert_eq!(got, reduce(alg, builtin(g), &expect, &lim()).unwrap());
    assert_eq!(got.len(), 9);
}

#[test]
fn g6_fourth_power_of_z_follows_case_six() {
    let g = GroupName::G6;
    let alg = algebra(g);
    let rules = builtin(g);
    let z4 = word(g, "z^4");
    let case6 = apply_special_case(rules, &LaurentPoly::one(), &z4).expect("case 6 matches");
    assert_eq!(case6.len(), 10);
    let direct = reduce_word(alg, &RuleSet::defining(&alg.spec), &z4, &lim()).unwrap();
    assert_eq!(reduce(alg, rules, &case6, &lim()).unwrap(), direct);
    assert_eq!(reduce_word(alg, rules, &z4, &lim()).unwrap(), direct);
}

#[test]
fn g6_case_one_and_two() {
    let g = GroupName::G6;
    let rules = builtin(g);
    let one = LaurentPoly::one();
    let got = apply_special_case(rules, &one, &word(g, "z^2 t s t z t^2 s")).expect("case 1");
    assert_eq!(got, Element::word(word(g, "z^3 t s t^3 s")));
    let got = apply_special_case(rules, &p("a"), &word(g, "z t s t s t")).expect("case 2");
    assert_eq!(got, Element::term(p("a"), word(g, "z^2 s^-1")));
    assert!(apply_special_case(rules, &one, &word(g, "s t")).is_none());
}

#[test]
fn braid_neighbours() {
    let n = |g: GroupName, w: &str| -> Vec<Word> { braid_neighbors(&algebra(g).spec, &word(g, w), 1).into_iter().collect() };
    let mut expect = vec![word(GroupName::G4, "s t s"), word(GroupName::G4, "t s t")];
    expect.sort();
    assert_eq!(n(GroupName::G4, "s t s"), expect);
    let mut expect = vec![word(GroupName::G6, "s t s t s t"), word(GroupName::G6, "t s t s t s")];
    expect.sort();
    assert_eq!(n(GroupName::G6, "s t s t s t"), expect);
    assert_eq!(n(GroupName::G6, "s t"), vec![word(GroupName::G6, "s t")]);
}

#[test]
fn g6_builtin_rules_are_the_relations_and_six_cases() {
    let spec = &algebra(GroupName::G6).spec;
    let rules = RuleSet::builtin(spec);
    let cases: Vec<_> = rules.of_kind(RuleKind::SpecialCase).map(|r| r.name.clone()).collect();
    assert_eq!(cases, ["case1", "case2", "case3", "case4", "case5", "case6"]);
    let empty = tempfile::NamedTempFile::new().unwrap();
    let loaded = load_rules(algebra(GroupName::G6), &[empty.path()]).unwrap();
    assert_eq!(loaded.digest(spec), rules.digest(spec));
}

#[test]
fn builtin_g6_cases_are_sound() {
    let alg = algebra(GroupName::G6);
    for r in RuleSet::builtin(&alg.spec).of_kind(RuleKind::SpecialCase) {
        heckekit_core::rewrite::validate_rule(alg, r).unwrap();
    }
}

#[test]
fn rule_parse_errors_carry_line_and_column() {
    let spec = &algebra(GroupName::G4).spec;
    let text = "# comment\ns t s -> t s t\nvar k in 0..2;\ns^k q -> s\n";
    match parse_rules(spec, text, "test") {
        Err(Error::RuleParse { line, col, .. }) => assert_eq!((line, col), (4, 5)),
        other => panic!("{other:?}"),
    }
    match parse_rules(spec, "s^j -> t", "test") {
        Err(Error::RuleParse { line: 1, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn wrong_rule_fails_validation() {
    let alg = algebra(GroupName::G4);
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), "bad: s t -> t s\n").unwrap();
    match load_rules(alg, &[f.path()]) {
        Err(Error::RuleValidation { rule, .. }) => assert_eq!(rule, "bad"),
        other => panic!("{:?}", other.map(|_| ())),
    }
}

#[test]
fn duplicate_rule_is_inert() {
    let alg = algebra(GroupName::G6);
    let base = RuleSet::builtin(&alg.spec);
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        f.path(),
        "var k in 0..2; var m in 0..2; var n in 0..2;\nagain: z^k t^m s t s t^n -> z^(k+1) t^(m-1) s^-1 t^(n-1)\n",
    )
    .unwrap();
    let loaded = load_rules(alg, &[f.path()]).unwrap();
    assert_eq!(loaded.rules.len(), base.rules.len());
    assert_eq!(loaded.digest(&alg.spec), base.digest(&alg.spec));
}

#[test]
fn shipped_rule_files_validate() {
    for g in [GroupName::G4, GroupName::G5, GroupName::G7, GroupName::G8] {
        let alg = algebra(g);
        let rules = load_rules(alg, &[data_rules(g)]).unwrap();
        assert!(rules.rules.len() > builtin(g).rules.len(), "{g}");
        let w = word(g, "s t s^-1 t^2 s");
        assert_eq!(
            reduce_word(alg, &rules, &w, &lim()).unwrap(),
            reduce_word(alg, builtin(g), &w, &lim()).unwrap(),
            "{g}"
        );
    }
}

#[test]
fn iteration_cap_reports_the_stuck_term() {
    let g = GroupName::G7;
    let tight = ReduceLimits {
        max_iterations: 1,
        ..lim()
    };
    let e = Element::word(word(g, "s^3 t^4 u^5"));
    match reduce(algebra(g), builtin(g), &e, &tight) {
        Err(Error::NonTerminating { term, .. }) => assert!(!term.is_empty()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn g4_needs_no_special_cases() {
    let g = GroupName::G4;
    let alg = algebra(g);
    let defining = RuleSet::defining(&alg.spec);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let len = rng.gen_range(1..=8);
        let w = random_word(&alg.spec, &mut rng, len);
        assert_eq!(
            reduce_word(alg, &defining, &w, &lim()).unwrap(),
            reduce_word(alg, builtin(g), &w, &lim()).unwrap()
        );
    }
}

fn random_coef(rng: &mut impl Rng) -> LaurentPoly {
    let names = ["a", "b", "1", "2", "-3"];
    let mut pick = || p(names[rng.gen_range(0..names.len())]);
    &pick() * &pick()
}

#[test]
fn linearity_and_idempotence() {
    for g in GROUPS {
        let alg = algebra(g);
        let rules = builtin(g);
        let spec = &alg.spec;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for case in 0..200 {
            let (l1, l2) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let (w1, w2) = (random_word(spec, &mut rng, l1), random_word(spec, &mut rng, l2));
            let (x, y) = (random_coef(&mut rng), random_coef(&mut rng));
            let r1 = reduce_word(alg, rules, &w1, &lim()).unwrap();
            let r2 = reduce_word(alg, rules, &w2, &lim()).unwrap();
            let e = Element::from_terms([(x.clone(), w1), (y.clone(), w2)]);
            let both = reduce(alg, rules, &e, &lim()).unwrap();
            assert_eq!(both, r1.scale(&x).add(&r2.scale(&y)), "{g} case {case}");
            let again = Element::from_terms(both.iter().map(|(i, c)| (c.clone(), spec.basis[i].clone())));
            assert_eq!(reduce(alg, rules, &again, &lim()).unwrap(), both, "{g} case {case}");
        }
    }
}

#[test]
fn basis_words_reduce_to_themselves() {
    for g in GROUPS {
        let alg = algebra(g);
        for (i, b) in alg.spec.basis.iter().enumerate() {
            assert_eq!(reduce_word(alg, builtin(g), b, &lim()).unwrap(), BasisCombo::unit(i), "{g} b{}", i + 1);
        }
    }
}

#[test]
fn braid_depth_does_not_change_results() {
    for g in [GroupName::G4, GroupName::G6, GroupName::G8] {
        let alg = algebra(g);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let len = rng.gen_range(1..=6);
            let w = random_word(&alg.spec, &mut rng, len);
            let base = reduce_word(alg, builtin(g), &w, &lim()).unwrap();
            for depth in [2, 3] {
                let l = ReduceLimits {
                    braid_search_depth: depth,
                    ..lim()
                };
                assert_eq!(reduce_word(alg, builtin(g), &w, &l).unwrap(), base, "{g} depth {depth}");
            }
        }
    }
}

#[test]
fn memo_does_not_change_results() {
    let g = GroupName::G5;
    let memo = Algebra::load(g, Some(&common::cache_dir())).unwrap().with_memo(true);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let len = rng.gen_range(1..=6);
        let w = random_word(&memo.spec, &mut rng, len);
        let a = reduce_word(&memo, builtin(g), &w, &lim()).unwrap();
        let b = reduce_word(&memo, builtin(g), &w, &lim()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, reduce_word(algebra(g), builtin(g), &w, &lim()).unwrap());
    }
}
