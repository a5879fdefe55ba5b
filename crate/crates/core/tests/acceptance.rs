mod common;

use std::time::{Duration, Instant};

use common::{algebra, builtin, cache_dir, GROUPS};
use heckekit_core::algebra::{Element, GroupName, Word};
use heckekit_core::gram::{
    center_power_combo, det_report_primes, det_symbolic, gram_direct, gram_inductive, prime_assignments, GramMatrix,
    MultTables,
};
use heckekit_core::rewrite::{parse_element, reduce, reduce_word, ReduceLimits};
use heckekit_core::verify::{
    check_replays, check_extra_condition, check_freeness, check_group_specialization, check_symmetry,
    check_trace_property, random_word, tau, VerificationReport,
};
use heckekit_core::{Error, Result};
use heckekit_laurent::{Assignment, BigInt, LaurentPoly, Monomial, MAX_VARS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;

fn lim() -> ReduceLimits {
    ReduceLimits::default()
}

struct Built {
    tables: MultTables,
    gram: GramMatrix,
}

fn build(g: GroupName) -> Result<Built> {
    let alg = algebra(g);
    let tables = MultTables::compute(alg, builtin(g), &lim(), Some(&cache_dir()))?;
    let mu = center_power_combo(alg, &tables, builtin(g), &lim())?;
    let gram = gram_inductive(&alg.spec, &tables, &mu)?;
    Ok(Built { tables, gram })
}

fn tau_of(g: GroupName, s: &str) -> Result<LaurentPoly> {
    let alg = algebra(g);
    tau(alg, builtin(g), &parse_element(&alg.spec, s)?, &lim())
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().expect("polynomial literal")
}

struct Verdict {
    ok: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Self { ok: true, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, note: impl Into<String>) {
        let note = note.into();
        self.ok &= ok;
        self.notes.push(if ok { note } else { format!("FAILED {note}") });
    }

    fn report(&mut self, r: &VerificationReport) {
        let first = r.failures.first().map(|f| format!(" first {} {} vs {}", f.item, f.expected, f.actual));
        self.check(
            r.pass,
            format!("{} {} {} ms{}", r.group, r.check, r.elapsed_ms, first.unwrap_or_default()),
        );
    }
}

fn sample_pairs(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    (0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
}

fn oracle_sample(g: GroupName, a: &GramMatrix, v: &mut Verdict) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pairs = sample_pairs(a.size(), 200, &mut rng);
    let d = gram_direct(algebra(g), builtin(g), Some(&pairs), &lim())?;
    let bad = pairs.iter().filter(|&&(i, j)| d.get(i, j) != a.get(i, j)).count();
    v.check(bad == 0, format!("{g} direct oracle {}/200 pairs agree", 200 - bad));
    Ok(())
}

fn primes(g: GroupName, a: &GramMatrix, v: &mut Verdict) -> Result<()> {
    let spec = &algebra(g).spec;
    let reports = prime_assignments(spec, 3, SEED)
        .iter()
        .map(|p| det_report_primes(spec, a, p))
        .collect::<Result<Vec<_>>>()?;
    let hits = reports.iter().filter(|r| r.matches).count();
    v.check(hits == 3, format!("{g} det at primes {hits}/3 equal {}", spec.claimed_det_poly().pretty()));
    Ok(())
}

fn criterion_1() -> Result<Verdict> {
    let start = Instant::now();
    let g = GroupName::G4;
    let b = build(g)?;
    let mut v = Verdict::new();
    let d = gram_direct(algebra(g), builtin(g), None, &lim())?;
    let n = b.gram.size();
    let agree = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| d.get(i, j).is_some() && d.get(i, j) == b.gram.get(i, j))
        .count();
    v.check(agree == 576, format!("inductive and direct agree on {agree}/576 entries"));
    v.report(&check_symmetry(&b.gram));
    let det = det_symbolic(&b.gram, None)?;
    v.check(det == poly("-c^58"), format!("det {}", det.pretty()));
    let secs = start.elapsed().as_secs_f64();
    v.check(secs <= 900.0, format!("{secs:.1} s"));
    Ok(v)
}

fn criterion_2() -> Result<Verdict> {
    let g = GroupName::G6;
    let b = build(g)?;
    let mut v = Verdict::new();
    v.report(&check_symmetry(&b.gram));
    primes(g, &b.gram, &mut v)?;
    oracle_sample(g, &b.gram, &mut v)?;
    let start = Instant::now();
    match det_symbolic(&b.gram, Some(Duration::from_secs(1800))) {
        Ok(det) => v.check(
            det == poly("b^252*e^200"),
            format!("symbolic det {} in {:.1} s", det.pretty(), start.elapsed().as_secs_f64()),
        ),
        Err(Error::ResourceCap(msg)) => v.notes.push(format!("symbolic det not finished: {msg}")),
        Err(e) => return Err(e),
    }
    Ok(v)
}

fn prime_criterion(g: GroupName) -> Result<(Verdict, GramMatrix)> {
    let b = build(g)?;
    let mut v = Verdict::new();
    v.report(&check_symmetry(&b.gram));
    primes(g, &b.gram, &mut v)?;
    oracle_sample(g, &b.gram, &mut v)?;
    Ok((v, b.gram))
}

fn criterion_5() -> Result<Verdict> {
    let (mut v, a) = prime_criterion(GroupName::G7)?;
    let x = a.get(12, 133).cloned().unwrap_or_default();
    v.check(x == poly("b^6*e^4*f*h^4"), format!("A[13][134] = {}", x.pretty()));
    let y = a.get(72, 72).cloned().unwrap_or_default();
    v.check(y == poly("b^6*e^4*h^4"), format!("A[73][73] = {}", y.pretty()));
    Ok(v)
}

fn criterion_6() -> Result<Verdict> {
    let mut v = Verdict::new();
    for g in GROUPS {
        let alg = algebra(g);
        v.report(&check_extra_condition(alg, builtin(g), &lim())?);
        let tables = MultTables::compute(alg, builtin(g), &lim(), Some(&cache_dir()))?;
        let mu = center_power_combo(alg, &tables, builtin(g), &lim())?;
        let z = reduce_word(alg, builtin(g), &Word::z_pow(alg.spec.center_order as i32), &lim())?;
        let again = Element::from_terms(mu.iter().map(|(i, c)| (c.clone(), alg.spec.basis[i].clone())));
        let fixed = reduce(alg, builtin(g), &again, &lim())? == mu;
        v.check(z == mu && fixed, format!("{g} top central power matches its coordinates"));
    }
    for g in [GroupName::G5, GroupName::G7] {
        v.report(&check_replays(algebra(g), builtin(g), &lim())?);
    }
    let x = tau_of(GroupName::G5, "z^6 s^-1")?;
    v.check(x.is_zero(), format!("G5 tau(z^6 b2^-1) = {}", x.pretty()));
    let x = tau_of(GroupName::G7, "z^12 u^-2")?;
    v.check(x.is_zero(), format!("G7 tau(z^12 b3^-1) = {}", x.pretty()));
    Ok(v)
}

fn criterion_7() -> Result<Verdict> {
    let mut v = Verdict::new();
    for g in GROUPS {
        let b = build(g)?;
        v.report(&check_group_specialization(algebra(g), builtin(g), &b.gram, &lim())?);
    }
    Ok(v)
}

fn criterion_8() -> Result<Verdict> {
    let mut v = Verdict::new();
    for g in GROUPS {
        let b = build(g)?;
        v.report(&check_freeness(algebra(g), &b.tables, builtin(g), &lim())?);
    }
    Ok(v)
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let k = rng.gen_range(0..5);
    LaurentPoly::from_terms((0..k).map(|_| {
        let mut e = [0i32; MAX_VARS];
        for x in e.iter_mut().take(4) {
            *x = rng.gen_range(-3..=3);
        }
        (Monomial::from_exponents(&e), BigInt::from(rng.gen_range(-9i64..=9)))
    }))
}

fn criterion_9() -> Result<Verdict> {
    let mut v = Verdict::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let point = Assignment::integers(&[2, -3, 5, 7]);
    let mut good = 0;
    for _ in 0..1000 {
        let (p, q, r) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
        let ok = &p * &(&q + &r) == &(&p * &q) + &(&p * &r)
            && &(&p * &q) * &r == &p * &(&q * &r)
            && &p * &q == &q * &p
            && (&p - &p).is_zero()
            && p.to_string().parse::<LaurentPoly>().ok().as_ref() == Some(&p)
            && (&p * &q).eval(&point)? == p.eval(&point)? * q.eval(&point)?
            && (q.is_zero() || (&p * &q).exact_div(&q).as_ref() == Some(&p));
        good += ok as usize;
    }
    v.check(good == 1000, format!("laurent ring laws {good}/1000"));
    for g in GROUPS {
        let alg = algebra(g);
        let rules = builtin(g);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut good = 0;
        for _ in 0..200 {
            let (l1, l2) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let w1 = random_word(&alg.spec, &mut rng, l1);
            let w2 = random_word(&alg.spec, &mut rng, l2);
            let (x, y) = (random_poly(&mut rng), random_poly(&mut rng));
            let x = if alg.spec.valid_coefficient(&x) { x } else { LaurentPoly::from(3) };
            let y = if alg.spec.valid_coefficient(&y) { y } else { LaurentPoly::from(-2) };
            let r1 = reduce_word(alg, rules, &w1, &lim())?;
            let r2 = reduce_word(alg, rules, &w2, &lim())?;
            let both = reduce(alg, rules, &Element::from_terms([(x.clone(), w1), (y.clone(), w2)]), &lim())?;
            let again = Element::from_terms(both.iter().map(|(i, c)| (c.clone(), alg.spec.basis[i].clone())));
            let ok = both == r1.scale(&x).add(&r2.scale(&y)) && reduce(alg, rules, &again, &lim())? == both;
            good += ok as usize;
        }
        v.check(good == 200, format!("{g} reduce linear and idempotent {good}/200"));
        v.report(&check_trace_property(alg, rules, 100, SEED, &lim())?);
    }
    Ok(v)
}

fn criterion_10() -> Result<Verdict> {
    let mut v = Verdict::new();
    let x = tau_of(GroupName::G4, "t^-1")?;
    v.check(x == poly("-b*c^-1"), format!("G4 tau(t^-1) = {}", x.pretty()));
    let x = tau_of(GroupName::G7, "t u^2 t^2")?;
    v.check(x.is_zero(), format!("G7 tau(t u^2 t^2) = {}", x.pretty()));
    let x = tau_of(GroupName::G7, "u^2 t^3")?;
    v.check(x.is_zero(), format!("G7 tau(u^2 t^3) = {}", x.pretty()));
    Ok(v)
}

fn main() {
    type Criterion = (&'static str, Box<dyn Fn() -> Result<Verdict>>);
    let criteria: Vec<Criterion> = vec![
        ("G4 Gram matrix", Box::new(criterion_1)),
        ("G6 Gram matrix", Box::new(criterion_2)),
        ("G8 Gram matrix", Box::new(|| prime_criterion(GroupName::G8).map(|r| r.0))),
        ("G5 Gram matrix", Box::new(|| prime_criterion(GroupName::G5).map(|r| r.0))),
        ("G7 Gram matrix", Box::new(criterion_5)),
        ("extra condition", Box::new(criterion_6)),
        ("group algebra specialisation", Box::new(criterion_7)),
        ("freeness", Box::new(criterion_8)),
        ("property suites", Box::new(criterion_9)),
        ("trace values", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(v) => (v.ok, v.notes.join("; ")),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !ok as usize;
        println!(
            "criterion {:>2} {} [{name}, {:.1} s]: {detail}",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
