use std::path::Path;
use std::process::{Command, Output};

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckekit"))
        .args(args)
        .env("HECKEKIT_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn rewrite_prints_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["rewrite", "--group", "G4", "s^3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "a*b3 + b*b2 + c*b1");
    let o = run(dir.path(), &["rewrite", "--group", "G5", ""]);
    assert_eq!(stdout(&o).trim(), "1*b1");
    let o = run(dir.path(), &["rewrite", "--group", "G4", "s x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown symbol"));
}

#[test]
fn iteration_cap_exits_with_the_stuck_term() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["rewrite", "--group", "G4", "--max-iter", "1", "s^4 t^4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stuck on"));
}

#[test]
fn tables_are_cached() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(dir.path(), &["tables", "--group", "G6"]);
    assert!(first.status.success());
    let first = json_lines(&first);
    assert_eq!(first.len(), 2);
    assert!(first.iter().all(|v| v["cached"] == false && v["rows"] == 48));
    let second = json_lines(&run(dir.path(), &["tables", "--group", "G6"]));
    assert!(second.iter().all(|v| v["cached"] == true));
    assert_eq!(first[0]["digest"], second[0]["digest"]);
    assert!(dir.path().join("tables-G6.json").exists());
}

#[test]
fn gram_direct_g4_is_full_and_symmetric() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g4.json");
    let o = run(
        dir.path(),
        &["gram", "--group", "G4", "--mode", "direct", "--out", out.to_str().unwrap()],
    );
    assert!(o.status.success());
    assert_eq!(json_lines(&o)[0]["pass"], true);
    let m: Vec<Vec<Option<String>>> = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(m.len(), 24);
    assert!(m.iter().all(|r| r.len() == 24 && r.iter().all(Option::is_some)));
    assert_eq!(m[0][0].as_deref(), Some("1"));
}

#[test]
fn gram_sample_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gram", "--group", "G5", "--mode", "direct", "--sample", "20", "--seed", "7", "--out"];
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let mut first = args.to_vec();
    first.push(a.to_str().unwrap());
    let mut second = args.to_vec();
    second.push(b.to_str().unwrap());
    assert!(run(dir.path(), &first).status.success());
    assert!(run(dir.path(), &second).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn determinants_match_the_claims() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["det", "--group", "G4", "--strategy", "symbolic"]);
    assert!(o.status.success());
    let r = &json_lines(&o)[0];
    assert_eq!(r["det"], "-c^58");
    assert_eq!(r["match"], true);
    let o = run(
        dir.path(),
        &["det", "--group", "G5", "--strategy", "primes", "--trials", "3", "--seed", "42"],
    );
    assert!(o.status.success());
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|r| r["match"] == true && r["claimed"] == "-c^288*f^276"));
}

#[test]
fn verify_all_gives_four_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify", "--group", "G4", "--check", "all"]);
    assert!(o.status.success());
    let checks: Vec<String> = json_lines(&o).iter().map(|r| r["check"].as_str().unwrap().to_string()).collect();
    assert_eq!(checks, ["symmetry", "extra_condition", "group_specialization", "freeness"]);
    let o = run(dir.path(), &["verify", "--group", "G6", "--check", "specialize"]);
    assert!(o.status.success());
}

#[test]
fn invalid_rule_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let rules = dir.path().join("bad.rules");
    std::fs::write(&rules, "swap: s t -> t s\n").unwrap();
    let o = run(
        dir.path(),
        &["rewrite", "--group", "G4", "--rules", rules.to_str().unwrap(), "--", "s t"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("failed validation"));
}

#[test]
fn cache_flag_overrides_the_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = run(
        env_dir.path(),
        &["tables", "--group", "G4", "--cache", flag_dir.path().to_str().unwrap()],
    );
    assert!(o.status.success());
    assert!(flag_dir.path().join("tables-G4.json").exists());
    assert!(!env_dir.path().join("tables-G4.json").exists());
}
