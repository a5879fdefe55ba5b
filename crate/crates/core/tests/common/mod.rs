#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use heckekit_core::algebra::GroupName;
use heckekit_core::rewrite::{Algebra, RuleSet};

pub const GROUPS: [GroupName; 5] = [GroupName::G4, GroupName::G5, GroupName::G6, GroupName::G7, GroupName::G8];

pub fn cache_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("heckekit-cache")
}

fn slot(g: GroupName) -> usize {
    GROUPS.iter().position(|&h| h == g).unwrap()
}

/// The algebra of `g`, built once per test binary and cached on disk.
pub fn algebra(g: GroupName) -> &'static Algebra {
    static CELLS: [OnceLock<Algebra>; 5] = [const { OnceLock::new() }; 5];
    CELLS[slot(g)].get_or_init(|| Algebra::load(g, Some(&cache_dir())).expect("tables"))
}

pub fn builtin(g: GroupName) -> &'static RuleSet {
    static CELLS: [OnceLock<RuleSet>; 5] = [const { OnceLock::new() }; 5];
    CELLS[slot(g)].get_or_init(|| RuleSet::builtin(&algebra(g).spec))
}

pub fn data_rules(g: GroupName) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/rules")
        .join(format!("{g}.rules"))
}
