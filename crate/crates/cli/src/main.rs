use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use heckekit_core::algebra::GroupName;
use heckekit_core::gram::{
    center_power_combo, det_report_primes, det_report_symbolic, gram_direct, gram_inductive, mult_table_cached,
    prime_assignments, GramMatrix, MultTables,
};
use heckekit_core::rewrite::{load_rules, parse_element, reduce, Algebra, ReduceLimits, RuleSet, CACHE_ENV};
use heckekit_core::verify::{
    check_replays, check_extra_condition, check_freeness, check_group_specialization, check_symmetry,
    check_trace_property, VerificationReport,
};
use heckekit_core::Error;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEFAULT_CACHE: &str = "heckekit-cache";

#[derive(Parser)]
#[command(name = "heckekit", version, about = "Hecke algebras of G4 to G8 and the Gram matrix of their trace")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// G4, G5, G6, G7 or G8.
    #[arg(long)]
    group: GroupName,
    /// Cache directory.
    #[arg(long, env = CACHE_ENV, default_value = DEFAULT_CACHE)]
    cache: PathBuf,
    /// Extra rule files, validated before use.
    #[arg(long, num_args = 1..)]
    rules: Vec<PathBuf>,
    /// Iteration cap of a single reduction.
    #[arg(long, default_value_t = ReduceLimits::default().max_iterations)]
    max_iter: usize,
    /// Braid moves tried per step.
    #[arg(long, default_value_t = ReduceLimits::default().braid_search_depth)]
    braid_depth: usize,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Inductive,
    Direct,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Symbolic,
    Primes,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Check {
    Symmetry,
    Extra,
    Specialize,
    Freeness,
    Replays,
    Trace,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiplication tables of the two recurrence generators.
    Tables(Common),
    /// The Gram matrix of the trace.
    Gram {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "inductive")]
        mode: Mode,
        /// Number of random pairs for direct mode; all pairs when absent.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Determinant of the Gram matrix against the claimed monomial.
    Det {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "primes")]
        strategy: Strategy,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Seconds allowed for the symbolic determinant.
        #[arg(long)]
        time_limit: Option<u64>,
    },
    /// Checks on the trace, one JSON report per line.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        check: Check,
        /// Number of word pairs for the trace check.
        #[arg(long, default_value_t = 100)]
        sample: usize,
    },
    /// Basis coordinates of an element.
    Rewrite {
        #[command(flatten)]
        common: Common,
        /// Words such as `s t^-1 s^2`, optionally with coefficients.
        text: String,
    },
}

struct Ctx {
    alg: Algebra,
    rules: RuleSet,
    limits: ReduceLimits,
    common: Common,
}

impl Ctx {
    fn new(common: &Common) -> Result<Self> {
        let alg = Algebra::load(common.group, Some(&common.cache))?;
        let rules = load_rules(&alg, &common.rules)?;
        let limits = ReduceLimits {
            max_iterations: common.max_iter,
            braid_search_depth: common.braid_depth,
        };
        Ok(Self {
            alg,
            rules,
            limits,
            common: common.clone(),
        })
    }

    fn tables(&self) -> Result<MultTables> {
        Ok(MultTables::compute(&self.alg, &self.rules, &self.limits, Some(&self.common.cache))?)
    }

    fn gram_path(&self) -> PathBuf {
        let digest = self.rules.digest(&self.alg.spec);
        self.common
            .cache
            .join(format!("gram-{}-{}.json", self.alg.spec.name, &digest[..16]))
    }

    /// The inductive matrix, from the cache when present.
    fn gram(&self) -> Result<GramMatrix> {
        let path = self.gram_path();
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(m) = GramMatrix::from_json(self.alg.spec.name, &text) {
                if m.size() == self.alg.spec.order() && m.is_complete() {
                    return Ok(m);
                }
            }
        }
        let tables = self.tables()?;
        let mu = center_power_combo(&self.alg, &tables, &self.rules, &self.limits)?;
        let m = gram_inductive(&self.alg.spec, &tables, &mu)?;
        write_atomic(&path, &m.to_json())?;
        Ok(m)
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| dir.display().to_string())?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text).with_context(|| tmp.display().to_string())?;
    std::fs::rename(&tmp, path).with_context(|| path.display().to_string())?;
    Ok(())
}

fn emit(common: &Common, lines: &[String]) -> Result<()> {
    let text = lines.join("\n") + "\n";
    match &common.out {
        Some(p) => write_atomic(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_tables(common: &Common) -> Result<bool> {
    let ctx = Ctx::new(common)?;
    let spec = &ctx.alg.spec;
    let mut lines = Vec::new();
    for g in spec.sage_generators {
        let (t, hit) = mult_table_cached(&ctx.alg, g, &ctx.rules, &ctx.limits, Some(&common.cache))?;
        lines.push(
            serde_json::json!({
                "group": spec.name.to_string(),
                "generator": t.gen.to_string(),
                "rows": t.rows.len(),
                "cached": hit,
                "digest": ctx.rules.digest(spec),
            })
            .to_string(),
        );
    }
    emit(common, &lines)?;
    Ok(true)
}

fn cmd_gram(common: &Common, mode: Mode, sample_size: Option<usize>) -> Result<bool> {
    let ctx = Ctx::new(common)?;
    let spec = &ctx.alg.spec;
    let n = spec.order();
    let (m, default_out) = match mode {
        Mode::Inductive => (ctx.gram()?, ctx.gram_path()),
        Mode::Direct => {
            let pairs: Option<Vec<(usize, usize)>> = sample_size.map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
                let mut p: Vec<(usize, usize)> = sample(&mut rng, n * n, k.min(n * n))
                    .into_iter()
                    .flat_map(|x| [(x / n, x % n), (x % n, x / n)])
                    .collect();
                p.sort_unstable();
                p.dedup();
                p
            });
            let m = gram_direct(&ctx.alg, &ctx.rules, pairs.as_deref(), &ctx.limits)?;
            let name = match sample_size {
                Some(k) => format!("gram-{}-direct-{k}-{}.json", spec.name, common.seed),
                None => format!("gram-{}-direct.json", spec.name),
            };
            (m, common.cache.join(name))
        }
    };
    let out = common.out.clone().unwrap_or(default_out);
    write_atomic(&out, &m.to_json())?;
    let report = check_symmetry(&m);
    println!("{}", serde_json::to_string(&report)?);
    eprintln!("matrix written to {}", out.display());
    Ok(report.pass)
}

fn cmd_det(common: &Common, strategy: Strategy, trials: usize, time_limit: Option<u64>) -> Result<bool> {
    let ctx = Ctx::new(common)?;
    let spec = &ctx.alg.spec;
    let m = ctx.gram()?;
    let reports = match strategy {
        Strategy::Symbolic => vec![det_report_symbolic(spec, &m, time_limit.map(Duration::from_secs))?],
        Strategy::Primes => prime_assignments(spec, trials, common.seed)
            .iter()
            .map(|v| det_report_primes(spec, &m, v))
            .collect::<Result<_, _>>()?,
    };
    let lines = reports
        .iter()
        .map(serde_json::to_string)
        .collect::<Result<Vec<_>, _>>()?;
    emit(common, &lines)?;
    Ok(reports.iter().all(|r| r.matches))
}

fn cmd_verify(common: &Common, check: Check, trace_pairs: usize) -> Result<bool> {
    let ctx = Ctx::new(common)?;
    let (alg, rules, lim) = (&ctx.alg, &ctx.rules, &ctx.limits);
    let wanted = |c: Check| check == c || (check == Check::All && c != Check::Replays && c != Check::Trace);
    let mut reports: Vec<VerificationReport> = Vec::new();
    if wanted(Check::Symmetry) {
        reports.push(check_symmetry(&ctx.gram()?));
    }
    if wanted(Check::Extra) {
        reports.push(check_extra_condition(alg, rules, lim)?);
    }
    if wanted(Check::Specialize) {
        reports.push(check_group_specialization(alg, rules, &ctx.gram()?, lim)?);
    }
    if wanted(Check::Freeness) {
        reports.push(check_freeness(alg, &ctx.tables()?, rules, lim)?);
    }
    if wanted(Check::Replays) {
        reports.push(check_replays(alg, rules, lim)?);
    }
    if wanted(Check::Trace) {
        reports.push(check_trace_property(alg, rules, trace_pairs, common.seed, lim)?);
    }
    let lines = reports
        .iter()
        .map(serde_json::to_string)
        .collect::<Result<Vec<_>, _>>()?;
    emit(common, &lines)?;
    Ok(reports.iter().all(|r| r.pass))
}

fn cmd_rewrite(common: &Common, text: &str) -> Result<bool> {
    let ctx = Ctx::new(common)?;
    let e = parse_element(&ctx.alg.spec, text)?;
    let v = reduce(&ctx.alg, &ctx.rules, &e, &ctx.limits)?;
    emit(common, &[v.to_text()])?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.cmd {
        Cmd::Tables(c) => cmd_tables(c),
        Cmd::Gram { common, mode, sample } => cmd_gram(common, *mode, *sample),
        Cmd::Det {
            common,
            strategy,
            trials,
            time_limit,
        } => cmd_det(common, *strategy, *trials, *time_limit),
        Cmd::Verify { common, check, sample } => cmd_verify(common, *check, *sample),
        Cmd::Rewrite { common, text } => cmd_rewrite(common, text),
    };
    match run {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(Error::NonTerminating { snapshot, .. }) = e.downcast_ref::<Error>() {
                for t in snapshot {
                    eprintln!("  pending: {t}");
                }
            }
            ExitCode::from(2)
        }
    }
}

