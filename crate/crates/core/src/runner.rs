//! Sweep orchestration: expands a run configuration into independent
//! (congruence, prime, power) tasks, executes them in parallel when the
//! `parallel` feature is on, and renders a deterministic report.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::identities::{check_fractional_binomial, check_recurrences, check_swz_identity};
use crate::primes::primes_in;
use crate::sums::Family;
use crate::verify::{self, CongruenceResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Everything a sweep needs. `jobs` and `stream` affect scheduling and
/// output order, never the records themselves, so they are excluded from
/// the config echo to keep reports byte-comparable across thread counts.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub families: Vec<String>,
    pub p_min: u64,
    pub p_max: u64,
    pub powers: Vec<u32>,
    pub proof_steps: bool,
    pub identities_n_max: u64,
    pub t_samples: u32,
    pub seed: u64,
    pub format: Format,
    pub fail_fast: bool,
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub stream: bool,
}

/// Every selectable congruence family, in report order.
pub const FAMILY_NAMES: &[&str] = &[
    "eq_1_1",
    "eq_1_2",
    "eq_1_3",
    "eq_1_4",
    "eq_1_5",
    "eq_1_6",
    "eq_2_5",
    "remark_1_2",
    "rv_central_squared",
    "rv_two_three",
    "rv_four_two",
    "rv_six_three",
    "sun_two_three",
    "sun_four_two",
    "sun_six_three",
    "su13",
    "lemma_3_1",
    "lemma_3_2",
];

/// Expands a family selector (`"all"` or a comma-separated list) against
/// the known names.
pub fn resolve_families(spec: &str) -> Result<Vec<String>, String> {
    if spec.trim() == "all" {
        return Ok(FAMILY_NAMES.iter().map(|s| s.to_string()).collect());
    }
    let mut out = Vec::new();
    for raw in spec.split(',') {
        let name = raw.trim();
        if name.is_empty() {
            continue;
        }
        if !FAMILY_NAMES.contains(&name) {
            return Err(format!(
                "unknown family '{}' (known: {})",
                name,
                FAMILY_NAMES.join(", ")
            ));
        }
        out.push(name.to_string());
    }
    if out.is_empty() {
        return Err("no families selected".into());
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Task {
    Eq11(u64),
    Eq12(u64),
    Eq13(u64, u32),
    Eq25(u64, u32),
    Thm12 { p: u64, names: Vec<String> },
    Remark12(u64),
    RvSun { p: u64, names: Vec<String> },
    Su13(u64),
    Lemma31(u64),
    Lemma32(u64),
    ProofSteps(u64, u32),
    Identities(u64),
}

fn build_tasks(cfg: &RunConfig) -> Vec<Task> {
    let has = |n: &str| cfg.families.iter().any(|f| f == n);
    let primes = primes_in(cfg.p_min.max(5), cfg.p_max);
    let high_powers: Vec<u32> = {
        let mut v: Vec<u32> = cfg.powers.iter().copied().filter(|&a| a >= 2).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let thm12_names: Vec<String> = ["eq_1_4", "eq_1_5", "eq_1_6"]
        .iter()
        .filter(|n| has(n))
        .map(|n| n.to_string())
        .collect();
    let rvsun_names: Vec<String> = [
        "rv_central_squared",
        "rv_two_three",
        "rv_four_two",
        "rv_six_three",
        "sun_two_three",
        "sun_four_two",
        "sun_six_three",
    ]
    .iter()
    .filter(|n| has(n))
    .map(|n| n.to_string())
    .collect();

    let mut tasks = Vec::new();
    for &p in &primes {
        if has("eq_1_1") {
            tasks.push(Task::Eq11(p));
        }
        if has("eq_1_2") {
            tasks.push(Task::Eq12(p));
        }
        for &a in &high_powers {
            if has("eq_1_3") {
                tasks.push(Task::Eq13(p, a));
            }
            if has("eq_2_5") {
                tasks.push(Task::Eq25(p, a));
            }
        }
        if !thm12_names.is_empty() {
            tasks.push(Task::Thm12 {
                p,
                names: thm12_names.clone(),
            });
        }
        if has("remark_1_2") {
            tasks.push(Task::Remark12(p));
        }
        if !rvsun_names.is_empty() {
            tasks.push(Task::RvSun {
                p,
                names: rvsun_names.clone(),
            });
        }
        if has("su13") {
            tasks.push(Task::Su13(p));
        }
        if has("lemma_3_1") {
            tasks.push(Task::Lemma31(p));
        }
        if has("lemma_3_2") {
            tasks.push(Task::Lemma32(p));
        }
        if cfg.proof_steps {
            tasks.push(Task::ProofSteps(p, 1));
            for &a in &high_powers {
                tasks.push(Task::ProofSteps(p, a));
            }
        }
    }
    if cfg.identities_n_max > 0 {
        tasks.push(Task::Identities(cfg.identities_n_max));
    }
    tasks
}

fn identity_records(n_max: u64) -> Vec<CongruenceResult> {
    let counted = |name: &str, passed: u64, total: u64| CongruenceResult {
        name: name.to_string(),
        p: 0,
        a: n_max as u32,
        modulus: 0, // exact arithmetic, no modulus
        lhs: passed,
        rhs: total,
        pass: passed == total,
    };
    let swz_passed = (1..=n_max).filter(|&n| check_swz_identity(n).0).count() as u64;
    let frac_passed = Family::ALL
        .iter()
        .filter(|&&f| check_fractional_binomial(f, n_max))
        .count() as u64;
    let rec_passed = (0..=n_max).filter(|&n| check_recurrences(n)).count() as u64;
    vec![
        counted("identity_swz", swz_passed, n_max),
        counted("identity_fractional", frac_passed, Family::ALL.len() as u64),
        counted("identity_recurrences", rec_passed, n_max + 1),
    ]
}

fn run_task(task: &Task, cfg: &RunConfig) -> Vec<CongruenceResult> {
    match task {
        Task::Eq11(p) => vec![verify::verify_half_sums(*p, 1)],
        Task::Eq12(p) => vec![verify::verify_thm_1_1_i(*p)],
        Task::Eq13(p, a) => vec![verify::verify_thm_1_1_ii(*p, *a)],
        Task::Eq25(p, a) => vec![verify::verify_half_sums(*p, *a)],
        Task::Thm12 { p, names } => verify::verify_thm_1_2(*p)
            .into_iter()
            .filter(|r| names.contains(&r.name))
            .collect(),
        Task::Remark12(p) => vec![verify::verify_remark_1_2(*p)],
        Task::RvSun { p, names } => verify::verify_rv_and_sun(*p)
            .into_iter()
            .filter(|r| names.contains(&r.name))
            .collect(),
        Task::Su13(p) => vec![verify::verify_su13_sweep(*p)],
        Task::Lemma31(p) => vec![verify::verify_lemma_3_1_sweep(*p, cfg.t_samples, cfg.seed)],
        Task::Lemma32(p) => vec![verify::verify_lemma_3_2_sweep(*p, cfg.t_samples, cfg.seed)],
        Task::ProofSteps(p, a) => verify::verify_proof_steps(*p, *a),
        Task::Identities(n_max) => identity_records(*n_max),
    }
}

fn run_guarded(
    task: &Task,
    cfg: &RunConfig,
    stop: &AtomicBool,
    on_batch: &(dyn Fn(&[CongruenceResult]) + Sync),
) -> Vec<CongruenceResult> {
    if cfg.fail_fast && stop.load(Ordering::Relaxed) {
        return Vec::new();
    }
    let results = run_task(task, cfg);
    if results.iter().any(|r| !r.pass) {
        stop.store(true, Ordering::Relaxed);
    }
    on_batch(&results);
    results
}

#[cfg(feature = "parallel")]
fn execute(
    tasks: &[Task],
    cfg: &RunConfig,
    stop: &AtomicBool,
    on_batch: &(dyn Fn(&[CongruenceResult]) + Sync),
) -> Vec<CongruenceResult> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("failed to build thread pool");
    pool.install(|| {
        tasks
            .par_iter()
            .map(|t| run_guarded(t, cfg, stop, on_batch))
            .flatten()
            .collect()
    })
}

#[cfg(not(feature = "parallel"))]
fn execute(
    tasks: &[Task],
    cfg: &RunConfig,
    stop: &AtomicBool,
    on_batch: &(dyn Fn(&[CongruenceResult]) + Sync),
) -> Vec<CongruenceResult> {
    tasks
        .iter()
        .flat_map(|t| run_guarded(t, cfg, stop, on_batch))
        .collect()
}

#[derive(Serialize)]
struct Header<'a> {
    version: &'a str,
    seed: u64,
    config: &'a RunConfig,
}

fn write_header(w: &mut dyn Write, cfg: &RunConfig) -> io::Result<()> {
    match cfg.format {
        Format::Table => writeln!(
            w,
            "{:<22} {:>6} {:>2} {:>18} {:>18} {:>18}  status",
            "name", "p", "a", "modulus", "lhs", "rhs"
        ),
        Format::Json => {
            let header = Header {
                version: env!("CARGO_PKG_VERSION"),
                seed: cfg.seed,
                config: cfg,
            };
            writeln!(w, "{}", serde_json::to_string(&header).unwrap())
        }
        Format::Csv => writeln!(w, "name,p,a,modulus,lhs,rhs,pass"),
    }
}

fn write_record(w: &mut dyn Write, fmt: Format, r: &CongruenceResult) -> io::Result<()> {
    match fmt {
        Format::Table => writeln!(
            w,
            "{:<22} {:>6} {:>2} {:>18} {:>18} {:>18}  {}",
            r.name,
            r.p,
            r.a,
            r.modulus,
            r.lhs,
            r.rhs,
            if r.pass { "ok" } else { "FAIL" }
        ),
        Format::Json => writeln!(w, "{}", serde_json::to_string(r).unwrap()),
        Format::Csv => writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.name, r.p, r.a, r.modulus, r.lhs, r.rhs, r.pass
        ),
    }
}

fn summary_lines(results: &[CongruenceResult]) -> Vec<String> {
    let mut counts: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for r in results {
        let e = counts.entry(&r.name).or_insert((0, 0));
        e.1 += 1;
        if r.pass {
            e.0 += 1;
        }
    }
    let mut lines: Vec<String> = counts
        .iter()
        .map(|(name, (ok, total))| format!("{}: {}/{}", name, ok, total))
        .collect();
    let ok: u64 = counts.values().map(|v| v.0).sum();
    let total: u64 = counts.values().map(|v| v.1).sum();
    lines.push(format!("total: {}/{}", ok, total));
    lines
}

/// Runs the configured sweep, writing the report to `out`. Returns whether
/// every record passed. Records are sorted by (name, p, a) unless `stream`
/// is set, in which case they are emitted as tasks complete.
pub fn run<W: Write + Send>(cfg: &RunConfig, out: &mut W) -> io::Result<bool> {
    let tasks = build_tasks(cfg);
    write_header(out, cfg)?;

    let stop = AtomicBool::new(false);
    let results = if cfg.stream {
        let fmt = cfg.format;
        let sink = Mutex::new(&mut *out);
        let on_batch = move |batch: &[CongruenceResult]| {
            let mut w = sink.lock().unwrap();
            for r in batch {
                write_record(&mut **w, fmt, r).expect("write failed");
            }
        };
        execute(&tasks, cfg, &stop, &on_batch)
    } else {
        let mut results = execute(&tasks, cfg, &stop, &|_| {});
        results.sort_by(|x, y| (&x.name, x.p, x.a).cmp(&(&y.name, y.p, y.a)));
        for r in &results {
            write_record(out, cfg.format, r)?;
        }
        results
    };

    let all_pass = results.iter().all(|r| r.pass);
    let summary = summary_lines(&results);
    match cfg.format {
        Format::Table => {
            writeln!(out)?;
            for line in &summary {
                writeln!(out, "{}", line)?;
            }
        }
        // keep machine-readable streams clean
        Format::Json | Format::Csv => {
            for line in &summary {
                eprintln!("{}", line);
            }
        }
    }
    out.flush()?;
    Ok(all_pass)
}
