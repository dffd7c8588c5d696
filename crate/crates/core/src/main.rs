use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use supercong::runner::{self, Format, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

/// Sweep-verify binomial-coefficient congruences over primes and prime
/// powers with exact modular arithmetic.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// Comma-separated congruence families, or "all"
    #[arg(long, default_value = "all")]
    families: String,

    /// Smallest prime in the sweep (primes below 5 are never used)
    #[arg(long, default_value_t = 5)]
    p_min: u64,

    /// Largest prime in the sweep
    #[arg(long, default_value_t = 97)]
    p_max: u64,

    /// Comma-separated exponents a for the prime-power congruences
    #[arg(long, default_value = "2")]
    powers: String,

    /// Also verify the intermediate proof-step congruences
    #[arg(long)]
    proof_steps: bool,

    /// Check the exact rational identities up to this index (0 = skip)
    #[arg(long, default_value_t = 0)]
    identities_n_max: u64,

    /// Random parameter samples per sweep when exhaustion is too large
    #[arg(long, default_value_t = 32)]
    t_samples: u32,

    /// Seed for the sampled parameter sweeps
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,

    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Stop scheduling new work after the first failing record
    #[arg(long)]
    fail_fast: bool,

    /// Write the report to a file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,

    /// Emit records as they complete (unsorted)
    #[arg(long)]
    stream: bool,
}

fn parse_powers(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let a: u32 = part
            .parse()
            .map_err(|_| format!("invalid power '{}'", part))?;
        if a < 1 {
            return Err("powers must be >= 1".into());
        }
        out.push(a);
    }
    if out.is_empty() {
        return Err("no powers given".into());
    }
    Ok(out)
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    if cli.p_min > cli.p_max {
        return Err(format!("p-min {} exceeds p-max {}", cli.p_min, cli.p_max));
    }
    let powers = parse_powers(&cli.powers)?;
    // the deepest modulus touched is p^{2a+1}; keep it within u64 residues
    let a_max = *powers.iter().max().unwrap();
    let depth = if cli.proof_steps { 2 * a_max + 1 } else { 3.max(a_max) };
    if (cli.p_max as u128).pow(depth) >= 1u128 << 63 {
        return Err(format!(
            "p-max {} with power {} needs moduli beyond 2^63",
            cli.p_max, a_max
        ));
    }
    Ok(RunConfig {
        families: runner::resolve_families(&cli.families)?,
        p_min: cli.p_min,
        p_max: cli.p_max,
        powers,
        proof_steps: cli.proof_steps,
        identities_n_max: cli.identities_n_max,
        t_samples: cli.t_samples,
        seed: cli.seed,
        format: cli.format.into(),
        fail_fast: cli.fail_fast,
        jobs: cli.jobs,
        stream: cli.stream,
    })
}

fn run_to(cfg: &RunConfig, output: &Option<PathBuf>) -> io::Result<bool> {
    match output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            let ok = runner::run(cfg, &mut w)?;
            w.flush()?;
            Ok(ok)
        }
        None => {
            let mut w = BufWriter::new(io::stdout());
            let ok = runner::run(cfg, &mut w)?;
            w.flush()?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with 2 on usage errors
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {}", msg);
            return ExitCode::from(2);
        }
    };
    match run_to(&cfg, &cli.output) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
