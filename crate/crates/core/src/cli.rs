//! Command-line front end: `eval`, `verify`, `sweep` and `tetra`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage, parse or
//! validation error. Seeds resolve as flag, then config file, then the
//! `COHERENCE_SEED` environment variable, then 0.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifest::RunManifest;
use crate::measures::full_report;
use crate::state::{HermitianState, Mode};
use crate::sweep::{self, SweepConfig, SweepKind};
use crate::tetra;
use crate::verify::{run_suite, Record, SuiteConfig, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SEED_ENV: &str = "COHERENCE_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "coherence",
    version,
    about = "l_p-norm coherence and wave-particle-mixedness trade-offs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every quantifier on a state file.
    Eval(EvalArgs),
    /// Run the identity, inequality and axiom suites.
    Verify(VerifyArgs),
    /// Sweep X, Y and C_lp^2 over equal-magnitude off-diagonal patterns.
    Sweep(SweepArgs),
    /// Evaluate the trade-off terms on vertex, edge and face states.
    Tetra(TetraArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// JSON state file: {"dim", "mode", "re", "im"}.
    pub state_file: PathBuf,
    #[arg(long = "p", default_value_t = 1.0)]
    pub p: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Dimensions: `a..b` (inclusive), `a..=b`, a single value or a comma list.
    #[arg(long)]
    pub dim: Option<String>,
    #[arg(long = "p")]
    pub p: Vec<f64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON-lines output file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Panel {
    /// d = 3, m = 1/3, n = 1..3.
    Count,
    /// d = 3, n = 2, m from 0 to 1/3.
    Magnitude,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Start from a preset configuration; other flags override it.
    #[arg(long, value_enum)]
    pub panel: Option<Panel>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long = "p")]
    pub p: Vec<f64>,
    /// `count` (vary n at fixed m) or `magnitude` (vary m at fixed n).
    #[arg(long)]
    pub kind: Option<SweepKind>,
    /// Fixed magnitude (count sweep) or fixed pair count (magnitude sweep).
    #[arg(long)]
    pub fixed: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TetraArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long = "p", default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyFile {
    dim: Option<String>,
    p: Option<Vec<f64>>,
    trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    tolerances: Option<Tolerances>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    d: Option<usize>,
    p_values: Option<Vec<f64>>,
    sweep_kind: Option<SweepKind>,
    fixed_value: Option<f64>,
    grid: Option<Vec<f64>>,
    seed: Option<u64>,
    output_path: Option<PathBuf>,
    mode: Option<Mode>,
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Tetra(a) => cmd_tetra(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidConfig(format!("{SEED_ENV}='{s}' is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn read_config<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn flush(mut w: impl Write, path: &Path) -> Result<()> {
    w.flush().map_err(|e| Error::io(path, e))
}

/// Parse `a..b`, `a..=b`, `a-b`, `a` or `a,b,c` into a list of dimensions.
pub fn parse_dims(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidConfig(format!("cannot parse dimension spec '{s}'"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let range = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'));
    let dims: Vec<usize> = if let Some((a, b)) = range {
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    if dims.is_empty() {
        return Err(bad());
    }
    Ok(dims)
}

pub fn cmd_eval(args: &EvalArgs) -> Result<i32> {
    let rho = HermitianState::read_json(&args.state_file)?;
    let report = full_report(&rho, args.p)?;
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::io(path, e))?;
            #[derive(Serialize)]
            struct EvalConfig<'a> {
                state_file: &'a Path,
                p: f64,
                state_fingerprint: String,
            }
            let cfg = EvalConfig {
                state_file: &args.state_file,
                p: args.p,
                state_fingerprint: rho.fingerprint(),
            };
            RunManifest::new("eval", &cfg, 0, Vec::new()).write_for(path)?;
        }
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

pub fn resolve_verify_config(args: &VerifyArgs) -> Result<(SuiteConfig, Option<PathBuf>)> {
    let file: VerifyFile = match &args.config {
        Some(path) => read_config(path)?,
        None => VerifyFile::default(),
    };
    let dims = match args.dim.as_deref().or(file.dim.as_deref()) {
        Some(s) => parse_dims(s)?,
        None => (2..=8).collect(),
    };
    let p_values = if !args.p.is_empty() {
        args.p.clone()
    } else {
        file.p.unwrap_or_else(|| vec![1.0, 1.25, 1.5, 1.75, 2.0])
    };
    let seed = match args.seed.or(file.seed) {
        Some(s) => s,
        None => env_seed()?.unwrap_or(0),
    };
    let cfg = SuiteConfig {
        dims,
        p_values,
        trials: args.trials.or(file.trials).unwrap_or(1000),
        seed,
        tolerances: file.tolerances.unwrap_or_default(),
    };
    Ok((cfg, args.out.clone().or(file.out)))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let (cfg, out) = resolve_verify_config(args)?;
    cfg.validate()?;
    let summary = match &out {
        Some(path) => {
            let mut w = create(path)?;
            let summary = run_suite(&cfg, &mut |rec: &Record| {
                serde_json::to_writer(&mut w, rec)?;
                w.write_all(b"\n").map_err(|e| Error::io(path, e))
            })?;
            flush(w, path)?;
            RunManifest::new("verify", &cfg, cfg.seed, Vec::new()).write_for(path)?;
            summary
        }
        None => run_suite(&cfg, &mut |_| Ok(()))?,
    };
    print!("{}", summary.table());
    match summary.first_failure() {
        None => Ok(EXIT_OK),
        Some(row) => {
            eprintln!("verification failed: first failing identity: {}", row.id);
            Ok(EXIT_VERIFICATION_FAILED)
        }
    }
}

pub fn resolve_sweep_config(args: &SweepArgs) -> Result<SweepConfig> {
    let mut cfg = match args.panel {
        Some(Panel::Count) => SweepConfig::count_panel(),
        Some(Panel::Magnitude) => SweepConfig::magnitude_panel(),
        None => SweepConfig::count_panel(),
    };
    let has_base = args.panel.is_some();
    let file: SweepFile = match &args.config {
        Some(path) => read_config(path)?,
        None => SweepFile::default(),
    };
    if !has_base && args.config.is_none() && (args.kind.is_none() || args.grid.is_empty()) {
        return Err(Error::InvalidConfig(
            "sweep needs --panel, --config, or both --kind and --grid".into(),
        ));
    }
    let mut seed_given = false;
    if let Some(v) = file.d {
        cfg.d = v;
    }
    if let Some(v) = file.p_values {
        cfg.p_values = v;
    }
    if let Some(v) = file.sweep_kind {
        cfg.sweep_kind = v;
    }
    if let Some(v) = file.fixed_value {
        cfg.fixed_value = v;
    }
    if let Some(v) = file.grid {
        cfg.grid = v;
    }
    if let Some(v) = file.seed {
        cfg.seed = v;
        seed_given = true;
    }
    if file.output_path.is_some() {
        cfg.output_path = file.output_path;
    }
    if let Some(v) = file.mode {
        cfg.mode = v;
    }

    if let Some(v) = args.dim {
        cfg.d = v;
    }
    if !args.p.is_empty() {
        cfg.p_values = args.p.clone();
    }
    if let Some(v) = args.kind {
        cfg.sweep_kind = v;
    }
    if let Some(v) = args.fixed {
        cfg.fixed_value = v;
    }
    if !args.grid.is_empty() {
        cfg.grid = args.grid.clone();
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
        seed_given = true;
    }
    if args.out.is_some() {
        cfg.output_path = args.out.clone();
    }
    if let Some(v) = args.mode {
        cfg.mode = v;
    }
    if !seed_given {
        if let Some(s) = env_seed()? {
            cfg.seed = s;
        }
    }
    Ok(cfg)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let cfg = resolve_sweep_config(args)?;
    let rows = sweep::run_sweep(&cfg)?;
    match &cfg.output_path {
        Some(path) => {
            let mut w = create(path)?;
            sweep::write_csv(&cfg, &rows, &mut w)?;
            flush(w, path)?;
            RunManifest::new("sweep", &cfg, cfg.seed, sweep::row_validity(&rows)).write_for(path)?;
        }
        None => sweep::write_csv(&cfg, &rows, io::stdout().lock())?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_tetra(args: &TetraArgs) -> Result<i32> {
    let rows = tetra::tetra_table(args.dim, args.p)?;
    let write = |w: &mut dyn Write| -> Result<()> {
        match args.format {
            Format::Csv => tetra::write_csv(&rows, w),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *w, &rows)?;
                w.write_all(b"\n").map_err(|e| Error::io("<output>", e))
            }
        }
    };
    match &args.out {
        Some(path) => {
            let mut w = create(path)?;
            write(&mut w)?;
            flush(w, path)?;
            #[derive(Serialize)]
            struct TetraConfig {
                d: usize,
                p: f64,
            }
            let cfg = TetraConfig {
                d: args.dim,
                p: args.p,
            };
            RunManifest::new("tetra", &cfg, 0, Vec::new()).write_for(path)?;
        }
        None => write(&mut io::stdout().lock())?,
    }
    match rows.iter().find(|r| !r.passed) {
        None => Ok(EXIT_OK),
        Some(r) => {
            eprintln!(
                "verification failed: {} row '{}' has reduced residual {:e}",
                r.region.name(),
                r.state,
                r.reduced_residual
            );
            Ok(EXIT_VERIFICATION_FAILED)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_parsing() {
        assert_eq!(parse_dims("2..8").unwrap(), (2..=8).collect::<Vec<_>>());
        assert_eq!(parse_dims("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_dims("3-5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_dims("5").unwrap(), vec![5]);
        assert_eq!(parse_dims("2,5,7").unwrap(), vec![2, 5, 7]);
        assert!(parse_dims("x..3").is_err());
        assert!(parse_dims("5..3").is_err());
    }

    #[test]
    fn sweep_flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(
            &path,
            r#"{"d": 4, "p_values": [1.0], "sweep_kind": "magnitude_sweep", "fixed_value": 3, "grid": [0.0, 0.05], "mode": "strict"}"#,
        )
        .unwrap();
        let args = SweepArgs {
            panel: None,
            dim: None,
            p: vec![1.5],
            kind: None,
            fixed: None,
            grid: vec![],
            seed: Some(9),
            mode: None,
            out: None,
            config: Some(path),
        };
        let cfg = resolve_sweep_config(&args).unwrap();
        assert_eq!(cfg.d, 4);
        assert_eq!(cfg.p_values, vec![1.5]);
        assert_eq!(cfg.sweep_kind, SweepKind::MagnitudeSweep);
        assert_eq!(cfg.grid, vec![0.0, 0.05]);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.mode, Mode::Strict);
    }

    #[test]
    fn sweep_without_source_is_usage_error() {
        let args = SweepArgs {
            panel: None,
            dim: Some(3),
            p: vec![],
            kind: None,
            fixed: None,
            grid: vec![],
            seed: None,
            mode: None,
            out: None,
            config: None,
        };
        assert!(matches!(
            resolve_sweep_config(&args),
            Err(Error::InvalidConfig(_))
        ));
    }
}
