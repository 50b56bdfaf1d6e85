//! `zpm`: classify, compare, construct and enumerate Z_p^m actions on
//! surfaces.
//!
//! Exit codes: 0 success, 1 domain or input error, 2 usage error.

mod render;
mod selfcheck;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use zpm_core::limits::ParseLimitsError;
use zpm_core::oracle::Mode;
use zpm_core::{
    construct_action, enumerate_weak_classes, strong_invariant, weak_invariant, ActionData, Limits, Vector,
};

use render::{emit, table, to_value, Format};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error("config {path}: {source}")]
    Config { path: PathBuf, source: ParseLimitsError },
    #[error("{0}")]
    Domain(#[from] zpm_core::Error),
    #[error("{0}")]
    Guard(String),
    #[error("{0} check(s) failed")]
    Checks(usize),
}

#[derive(Parser)]
#[command(name = "zpm", version, about = "Classify elementary abelian p-group actions on closed surfaces")]
struct Cli {
    /// key=value file overriding the enumeration guards
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the strong and weak invariants and the covering genus
    Classify {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide strong or weak equivalence of two actions
    Equiv {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
    },
    /// Build a representative action for a weak class
    Construct {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        g: usize,
        /// JSON list of branch vectors, inline or as a file path
        #[arg(long, default_value = "[]")]
        multiset: String,
        /// Write here instead of stdout
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// List the weak classes (components of the moduli space)
    Enumerate {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        g: usize,
        /// List every quotient genus from --g up to this value
        #[arg(long)]
        g_max: Option<usize>,
        #[arg(long, default_value_t = 0)]
        r_max: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the built-in consistency checks
    Selfcheck {
        #[arg(long, value_enum, default_value = "quick")]
        level: selfcheck::Level,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum ModeArg {
    Strong,
    Weak,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strong => Mode::Strong,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_action(path: &Path) -> Result<ActionData, CliError> {
    let a = ActionData::from_json(&read(path)?)
        .map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
    a.validate()?;
    Ok(a)
}

fn load_limits(path: Option<&Path>) -> Result<Limits, CliError> {
    match path {
        None => Ok(Limits::default()),
        Some(p) => read(p)?.parse().map_err(|source| CliError::Config { path: p.to_path_buf(), source }),
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    total_genus: u64,
    strong_invariant: zpm_core::StrongInvariant,
    weak_invariant: zpm_core::WeakInvariant,
}

fn classify(input: &Path, format: Format) -> Result<String, CliError> {
    let a = load_action(input)?;
    let report = ClassifyReport {
        total_genus: a.total_genus()?,
        strong_invariant: strong_invariant(&a)?,
        weak_invariant: weak_invariant(&a)?,
    };
    Ok(emit(&to_value(&report), format))
}

fn equiv(a: &Path, b: &Path, mode: Mode) -> Result<String, CliError> {
    let (a, b) = (load_action(a)?, load_action(b)?);
    if (a.p, a.m) != (b.p, b.m) {
        return Err(zpm_core::Error::GroupMismatch(a.p, a.m, b.p, b.m).into());
    }
    let difference = match mode {
        Mode::Strong => strong_invariant(&a)?.first_difference(&strong_invariant(&b)?),
        Mode::Weak => weak_invariant(&a)?.first_difference(&weak_invariant(&b)?),
    };
    Ok(match difference {
        None => "EQUIVALENT\n".to_string(),
        Some(part) => format!("INEQUIVALENT\nfirst difference: {part}\n"),
    })
}

fn parse_multiset(arg: &str) -> Result<Vec<Vector>, CliError> {
    let (text, origin) = if arg.trim_start().starts_with('[') {
        (arg.to_string(), "--multiset".to_string())
    } else {
        (read(Path::new(arg))?, arg.to_string())
    };
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: origin, source })
}

fn enumerate(p: u32, m: usize, gs: std::ops::RangeInclusive<usize>, r_max: usize, count_only: bool, format: Format, limits: &Limits) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for g in gs {
        let classes = enumerate_weak_classes(p, m, g, r_max, limits).map_err(|e| match e {
            zpm_core::Error::TooLarge { .. } => CliError::Guard(format!(
                "{e}; try a smaller --r-max (or --m), or raise max_candidates with --config"
            )),
            other => other.into(),
        })?;
        rows.extend(classes.into_iter().map(|w| {
            json!({ "k": w.k, "g": w.g, "n": w.n, "r": w.r, "multiset": w.canonical_multiset })
        }));
    }
    if count_only {
        return Ok(match format {
            Format::Json => emit(&json!({ "count": rows.len() }), format),
            Format::Text => format!("{}\n", rows.len()),
        });
    }
    Ok(match format {
        Format::Json => emit(&serde_json::Value::Array(rows), format),
        Format::Text => table(&rows, &["k", "g", "n", "r", "multiset"]),
    })
}

fn run(cli: Cli) -> Result<String, CliError> {
    let limits = load_limits(cli.config.as_deref())?;
    match cli.command {
        Command::Classify { input, format } => classify(&input, format),
        Command::Equiv { a, b, mode } => equiv(&a, &b, mode.into()),
        Command::Construct { p, m, k, g, multiset, output } => {
            let a = construct_action(p, m, k, g, &parse_multiset(&multiset)?)?;
            let mut json = a.to_json();
            json.push('\n');
            match output {
                Some(path) => {
                    std::fs::write(&path, json).map_err(|source| CliError::Io { path: path.clone(), source })?;
                    Ok(String::new())
                }
                None => Ok(json),
            }
        }
        Command::Enumerate { p, m, g, g_max, r_max, count_only, format } => {
            enumerate(p, m, g..=g_max.unwrap_or(g).max(g), r_max, count_only, format, &limits)
        }
        Command::Selfcheck { level, seed } => {
            let results = selfcheck::run(level, seed, &limits);
            for r in &results {
                match &r.detail {
                    None => println!("PASS  {}", r.name),
                    Some(d) => println!("FAIL  {}: {d}", r.name),
                }
            }
            match results.iter().filter(|r| !r.passed).count() {
                0 => Ok(String::new()),
                n => Err(CliError::Checks(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
