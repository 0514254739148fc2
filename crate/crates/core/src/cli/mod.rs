//! The `adelic-orbit` command line.
//!
//! Every subcommand prints one JSON object with sorted keys:
//! `{"command", "field", "input", "output"}`, plus `"transcript"` when the
//! command produces verification steps. Exit status is 0 on success, 1 on a
//! mathematical failure and 2 on malformed input.

mod commands;
mod selftest;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::adelic::DEFAULT_REFINEMENT_CAP;
use crate::error::{Error, Result};
use crate::numberfield::{CacheFile, FieldSpec, NumberField};

pub use selftest::{run_suites, SuiteReport};

pub const DEFAULT_SEARCH_BOUND: u64 = 10_000;

#[derive(Debug, Parser)]
#[command(name = "adelic-orbit", version, about = "Orbits of K⋊K* on the adelic space Ω_A")]
pub struct Cli {
    /// `Q` or `d=<negative squarefree integer>`.
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,

    /// JSON cache of class groups and prime splittings.
    #[arg(long, global = true, env = "ADELIC_ORBIT_CACHE")]
    pub cache: Option<PathBuf>,

    /// Largest rational prime tried when searching for a cofactor prime.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BOUND)]
    pub search_bound: u64,

    /// Largest number of cells in a piece refinement.
    #[arg(long, global = true, default_value_t = DEFAULT_REFINEMENT_CAP)]
    pub refinement_cap: usize,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discriminant, integral basis, class number and units.
    FieldInfo,
    /// Factor an element, an ideal given by generators, or a rational prime.
    Factor {
        #[arg(long, conflicts_with_all = ["ideal", "prime"])]
        element: Option<String>,
        /// Comma-separated generators.
        #[arg(long, conflicts_with = "prime")]
        ideal: Option<String>,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Reduced forms and the multiplication table of the class group.
    Classgroup,
    /// The unit group.
    Units,
    /// `v_P` of an element or of an ideal.
    Valuation {
        #[arg(long, conflicts_with = "ideal")]
        element: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        /// Prime label such as `P2` or `P3_1`.
        #[arg(long)]
        prime: String,
    },
    /// A prime `Q` and `k` with `(k) = Q·∏ P_j^{e_j}`.
    Cofactor {
        /// Comma-separated prime labels.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<String>,
        /// Comma-separated exponents.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        exps: Vec<i64>,
        /// Prime set `Q` must avoid.
        #[arg(long, default_value = "empty")]
        exclude: String,
    },
    /// `(x,k)·ω`.
    Act {
        /// `{"x": ..., "k": ...}`.
        #[arg(long)]
        g: String,
        #[arg(long)]
        point: String,
    },
    /// Whether `target` lies in the orbit closure of `base`.
    Closure {
        #[arg(long)]
        base: String,
        #[arg(long)]
        target: String,
    },
    /// A group element moving `base` into a basic neighborhood.
    Approx {
        #[arg(long)]
        base: String,
        /// `{"target": point, "exact": [...], "floor": [...], "first": [...]}`.
        #[arg(long)]
        nbhd: String,
    },
    /// The quasi-orbit label `Z(a)`.
    Quasiorbit {
        #[arg(long)]
        point: String,
    },
    /// The stabilizer of a point.
    Stabilizer {
        #[arg(long)]
        point: String,
    },
    /// A point with trivial stabilizer and zero set `A`.
    TrivialPoint {
        #[arg(long)]
        set: String,
        /// Infinite set used when `A` is empty.
        #[arg(long)]
        q: Option<String>,
    },
    /// A point with trivial stabilizer and dense orbit.
    Witness,
    /// Compare primitive ideals `I_A`, `I_B`, or evaluate an open-set ideal.
    Ideal {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
        /// Generators of a power-cofinite open set, as a JSON array of label arrays.
        #[arg(long)]
        open: Option<String>,
    },
    /// Run the invariant suites.
    Selftest {
        /// Scale factor for the instance counts.
        #[arg(long, default_value_t = 1)]
        scale: usize,
    },
}

/// Validated global options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub field: FieldSpec,
    pub cache_path: Option<PathBuf>,
    pub search_bound: u64,
    pub refinement_cap: usize,
    pub seed: u64,
    pub pretty: bool,
}

impl Config {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.search_bound < 100 {
            return Err(Error::Parse(format!("--search-bound must be at least 100, got {}", cli.search_bound)));
        }
        if cli.refinement_cap < 64 {
            return Err(Error::Parse(format!(
                "--refinement-cap must be at least 64, got {}",
                cli.refinement_cap
            )));
        }
        Ok(Self {
            field: FieldSpec::parse(&cli.field).map_err(|e| match e {
                Error::Parse(_) => e,
                other => Error::Parse(format!("--field: {other}")),
            })?,
            cache_path: cli.cache.clone(),
            search_bound: cli.search_bound,
            refinement_cap: cli.refinement_cap,
            seed: cli.seed,
            pretty: cli.pretty,
        })
    }

    /// Builds the field, seeded from the cache when one is configured.
    pub fn open_field(&self) -> NumberField {
        let field = NumberField::new(self.field);
        if let Some(path) = &self.cache_path {
            let cache = CacheFile::load(path);
            if let Some(rec) = cache.fields.get(&field.discriminant().to_string()) {
                // a bad record is ignored and recomputed
                let _ = field.load_cache_record(rec);
            }
        }
        field
    }

    pub fn save_field(&self, field: &NumberField) -> Result<()> {
        let Some(path) = &self.cache_path else {
            return Ok(());
        };
        let mut cache = CacheFile::load(path);
        cache
            .fields
            .insert(field.discriminant().to_string(), field.cache_record());
        cache.save(path)
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command's result before it is wrapped with the command name and field.
pub(crate) struct Report {
    pub input: Value,
    pub output: Value,
    pub transcript: Option<Value>,
}

fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        value.to_string()
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::FieldInfo => "field-info",
        Command::Factor { .. } => "factor",
        Command::Classgroup => "classgroup",
        Command::Units => "units",
        Command::Valuation { .. } => "valuation",
        Command::Cofactor { .. } => "cofactor",
        Command::Act { .. } => "act",
        Command::Closure { .. } => "closure",
        Command::Approx { .. } => "approx",
        Command::Quasiorbit { .. } => "quasiorbit",
        Command::Stabilizer { .. } => "stabilizer",
        Command::TrivialPoint { .. } => "trivial-point",
        Command::Witness => "witness",
        Command::Ideal { .. } => "ideal",
        Command::Selftest { .. } => "selftest",
    }
}

fn error_outcome(e: &Error, pretty: bool) -> Outcome {
    let kind = if e.is_usage() { "usage" } else { "domain" };
    let mut body = json!({ "kind": kind, "message": e.to_string() });
    if let Error::Json { path, .. } = e {
        body["field"] = json!(path);
    }
    Outcome {
        code: if e.is_usage() { 2 } else { 1 },
        stdout: render(&json!({ "error": body }), pretty),
        stderr: format!("error: {e}"),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let config = match Config::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => return error_outcome(&e, cli.pretty),
    };
    let field = config.open_field();
    let report = match commands::dispatch(&config, &field, &cli.command) {
        Ok(r) => r,
        Err(e) => return error_outcome(&e, config.pretty),
    };
    let mut stderr = String::new();
    if let Err(e) = config.save_field(&field) {
        stderr = format!("warning: cache not written: {e}");
    }
    let mut out = json!({
        "command": command_name(&cli.command),
        "field": config.field.to_string(),
        "input": report.input,
        "output": report.output,
    });
    if let Some(t) = report.transcript {
        out["transcript"] = t;
    }
    let failed = matches!(&cli.command, Command::Selftest { .. })
        && out["output"]["passed"] == json!(false);
    Outcome {
        code: if failed { 1 } else { 0 },
        stdout: render(&out, config.pretty),
        stderr,
    }
}

/// Entry point for the binary: runs on the process arguments and prints.
pub fn main() -> i32 {
    let outcome = run(std::env::args_os());
    if !outcome.stdout.is_empty() {
        println!("{}", outcome.stdout.trim_end());
    }
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr.trim_end());
    }
    outcome.code
}
