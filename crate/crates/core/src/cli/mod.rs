//! Command-line frontend. Every subcommand produces a JSON document
//! `{manifest, result}` or a CSV table; identical arguments give identical bytes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.

mod commands;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebras::{AlgebraKind, GradedStarAlgebra};
use crate::numeric::ParamValue;
use crate::spectrum::{DOMAIN_TOL, POSITIVITY_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "orbitkit", version, about = "Irreducible *-representations of Z-graded *-algebras via orbits of the positive spectrum")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe the preset algebras.
    ListAlgebras {
        #[command(flatten)]
        out: OutArgs,
    },
    /// Positive spectrum of B with a positivity table.
    Spectrum {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, default_value_t = 25)]
        depth: u32,
        /// Discrete family points listed per family.
        #[arg(long, default_value_t = 10)]
        cutoff: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Section points, their orbits and stabilizers.
    Orbits {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, default_value_t = 40)]
        max_radius: u64,
        /// Largest n of the U_q section points χ_{0,n,±}.
        #[arg(long, default_value_t = 6)]
        cutoff: u64,
        /// Samples of the q-oscillator γ-series.
        #[arg(long, value_delimiter = ',', default_values_t = crate::spectrum::DEFAULT_GAMMA_SAMPLES)]
        gamma: Vec<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Full inventory of irreducible well-behaved representations.
    Classify {
        #[command(flatten)]
        alg: AlgArgs,
        /// Largest spin l of U_q representations (integer or half-integer).
        #[arg(long, default_value = "3")]
        max_l: String,
        #[arg(long, default_value_t = 64)]
        truncation: u64,
        #[arg(long, value_delimiter = ',', default_values_t = crate::spectrum::DEFAULT_GAMMA_SAMPLES)]
        gamma: Vec<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Matrices of the representation induced from one character.
    Induce {
        #[command(flatten)]
        alg: AlgArgs,
        /// `k`, `fixed`, `gamma=G` (q-oscillator); `m,+`, `m,-`, `infinity`
        /// (Podleś); `m,n,+`, `m,n,-` (U_q).
        #[arg(long)]
        character: String,
        #[arg(long, default_value_t = 64)]
        truncation: u64,
        /// Phase for one-dimensional representations.
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Relation residuals, well-behavedness and positivity of a preset representation.
    Verify {
        #[command(flatten)]
        alg: AlgArgs,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, default_value_t = 64)]
        truncation: u64,
        #[arg(long, default_value_t = crate::verify::RESIDUAL_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Decide membership of a degree-zero element in the cone of hermitian squares.
    Sos {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Covariant pair of a preset representation.
    Covariance {
        #[command(flatten)]
        alg: AlgArgs,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, default_value_t = 64)]
        truncation: u64,
        #[arg(long, default_value_t = crate::verify::RESIDUAL_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct AlgArgs {
    /// qosc, podles or uq.
    #[arg(long)]
    algebra: AlgebraKind,
    /// Deformation parameter; `1/2` is exact, `0.5` is floating point.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Podleś parameter r.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct RepArgs {
    /// fock, gamma, one_dim, podles_plus, podles_minus, podles_phi, uq.
    #[arg(long)]
    rep: String,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    omega: i8,
    /// Spin l of the U_q representation, e.g. `1/2`.
    #[arg(long, default_value = "1/2")]
    l: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Error classes mapped to exit codes.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// What a subcommand computed.
struct Output {
    result: Value,
    /// Header row first.
    table: Vec<Vec<String>>,
    failed: bool,
}

#[derive(Serialize)]
struct Manifest {
    subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    algebra: Option<AlgebraKind>,
    parameters: Value,
    tolerances: Value,
    tool_version: &'static str,
    warnings: Vec<String>,
    output_hash: String,
}

struct Loaded {
    alg: GradedStarAlgebra,
    warnings: Vec<String>,
}

fn parse_param(name: &str, text: &str, warnings: &mut Vec<String>) -> Result<ParamValue, CliError> {
    let v: ParamValue = text
        .parse()
        .map_err(|e: crate::numeric::ParamParseError| CliError::Usage(format!("--{name}: {e}")))?;
    if !v.is_exact() {
        warnings.push(format!(
            "decimal parameter {name}={text} is evaluated in floating point; pass a fraction for exact arithmetic"
        ));
    }
    Ok(v)
}

fn load(a: &AlgArgs) -> Result<Loaded, CliError> {
    let mut warnings = Vec::new();
    let q = parse_param("q", &a.q, &mut warnings)?;
    let r = match (&a.r, a.algebra.has_r()) {
        (Some(t), true) => Some(parse_param("r", t, &mut warnings)?),
        (None, true) => return Err(CliError::Usage("--r is required for the Podleś sphere".into())),
        (Some(_), false) => return Err(CliError::Usage(format!("--r is not a parameter of {}", a.algebra))),
        (None, false) => None,
    };
    let alg = GradedStarAlgebra::make(a.algebra, q, r).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(Loaded { alg, warnings })
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn emit(out: &OutArgs, manifest: &mut Manifest, output: &Output, stdout: &mut dyn Write) -> Result<(), CliError> {
    let body = match out.format {
        Format::Json => {
            let result = serde_json::to_string(&output.result).expect("values serialize");
            manifest.output_hash = sha256_hex(result.as_bytes());
            let doc = json!({ "manifest": manifest, "result": output.result });
            let mut s = serde_json::to_string_pretty(&doc).expect("values serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
            for row in &output.table {
                w.write_record(row).map_err(|e| CliError::Io(e.into()))?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))?
        }
    };
    match &out.out {
        Some(path) => std::fs::write(path, body)?,
        None => stdout.write_all(&body)?,
    }
    Ok(())
}

fn tolerances(extra: &[(&str, f64)]) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("positivity".into(), json!(POSITIVITY_TOL));
    m.insert("domain".into(), json!(DOMAIN_TOL));
    for (k, v) in extra {
        m.insert((*k).into(), json!(v));
    }
    Value::Object(m)
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let (name, loaded, params, tols, out, output): (&'static str, Option<Loaded>, Value, Value, OutArgs, Output) =
        match cli.command {
            Command::ListAlgebras { out } => {
                ("list-algebras", None, json!({}), tolerances(&[]), out, commands::list_algebras())
            }
            Command::Spectrum { alg, depth, cutoff, out } => {
                let l = load(&alg)?;
                let o = commands::spectrum(&l.alg, depth, cutoff);
                ("spectrum", Some(l), json!({"depth": depth, "cutoff": cutoff}), tolerances(&[]), out, o)
            }
            Command::Orbits { alg, max_radius, cutoff, gamma, out } => {
                let l = load(&alg)?;
                let o = commands::orbits(&l.alg, max_radius, cutoff, &gamma)?;
                let p = json!({"max_radius": max_radius, "cutoff": cutoff, "gamma_samples": gamma});
                ("orbits", Some(l), p, tolerances(&[]), out, o)
            }
            Command::Classify { alg, max_l, truncation, gamma, out } => {
                let l = load(&alg)?;
                let l2 = commands::parse_spin(&max_l)?;
                let o = commands::classify(&l.alg, l2, truncation, &gamma)?;
                let p = json!({"max_l": max_l, "truncation": truncation, "gamma_samples": gamma});
                ("classify", Some(l), p, tolerances(&[("induce_vs_preset", commands::GOLDEN_TOL)]), out, o)
            }
            Command::Induce { alg, character, truncation, phi, out } => {
                let l = load(&alg)?;
                let o = commands::induce(&l.alg, &character, truncation, phi)?;
                let p = json!({"character": character, "truncation": truncation, "phi": phi});
                ("induce", Some(l), p, tolerances(&[]), out, o)
            }
            Command::Verify { alg, rep, truncation, tol, out } => {
                let l = load(&alg)?;
                let fam = commands::rep_family(&rep)?;
                let o = commands::verify(&l.alg, &fam, truncation, tol)?;
                let p = json!({"rep": fam, "truncation": truncation});
                ("verify", Some(l), p, tolerances(&[("residual", tol)]), out, o)
            }
            Command::Sos { alg, target, degree, out } => {
                let l = load(&alg)?;
                let o = commands::sos(&l.alg, &target, degree)?;
                ("sos", Some(l), json!({"target": target, "degree": degree}), tolerances(&[]), out, o)
            }
            Command::Covariance { alg, rep, truncation, tol, out } => {
                let l = load(&alg)?;
                let fam = commands::rep_family(&rep)?;
                let o = commands::covariance(&l.alg, &fam, truncation, tol)?;
                let p = json!({"rep": fam, "truncation": truncation});
                let t = tolerances(&[("shift", tol), ("reconstruction", commands::RECONSTRUCTION_TOL)]);
                ("covariance", Some(l), p, t, out, o)
            }
        };
    let mut parameters = params;
    if let Some(l) = &loaded {
        parameters["algebra_parameters"] = json!(l.alg.params());
    }
    let mut manifest = Manifest {
        subcommand: name,
        algebra: loaded.as_ref().map(|l| l.alg.kind()),
        parameters,
        tolerances: tols,
        tool_version: env!("CARGO_PKG_VERSION"),
        warnings: loaded.map(|l| l.warnings).unwrap_or_default(),
        output_hash: String::new(),
    };
    emit(&out, &mut manifest, &output, stdout)?;
    Ok(!output.failed)
}

/// Run with explicit output streams; returns the exit code.
pub fn run_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let target: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFICATION_FAILED,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Domain(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_DOMAIN
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_VERIFICATION_FAILED
        }
    }
}

/// Run against the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(argv, &mut out, &mut err)
}
