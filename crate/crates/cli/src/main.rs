use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use thompson_ts::check::{run_checks, CheckSummary, DEFAULT_SAMPLES, DEFAULT_SEED};
use thompson_ts::oracle::{self, InstanceFile, OracleCaps, OracleSummary, DEFAULT_RADIUS_CAP, EXACT_TOUR_CAP};
use thompson_ts::witness::{build_grid_set, build_witness, gamma_dot, lemma1_witness, Preset, SupportPair, WitnessOptions};
use thompson_ts::{parse_rational, AlphabetSpec, Element, Error, GeneratorTable, GroupWord};

#[derive(Parser)]
#[command(name = "fts", version, about = "Witness sets and tours on the Cayley graph of Thompson's group F")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify a ξ-related set with a short closed covering path.
    Witness(WitnessArgs),
    /// Run the calibration checks and the randomized property suites.
    Check(CheckArgs),
    /// Solve the exact shortest tour of a small witness set or instance file.
    Oracle(OracleArgs),
    /// Write the two-layer grid graph as DOT, or a witness set as JSON.
    Export(ExportArgs),
}

#[derive(Args)]
struct AlphabetArg {
    /// std2, x012, mirror3, or @path to a JSON alphabet definition.
    #[arg(long, default_value = "std2")]
    alphabet: String,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, default_value = "")]
    xi: String,
    /// Target ratio as an exact rational, e.g. 26/10.
    #[arg(long)]
    lambda: String,
    /// Forces n (even in the generic branch, odd in the abelian one).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 201)]
    n_max: usize,
    #[command(flatten)]
    alphabet: AlphabetArg,
    /// Also solve the exact tour of the set and embed it under `oracle`.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = DEFAULT_RADIUS_CAP)]
    max_radius: u32,
    #[arg(long, default_value_t = EXACT_TOUR_CAP)]
    max_tour: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Writes the full summary as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replaces x1 by x1² to exercise the failure path.
    #[arg(long, hide = true)]
    corrupt_generators: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value = "")]
    xi: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[command(flatten)]
    alphabet: AlphabetArg,
    /// A tour instance file; replaces the witness set.
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_RADIUS_CAP)]
    max_radius: u32,
    #[arg(long, default_value_t = EXACT_TOUR_CAP)]
    max_tour: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Set,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "")]
    xi: String,
    #[command(flatten)]
    alphabet: AlphabetArg,
    #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
    format: ExportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit 1: something was computed and found wrong. Exit 2: the request
/// could not be carried out as given.
enum Failure {
    Verification(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_)
            | Error::RatioNotBelowLambda { .. }
            | Error::CommutationFailed(_)
            | Error::DegenerateInconsistent(_) => Failure::Verification(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn emit(text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| invalid(e.to_string()))
}

fn load_pair(selector: &str) -> CliResult<SupportPair> {
    match selector.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{path}: {e}")))?;
            let spec: AlphabetSpec = serde_json::from_str(&text).map_err(|e| invalid(format!("{path}: {e}")))?;
            let (_, u, v, split) = spec.build(GeneratorTable::standard())?;
            Ok(SupportPair::new(u, v, split)?)
        }
        None => Ok(selector.parse::<Preset>()?.pair()?),
    }
}

fn parse_lambda(s: &str) -> CliResult<BigRational> {
    parse_rational(s).ok_or_else(|| invalid(format!("lambda {s:?} is not a rational p/q")))
}

fn cmd_witness(args: WitnessArgs) -> CliResult {
    let pair = load_pair(&args.alphabet.alphabet)?;
    let xi = GroupWord::parse(pair.alphabet(), &args.xi)?;
    let lambda = parse_lambda(&args.lambda)?;
    let options = WitnessOptions {
        n_max: args.n_max,
        n_override: args.n,
    };
    let mut report = build_witness(&xi, &lambda, &pair, options)?;
    if args.oracle {
        let caps = OracleCaps {
            max_radius: args.max_radius,
            max_tour: args.max_tour,
        };
        report.oracle = Some(oracle::summarize_report(&report, caps)?);
    }
    emit(&to_json(&report)?, args.out.as_deref())
}

fn print_check(summary: &CheckSummary) {
    let line = |name: &str, t: thompson_ts::check::Tally| println!("{name} {}/{}", t.passed, t.total);
    line("relations", summary.relations);
    line("supports", summary.support_facts);
    line("lemma1", summary.lemma1);
    line("mixed", summary.mixed);
}

fn cmd_check(args: CheckArgs) -> CliResult {
    let table = if args.corrupt_generators {
        GeneratorTable::corrupted()
    } else {
        GeneratorTable::standard().clone()
    };
    let summary = run_checks(&table, args.samples, args.seed);
    print_check(&summary);
    if let Some(path) = &args.out {
        emit(&to_json(&summary)?, Some(path))?;
    }
    match &summary.counterexample {
        Some(c) if !summary.passed() => {
            let json = serde_json::to_string(c).map_err(|e| invalid(e.to_string()))?;
            Err(Failure::Verification(format!("first counterexample: {json}")))
        }
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct OracleOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    xi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    alphabet: String,
    #[serde(flatten)]
    summary: OracleSummary,
}

fn cmd_oracle(args: OracleArgs) -> CliResult {
    let caps = OracleCaps {
        max_radius: args.max_radius,
        max_tour: args.max_tour,
    };
    let output = match &args.points {
        Some(path) => {
            let file = InstanceFile::load(path)?;
            let inst = file.resolve(caps.max_radius)?;
            if inst.len() > caps.max_tour {
                return Err(Error::CapExceeded {
                    what: "tour size",
                    value: inst.len(),
                    cap: caps.max_tour,
                }
                .into());
            }
            OracleOutput {
                xi: None,
                n: None,
                alphabet: file.alphabet.clone(),
                summary: oracle::summarize_instance(&inst, caps)?,
            }
        }
        None => {
            let pair = load_pair(&args.alphabet.alphabet)?;
            let xi = GroupWord::parse(pair.alphabet(), &args.xi)?;
            OracleOutput {
                xi: Some(xi.to_string()),
                n: Some(args.n),
                alphabet: pair.alphabet().name().to_string(),
                summary: oracle::summarize_grid(&xi, &pair, args.n, caps)?,
            }
        }
    };
    emit(&to_json(&output)?, args.out.as_deref())
}

#[derive(Serialize)]
struct SetExport<'a> {
    xi: String,
    n: usize,
    card: usize,
    degenerate: bool,
    elements: &'a [Element],
}

fn cmd_export(args: ExportArgs) -> CliResult {
    let text = match args.format {
        ExportFormat::Dot => gamma_dot(args.n)?,
        ExportFormat::Set => {
            let pair = load_pair(&args.alphabet.alphabet)?;
            let xi = GroupWord::parse(pair.alphabet(), &args.xi)?;
            let lw = lemma1_witness(&xi, &pair)?;
            let grid = build_grid_set(&lw, &pair, args.n)?;
            to_json(&SetExport {
                xi: xi.to_string(),
                n: args.n,
                card: grid.card(),
                degenerate: grid.is_degenerate(),
                elements: grid.elements(),
            })?
        }
    };
    emit(&text, args.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Witness(a) => cmd_witness(a),
        Command::Check(a) => cmd_check(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Export(a) => cmd_export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("fts: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("fts: {msg}");
            ExitCode::from(2)
        }
    }
}
