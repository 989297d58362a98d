//! Command-line front end for the weighted zero-sum sequence engine.
//!
//! Subcommands: `check` (decide one sequence), `constant` (compute C, D or
//! E), `extremal` (enumerate extremal classes), `verify` (run the theorem
//! harness), `cache` (inspect the constant cache).  Every command emits a
//! report in human, JSON or CSV form.
//!
//! Exit codes: 0 success (and all checks passing), 1 verification FAIL,
//! 2 usage error, 3 budget exhausted.

mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zerosum_core::cache::{resolve_dir, ConstantCache};
use zerosum_core::constants::{
    compute_constant, ConstantKind, ConstantOutcome, SearchOptions, DEFAULT_SEARCH_BUDGET,
};
use zerosum_core::engine::{find_wzs_subsequence, SubsequenceConstraint};
use zerosum_core::extremal::{enumerate_extremal, SymmetryRelation};
use zerosum_core::residue::{Modulus, WeightSet};
use zerosum_core::sequence::Sequence;
use zerosum_core::verify::{run_checks, CheckSelection, VerifyOptions};
use zerosum_core::Error;

use render::{CommandEcho, Output, Report};

#[derive(Parser)]
#[command(
    name = "zerosum",
    version,
    about = "Weighted zero-sum sequences over Z/nZ: constants, extremal sequences, theorem checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Cap worker parallelism (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cache directory (default: $ZEROSUM_CACHE_DIR, then the platform data
    /// dir).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a sequence has a qualifying weighted zero-sum
    /// subsequence.
    Check(CheckArgs),
    /// Compute one of the constants C, D or E.
    Constant(ConstantArgs),
    /// Enumerate extremal sequences and bucket them into symmetry classes.
    Extremal(ExtremalArgs),
    /// Run the theorem-check harness over a modulus range.
    Verify(VerifyArgs),
    /// Inspect or clear the constant cache.
    Cache(CacheArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Modulus n >= 2.
    #[arg(long)]
    n: u32,
    /// Weight set A: one, zero, all-nonzero, units, minus-one, or {c1,c2,...}.
    #[arg(long = "A", value_name = "SPEC")]
    a: String,
    /// Weight set B (same syntax as A).
    #[arg(long = "B", value_name = "SPEC")]
    b: String,
    /// Comma-separated integer terms; negatives are reduced mod n.
    #[arg(long)]
    seq: String,
    /// Subsequence mode: any, consecutive, or exact:L.
    #[arg(long, default_value = "any")]
    mode: String,
}

#[derive(Args)]
struct ConstantArgs {
    /// Constant kind: C, D or E.
    #[arg(long)]
    kind: String,
    /// Modulus n >= 2.
    #[arg(long)]
    n: u32,
    /// Weight set A: one, zero, all-nonzero, units, minus-one, or {c1,c2,...}.
    #[arg(long = "A", value_name = "SPEC")]
    a: String,
    /// Weight set B (same syntax as A).
    #[arg(long = "B", value_name = "SPEC")]
    b: String,
    /// Enumeration budget in engine calls.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Trust the cap theorem at the final scan length instead of
    /// enumerating it.
    #[arg(long)]
    assume_cap: bool,
}

#[derive(Args)]
struct ExtremalArgs {
    /// Constant kind: C, D or E.
    #[arg(long)]
    kind: String,
    /// Modulus n >= 2.
    #[arg(long)]
    n: u32,
    /// Weight set A: one, zero, all-nonzero, units, minus-one, or {c1,c2,...}.
    #[arg(long = "A", value_name = "SPEC")]
    a: String,
    /// Weight set B (same syntax as A).
    #[arg(long = "B", value_name = "SPEC")]
    b: String,
    /// Symmetry relation: equivalence, order-equivalence,
    /// translate-of-equivalent, translate-of-order-equivalent, or
    /// translation-only.
    #[arg(long)]
    relation: String,
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// "all" or a comma-separated list of check ids.
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long, default_value_t = 2)]
    n_min: u32,
    #[arg(long, default_value_t = 5)]
    n_max: u32,
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Run checks that default to SKIPPED_BUDGET.
    #[arg(long)]
    force_expensive: bool,
}

#[derive(Args)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand, Clone, Copy)]
enum CacheAction {
    /// Print every stored constant result.
    List,
    /// Delete the cache file.
    Clear,
    /// Print the cache file location.
    Path,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore the error: the pool can only be configured once and tests
        // may have already touched it.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let start = Instant::now();
    match dispatch(&cli) {
        Ok((echo, output)) => {
            let exit = output.exit_code();
            let report = Report::new(echo, output, start.elapsed().as_millis() as u64);
            match render::emit(&report, cli.format) {
                Ok(()) => ExitCode::from(exit),
                Err(err) => {
                    eprintln!("error: {err}");
                    ExitCode::from(2)
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::SearchBudget { .. } | Error::OracleBudget { .. } => 3,
        _ => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<(CommandEcho, Output), Error> {
    match &cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Constant(args) => cmd_constant(args, cli.cache_dir.as_deref()),
        Command::Extremal(args) => cmd_extremal(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Cache(args) => cmd_cache(args, cli.cache_dir.as_deref()),
    }
}

fn weight_sets(n: u32, a: &str, b: &str) -> Result<(Modulus, WeightSet, WeightSet), Error> {
    let m = Modulus::new(n)?;
    let a = WeightSet::parse(a, m)?;
    let b = WeightSet::parse(b, m)?;
    Ok((m, a, b))
}

fn parse_terms(text: &str) -> Result<Vec<i64>, Error> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::InvalidSpec {
            spec: text.to_string(),
            reason: "sequence must contain at least one term".to_string(),
        });
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|_| Error::InvalidSpec {
                spec: part.to_string(),
                reason: "sequence terms must be integers".to_string(),
            })
        })
        .collect()
}

fn parse_mode(text: &str) -> Result<SubsequenceConstraint, Error> {
    match text {
        "any" => Ok(SubsequenceConstraint::Any),
        "consecutive" => Ok(SubsequenceConstraint::Consecutive),
        other => {
            if let Some(len) = other.strip_prefix("exact:") {
                let len = len.parse::<usize>().map_err(|_| Error::InvalidSpec {
                    spec: other.to_string(),
                    reason: "exact mode needs a positive length, e.g. exact:3".to_string(),
                })?;
                Ok(SubsequenceConstraint::ExactLength(len))
            } else {
                Err(Error::InvalidSpec {
                    spec: other.to_string(),
                    reason: "mode must be any, consecutive, or exact:L".to_string(),
                })
            }
        }
    }
}

/// Accepts the shorter relation spellings used in earlier write-ups.
fn parse_relation(text: &str) -> Result<SymmetryRelation, Error> {
    let canonical = match text {
        "translate-equivalent" => "translate-of-equivalent",
        "translate-order-equivalent" => "translate-of-order-equivalent",
        other => other,
    };
    SymmetryRelation::parse(canonical)
}

fn echo(name: &'static str, args: &[(&'static str, String)]) -> CommandEcho {
    CommandEcho {
        name,
        args: args
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect::<BTreeMap<String, String>>(),
    }
}

fn cmd_check(args: &CheckArgs) -> Result<(CommandEcho, Output), Error> {
    let (m, a, b) = weight_sets(args.n, &args.a, &args.b)?;
    let constraint = parse_mode(&args.mode)?.validate()?;
    let terms = parse_terms(&args.seq)?;
    let sequence = Sequence::new(m, terms);
    let witness = find_wzs_subsequence(&sequence, &a, &b, constraint)?;
    let echo = echo(
        "check",
        &[
            ("n", args.n.to_string()),
            ("A", args.a.clone()),
            ("B", args.b.clone()),
            ("seq", args.seq.clone()),
            ("mode", args.mode.clone()),
        ],
    );
    Ok((
        echo,
        Output::Check {
            n: args.n,
            a: a.canonical_string(),
            b: b.canonical_string(),
            mode: args.mode.clone(),
            sequence: sequence.terms().to_vec(),
            witness,
        },
    ))
}

fn cmd_constant(
    args: &ConstantArgs,
    cache_dir: Option<&std::path::Path>,
) -> Result<(CommandEcho, Output), Error> {
    let kind = ConstantKind::parse(&args.kind)?;
    let (_, a, b) = weight_sets(args.n, &args.a, &args.b)?;
    let echo = echo(
        "constant",
        &[
            ("kind", kind.code().to_string()),
            ("n", args.n.to_string()),
            ("A", args.a.clone()),
            ("B", args.b.clone()),
            ("budget", args.budget.to_string()),
            ("assume_cap", args.assume_cap.to_string()),
        ],
    );
    let cache = ConstantCache::at_dir(resolve_dir(cache_dir));
    if let Some(hit) = cache.lookup(
        kind,
        args.n,
        &a.canonical_string(),
        &b.canonical_string(),
    )? {
        return Ok((
            echo,
            Output::ConstantDone {
                result: hit.result,
                from_cache: true,
            },
        ));
    }
    let options = SearchOptions {
        budget: args.budget,
        assume_cap: args.assume_cap,
    };
    match compute_constant(kind, &a, &b, &options)? {
        ConstantOutcome::Complete(result) => {
            if let Err(err) = cache.store(&result) {
                eprintln!("warning: {err}");
            }
            Ok((
                echo,
                Output::ConstantDone {
                    result,
                    from_cache: false,
                },
            ))
        }
        ConstantOutcome::BudgetExhausted(bounds) => Ok((echo, Output::ConstantBudget { bounds })),
    }
}

fn cmd_extremal(args: &ExtremalArgs) -> Result<(CommandEcho, Output), Error> {
    let kind = ConstantKind::parse(&args.kind)?;
    let (_, a, b) = weight_sets(args.n, &args.a, &args.b)?;
    let relation = parse_relation(&args.relation)?;
    let options = SearchOptions {
        budget: args.budget,
        assume_cap: false,
    };
    let enumeration = enumerate_extremal(kind, &a, &b, relation, None, &options)?;
    let echo = echo(
        "extremal",
        &[
            ("kind", kind.code().to_string()),
            ("n", args.n.to_string()),
            ("A", args.a.clone()),
            ("B", args.b.clone()),
            ("relation", relation.code().to_string()),
            ("budget", args.budget.to_string()),
        ],
    );
    Ok((echo, Output::Extremal(enumeration)))
}

fn cmd_verify(args: &VerifyArgs) -> Result<(CommandEcho, Output), Error> {
    let selection = if args.checks.trim() == "all" {
        CheckSelection::All
    } else {
        let ids: Vec<String> = args
            .checks
            .split(',')
            .map(|id| id.trim().to_string())
            .filter(|id| !id.is_empty())
            .collect();
        if ids.is_empty() {
            return Err(Error::InvalidSpec {
                spec: args.checks.clone(),
                reason: "expected \"all\" or a comma-separated list of check ids".to_string(),
            });
        }
        CheckSelection::Ids(ids)
    };
    let options = VerifyOptions {
        n_min: args.n_min,
        n_max: args.n_max,
        budget: args.budget,
        force_expensive: args.force_expensive,
    };
    let reports = run_checks(&selection, &options)?;
    let echo = echo(
        "verify",
        &[
            ("checks", args.checks.clone()),
            ("n_min", args.n_min.to_string()),
            ("n_max", args.n_max.to_string()),
            ("budget", args.budget.to_string()),
            ("force_expensive", args.force_expensive.to_string()),
        ],
    );
    Ok((echo, Output::Verify { reports }))
}

fn cmd_cache(
    args: &CacheArgs,
    cache_dir: Option<&std::path::Path>,
) -> Result<(CommandEcho, Output), Error> {
    let cache = ConstantCache::at_dir(resolve_dir(cache_dir));
    let path = cache.path().display().to_string();
    let (action, output) = match args.action {
        CacheAction::List => (
            "list",
            Output::CacheList {
                path,
                entries: cache.entries()?,
            },
        ),
        CacheAction::Clear => (
            "clear",
            Output::CacheCleared {
                path,
                removed: cache.clear()?,
            },
        ),
        CacheAction::Path => ("path", Output::CachePath { path }),
    };
    Ok((echo("cache", &[("action", action.to_string())]), output))
}
