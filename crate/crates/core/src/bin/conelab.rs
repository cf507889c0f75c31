//! Command-line front end: analyze instance files, emit the built-in
//! one-parameter family, run randomized corpora, evaluate the bound
//! formulas, and enumerate finiteness envelopes.
//!
//! Exit codes: 0 ok, 1 usage or parse error, 2 computational error,
//! 3 verdict failure (counterexample candidate).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use conelab::analyze::{analyze_instance, AnalyzeOptions};
use conelab::bounds::{
    coeff_upper_bound, finiteness_envelope, hs_upper_bound, hs_upper_bound_weak,
    reg_upper_bound, reg_upper_bound_cm, CoeffVariant,
};
use conelab::corpus::{corpus_run, CorpusSource};
use conelab::error::Error;
use conelab::instance::InstanceSpec;

#[derive(Parser)]
#[command(name = "conelab", version, about = "Tangent cones, regularity, and extended degrees of local rings", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an instance file ('-' reads stdin)
    Analyze(AnalyzeArgs),
    /// Emit the family instance x^2, x*y^r
    Family(FamilyArgs),
    /// Analyze a randomized corpus or a directory of instances
    Corpus(CorpusArgs),
    /// Evaluate every bound formula at given parameters
    Bounds(BoundsArgs),
    /// Enumerate the finiteness envelope for dimension d, extended degree <= q
    Envelope(EnvelopeArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Instance file path, or '-' for stdin
    file: String,
    #[arg(long)]
    json: bool,
    /// Tabulate/verify the Hilbert-Samuel function to at least this n
    #[arg(long)]
    horizon: Option<i64>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Seed for the instance generator
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random monomial-ideal instances
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Number of random homogeneous binomial-ideal instances
    #[arg(long, default_value_t = 50)]
    binomials: usize,
    /// Analyze instance files from this directory instead of generating
    #[arg(long, conflicts_with_all = ["seed", "count", "binomials"])]
    dir: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    horizon: Option<i64>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Dimension d >= 1
    #[arg(long)]
    d: u64,
    /// Multiplicity e >= 1
    #[arg(long)]
    e: i128,
    /// Cohen-Macaulay deviation I >= 0
    #[arg(long)]
    i: i128,
    /// Hilbert-Samuel argument n
    #[arg(long)]
    n: i64,
    /// Invariant c for the generalized-Cohen-Macaulay comparison bound
    /// (defaults to 2I)
    #[arg(long)]
    c: Option<i128>,
}

#[derive(Args)]
struct EnvelopeArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::NotPrime(_) => 1,
        Error::Stage { source, .. } => exit_code_for(source),
        _ => 2,
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Analyze(args) => {
            let text = if args.file == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::Internal(format!("stdin: {e}")))?;
                buf
            } else {
                std::fs::read_to_string(&args.file)
                    .map_err(|e| Error::Internal(format!("{}: {e}", args.file)))?
            };
            let spec = InstanceSpec::parse(&text)?;
            let bundle = analyze_instance(&spec, &AnalyzeOptions { horizon: args.horizon })?;
            if args.json {
                println!("{}", bundle.report.to_json());
            } else {
                print!("{}", bundle.text);
            }
            if bundle.report.any_verdict_failed() {
                eprintln!("verdict failure: counterexample candidate (bug until proven otherwise)");
                return Ok(ExitCode::from(3));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Family(args) => {
            if args.r == 0 {
                return Err(Error::Internal("family parameter r must be >= 1".into()));
            }
            let spec = InstanceSpec::family(args.r);
            if args.json {
                let v = serde_json::json!({
                    "field": spec.field.as_text(),
                    "vars": spec.vars,
                    "ideal": spec.ideal,
                    "label": spec.label,
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("family serializes"));
            } else {
                print!("{}", spec.emit());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus(args) => {
            let source = match args.dir {
                Some(dir) => CorpusSource::Dir(dir),
                None => CorpusSource::Generated {
                    seed: args.seed,
                    monomial: args.count,
                    binomial: args.binomials,
                },
            };
            let summary = corpus_run(&source, &AnalyzeOptions { horizon: args.horizon })?;
            if args.json {
                println!("{}", summary.to_json());
            } else {
                print!("{}", summary.render_text());
            }
            if !summary.failures.is_empty() {
                return Ok(ExitCode::from(3));
            }
            if !summary.errors.is_empty() {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds(args) => {
            let e = BigInt::from(args.e);
            let i = BigInt::from(args.i);
            let d = args.d;
            let n = args.n;
            let big_d = &e + &i;
            println!("inputs: d={d} e={e} I={i} n={n} (D = e + I = {big_d})");
            println!(
                "hilbert-samuel uniform bound at n:  {}",
                hs_upper_bound(n, d, &e, &i)?
            );
            println!(
                "hilbert-samuel weak bound at n:     {}",
                hs_upper_bound_weak(n, d, &big_d)?
            );
            println!("regularity bound:                   {}", reg_upper_bound(d, &e, &i)?);
            println!(
                "regularity bound (Cohen-Macaulay):  {}",
                reg_upper_bound_cm(d, &e)?
            );
            let c = args.c.map(BigInt::from).unwrap_or_else(|| BigInt::from(2) * &i);
            for idx in 1..=d {
                let main = coeff_upper_bound(idx, &e, &i, &CoeffVariant::Main)?;
                let cm = coeff_upper_bound(idx, &e, &i, &CoeffVariant::CohenMacaulay)?;
                let st = coeff_upper_bound(idx, &e, &i, &CoeffVariant::SrinivasTrivedi)?;
                let tr = coeff_upper_bound(idx, &e, &i, &CoeffVariant::Trivedi { c: c.clone() })?;
                println!("|e_{idx}| bounds: main {main} | cm {cm} | srinivas-trivedi {st} | trivedi(c={c}) {tr}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Envelope(args) => {
            let env = finiteness_envelope(args.d, args.q)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&env).expect("envelope serializes"));
            } else {
                println!("envelope for d = {}, D(A) <= {}:", env.d, env.q);
                for s in &env.splits {
                    println!(
                        "  split e={} I={}: horizon {}, candidate count {}",
                        s.e, s.i_dev, s.horizon, s.count
                    );
                    let shown: Vec<String> =
                        s.value_bounds.iter().take(8).map(|b| b.to_string()).collect();
                    let ell = if s.value_bounds.len() > 8 { ", ..." } else { "" };
                    println!("    value bounds [1, b_n]: {}{}", shown.join(", "), ell);
                    let cs: Vec<String> = s.coeff_bounds.iter().map(|b| b.to_string()).collect();
                    println!("    coefficient bounds |e_i| <= {}", cs.join(", "));
                }
                println!("  total candidate count: {}", env.total_count);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
