//! `nonrev`: runs extension strategies, writes and verifies certificates,
//! and drives the brute-force oracles.
//!
//! Exit codes: 0 success, 1 verification or oracle failure, 2 usage error,
//! 3 strategy or internal failure, 4 unreadable or malformed input file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nonrev::certificate::Certificate;
use nonrev::error::{OracleError, StrategyError, StructureError};
use nonrev::oracle::{finite_sweep, grow_random, witness_conformance};
use nonrev::strategies::{product_lift, run, subset_lift, LiftReport, Residue, SeedSpec};
use nonrev::structures::{compatible_strategies, describe, structure_by_id, STRUCTURE_IDS};
use nonrev::verify::verify_certificate;

const VERIFY_FAILED: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;
const MALFORMED: u8 = 4;

#[derive(Parser)]
#[command(name = "nonrev", version, about = "Bad condensations of countable posets, with replayable certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List structures, their capabilities and compatible strategies.
    Structures,
    /// Run a strategy and write its certificate.
    Run(RunArgs),
    /// Check a certificate and print an itemized report.
    Verify {
        path: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Grow a random poset fragment and write its dump.
    GrowRandom {
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Transport an existing certificate.
    #[command(subcommand)]
    Lift(LiftCommand),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    structure: String,
    #[arg(long)]
    strategy: String,
    #[arg(long)]
    steps: usize,
    #[arg(long)]
    out: PathBuf,
    /// Seed role overrides such as `a0=2;b0=6`.
    #[arg(long)]
    seed_spec: Option<String>,
    /// Verify the certificate after writing it.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Scan every bijection of every labeled poset up to a size.
    Finite {
        #[arg(long)]
        max_size: usize,
    },
    /// Check witness operations on random requests.
    Witnesses {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args)]
struct LiftOutput {
    /// Number of enumerated elements to evaluate.
    #[arg(long)]
    prefix: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum LiftCommand {
    /// `(x, c) -> (f(x), c)` on the product with a factor structure.
    Product {
        #[arg(long)]
        from: PathBuf,
        #[arg(long, default_value = "int")]
        factor: String,
        #[command(flatten)]
        output: LiftOutput,
    },
    /// `A -> tau f tau^-1 (A ∩ Y) ∪ (A \ Y)` for the residue class Y.
    Subset {
        #[arg(long)]
        from: PathBuf,
        #[arg(long, default_value_t = 2)]
        modulus: u64,
        #[arg(long, default_value_t = 0)]
        residue: u64,
        #[command(flatten)]
        output: LiftOutput,
    },
}

/// Writes to stdout, ignoring a closed pipe.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

fn strategy_failure(e: StrategyError) -> Failure {
    let code = match &e {
        StrategyError::Incompatible { .. }
        | StrategyError::UnknownStrategy(_)
        | StrategyError::InvalidSeed(_)
        | StrategyError::Precondition(_)
        | StrategyError::Structure(StructureError::UnknownStructure(_) | StructureError::Parse(_)) => USAGE,
        _ => INTERNAL,
    };
    Failure::new(code, e.to_string())
}

fn oracle_failure(e: OracleError) -> Failure {
    let code = match &e {
        OracleError::SizeGuard { .. } | OracleError::Structure(StructureError::UnknownStructure(_)) => USAGE,
        OracleError::Structure(_) => INTERNAL,
    };
    Failure::new(code, e.to_string())
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::new(INTERNAL, format!("cannot write {}: {e}", path.display())))
}

fn read_certificate(path: &Path) -> Result<Certificate, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(MALFORMED, format!("cannot read {}: {e}", path.display())))?;
    Certificate::from_json(&text).map_err(|e| Failure::new(MALFORMED, format!("{} is not a certificate: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Prints the report and fails unless every check passed.
fn check(cert: &Certificate, json: bool) -> Result<(), Failure> {
    let report = verify_certificate(cert);
    if json {
        say!("{}", to_json(&report));
    } else {
        say!("{}", report.to_text().trim_end());
    }
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().iter().map(|c| c.name.as_str()).collect();
        Err(Failure::new(VERIFY_FAILED, format!("verification failed: {}", names.join(", "))))
    }
}

fn structures() {
    for id in STRUCTURE_IDS {
        let st = structure_by_id(id).expect("listed ids resolve");
        say!("{id}");
        say!("  capabilities: {}", st.capabilities().names().join(", "));
        say!("  strategies:   {}", compatible_strategies(id).join(", "));
        say!("  result:       {}", describe(id));
    }
}

fn run_command(a: RunArgs) -> Result<(), Failure> {
    let spec = a
        .seed_spec
        .as_deref()
        .map(SeedSpec::parse)
        .transpose()
        .map_err(strategy_failure)?;
    let cert = run(&a.structure, &a.strategy, a.steps, spec.as_ref()).map_err(strategy_failure)?;
    write(&a.out, &cert.to_json())?;
    say!(
        "wrote {} ({} steps, {} pairs)",
        a.out.display(),
        cert.steps.len(),
        cert.final_map.len()
    );
    if a.verify {
        check(&cert, false)?;
    }
    Ok(())
}

fn finish_lift(report: LiftReport, output: LiftOutput) -> Result<(), Failure> {
    let cert = &report.certificate;
    write(&output.out, &cert.to_json())?;
    say!("wrote {} ({} pairs)", output.out.display(), cert.final_map.len());
    if !report.skipped.is_empty() {
        say!("skipped {} elements outside the source domain", report.skipped.len());
    }
    if output.verify {
        check(cert, false)?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Structures => structures(),
        Command::Run(a) => run_command(a)?,
        Command::Verify { path, json } => check(&read_certificate(&path)?, json)?,
        Command::Oracle(OracleCommand::Finite { max_size }) => {
            let sweep = finite_sweep(max_size).map_err(oracle_failure)?;
            say!("{}", to_json(&sweep));
            if !sweep.passed() {
                return Err(Failure::new(VERIFY_FAILED, "a bijective homomorphism is not an automorphism"));
            }
        }
        Command::Oracle(OracleCommand::Witnesses { structure, trials, seed }) => {
            let report = witness_conformance(&structure, trials, seed).map_err(oracle_failure)?;
            say!("{}", to_json(&report));
            if !report.passed() {
                return Err(Failure::new(VERIFY_FAILED, format!("{} witness failures", report.failures.len())));
            }
        }
        Command::GrowRandom { steps, seed, out } => {
            let st = grow_random(steps, seed);
            write(&out, &format!("{}\n", to_json(&st.dump())))?;
            say!("wrote {} ({} vertices)", out.display(), st.len());
        }
        Command::Lift(LiftCommand::Product { from, factor, output }) => {
            let f0 = read_certificate(&from)?;
            let report = product_lift(&f0, &factor, output.prefix).map_err(strategy_failure)?;
            finish_lift(report, output)?;
        }
        Command::Lift(LiftCommand::Subset { from, modulus, residue, output }) => {
            if modulus < 2 || residue >= modulus {
                return Err(Failure::new(USAGE, "need a modulus of at least 2 and a residue below it"));
            }
            let f = read_certificate(&from)?;
            let report = subset_lift(&f, Residue { k: modulus, r: residue }, output.prefix).map_err(strategy_failure)?;
            finish_lift(report, output)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
