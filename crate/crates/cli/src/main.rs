//! `holodiff`: validate towers and compute genera, bases and Galois module
//! structure from a JSON descriptor.
//!
//! Exit status is 0 on success, 1 when the input is rejected (parse errors,
//! failed validation, unsupported shapes) and 2 when an internal invariant
//! check fires.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use holodiff::boseck::enumerate_basis_with;
use holodiff::galois::{action_matrix, basis_index, cyclic_decomposition};
use holodiff::json::{self as hj, canonical};
use holodiff::standard_form::{as_weak_standard_form, kummer_standard_form};
use holodiff::tower::{analyze, genus_from_analysis, genus_stepwise, validate, StepKind, TowerDescriptor};
use holodiff::tower_algebra::holomorphy_check;
use holodiff::univariate::set_factor_seed;
use holodiff::{fixtures, Error};

#[derive(Parser)]
#[command(name = "holodiff", version, about = "Holomorphic differentials of Kummer and Artin-Schreier towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Descriptor file; standard input when omitted
    #[arg(long, global = true)]
    input: Option<String>,
    /// Use a bundled fixture instead of a file
    #[arg(long, global = true, conflicts_with = "input")]
    fixture: Option<String>,
    /// Salt for the randomized factorization (results do not depend on it)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Treat missing roots of unity as a note instead of a failure
    #[arg(long, global = true)]
    assume_uniform: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the standing assumptions (a)-(g)
    Validate(Input),
    /// Ramification profile of every ramified place
    Analyze(Input),
    /// Genus of the top field and of each intermediate field
    Genus(Input),
    /// Basis of holomorphic differentials
    Basis {
        #[command(flatten)]
        input: Input,
        /// Print one differential per line instead of JSON
        #[arg(long)]
        pretty: bool,
        /// Run the holomorphy oracle on every element
        #[arg(long)]
        check: bool,
    },
    /// Indecomposable summands for a cyclic tower
    Decompose(Input),
    /// Normalize every step whose coefficient lies in k(x)
    Standardform(Input),
    /// Matrix of a group element on the basis
    Act {
        #[command(flatten)]
        input: Input,
        /// Exponents h_1,...,h_r of the group element
        #[arg(long, value_delimiter = ',', required = true)]
        element: Vec<u64>,
    },
}

enum Outcome {
    Json(Value),
    Text(String),
    /// emitted, but the command still exits with status 1
    Rejected(Value),
}

fn load(input: &Input) -> Result<TowerDescriptor, Error> {
    if let Some(seed) = input.seed {
        set_factor_seed(seed);
    }
    let mut d = match (&input.fixture, &input.input) {
        (Some(name), _) => fixtures::by_name(name).ok_or_else(|| Error::Parse(format!("unknown fixture {name:?}")))?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            hj::parse_descriptor(&text)?
        }
        (None, None) => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            hj::parse_descriptor(&text)?
        }
    };
    if input.assume_uniform {
        d.options.assume_uniform = true;
    }
    Ok(d)
}

fn run(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Validate(input) => {
            let d = load(input)?;
            let report = validate(&d);
            let v = hj::validation_value(&report);
            Ok(if report.passed() { Outcome::Json(v) } else { Outcome::Rejected(v) })
        }
        Command::Analyze(input) => {
            let d = load(input)?;
            Ok(Outcome::Json(hj::analysis_value(&analyze(&d)?, d.field())))
        }
        Command::Genus(input) => {
            let d = load(input)?;
            let a = analyze(&d)?;
            Ok(Outcome::Json(json!({"genus": genus_from_analysis(&d, &a)?, "stepwise": genus_stepwise(&d)?})))
        }
        Command::Basis { input, pretty, check } => {
            let d = load(input)?;
            let k = d.field();
            let a = analyze(&d)?;
            let basis = enumerate_basis_with(&d, &a)?;
            let mut reports = Vec::new();
            if *check {
                for b in &basis {
                    let r = holomorphy_check(&d, b)?;
                    if !r.holomorphic {
                        return Err(Error::ClosureFailure(format!("{} is not holomorphic", b.pretty(k))));
                    }
                    reports.push(r);
                }
            }
            if *pretty {
                let mut out: Vec<String> = basis.iter().map(|b| b.pretty(k)).collect();
                if *check {
                    out.push(format!("all {} elements holomorphic", basis.len()));
                }
                return Ok(Outcome::Text(out.join("\n")));
            }
            let mut v = json!({
                "genus": genus_from_analysis(&d, &a)?,
                "basis": basis.iter().map(|b| hj::basis_value(b, k)).collect::<Vec<_>>(),
            });
            if *check {
                v["check"] = reports.iter().map(|r| hj::holomorphy_value(r, k)).collect();
            }
            Ok(Outcome::Json(v))
        }
        Command::Decompose(input) => {
            let d = load(input)?;
            Ok(Outcome::Json(hj::decomposition_value(&cyclic_decomposition(&d)?)))
        }
        Command::Standardform(input) => {
            let d = load(input)?;
            let k = d.field();
            let mut steps = Vec::new();
            for (i, s) in d.steps().iter().enumerate() {
                let Some(c) = s.c.as_ratfun() else {
                    steps.push(json!({"level": i + 1, "skipped": "coefficient involves lower generators"}));
                    continue;
                };
                let (out, chain) = match s.kind {
                    StepKind::ArtinSchreier => as_weak_standard_form(&c, &[], k)?,
                    StepKind::Kummer { n } => kummer_standard_form(&c, n, k)?,
                };
                steps.push(json!({"level": i + 1, "c": hj::ratfun_value(&out, k), "chain": hj::chain_value(&chain, k)}));
            }
            Ok(Outcome::Json(json!({"steps": steps})))
        }
        Command::Act { input, element } => {
            let d = load(input)?;
            let k = d.field();
            let (_, index) = basis_index(&d)?;
            let m = action_matrix(&d, &index, element)?;
            Ok(Outcome::Json(json!({
                "element": element,
                "basis": index.basis.iter().map(|b| hj::basis_value(b, k)).collect::<Vec<_>>(),
                "matrix": hj::matrix_value(&m, k),
            })))
        }
    }
}

/// Writes one output document; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(Outcome::Json(v)) => {
            emit(&canonical(&v));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Text(s)) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Rejected(v)) => {
            emit(&canonical(&v));
            ExitCode::from(1)
        }
        Err(e) => {
            emit(&canonical(&hj::error_value(&e)));
            ExitCode::from(if e.is_invariant_violation() { 2 } else { 1 })
        }
    }
}
