//! `orenak`: command-line front end for the ore-nakayama library.

mod commands;
mod problem;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ore_nakayama::homology::LiftCase;

use crate::commands::{Output, DEFAULT_MAX_DEGREE, DEFAULT_MAX_XDEG};
use crate::problem::ProblemSpec;

#[derive(Parser)]
#[command(name = "orenak", version, about = "Nakayama automorphisms and invariants of Ore extensions")]
struct Cli {
    /// Problem file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Trimmed,
    Differential,
}

#[derive(Subcommand)]
enum Command {
    /// The element κ of the fraction field with δ(h) = κ(σ(h) - h).
    Kappa,
    /// Jacobian determinant of σ.
    Jacobian,
    /// Nakayama automorphism ν and a check of the defining relations.
    Nakayama,
    /// Decide whether E is Calabi–Yau.
    CheckCy,
    /// Orders of σ and ν.
    Order,
    /// σ_q^r(κ) - J^{-r}κ, which should be a polynomial.
    KappaDrift {
        #[arg(long, allow_hyphen_values = true)]
        r: i32,
    },
    /// Check the Koszul-level identities for the lifting ρ.
    VerifyResolution {
        #[arg(long, value_enum)]
        case: CaseArg,
    },
    /// Basis of the eigenspace Λ_{J^i} of σ.
    Eigenspaces {
        #[arg(long)]
        power: u32,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Basis of the ν-fixed elements of E in a truncation.
    Invariants {
        #[arg(long)]
        max_xdeg: Option<usize>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Which eigenspace elements occur as leading coefficients of invariants.
    CheckGr {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

fn run(cli: &Cli) -> Result<Output, String> {
    let path = cli.input.as_ref().ok_or("--input FILE is required")?;
    let input = ProblemSpec::load(path)?;
    if let Command::Jacobian = cli.command {
        return commands::jacobian(&input);
    }
    let p = input.build()?;
    let max_degree = |flag: Option<u32>| flag.or(p.bounds.max_degree).unwrap_or(DEFAULT_MAX_DEGREE);
    match &cli.command {
        Command::Kappa => commands::kappa(&p),
        Command::Jacobian => unreachable!("handled above"),
        Command::Nakayama => commands::nakayama(&p),
        Command::CheckCy => commands::check_cy(&p),
        Command::Order => commands::order(&p),
        Command::KappaDrift { r } => commands::kappa_drift_cmd(&p, *r),
        Command::VerifyResolution { case } => {
            let case = match case {
                CaseArg::Trimmed => LiftCase::Trimmed,
                CaseArg::Differential => LiftCase::Differential,
            };
            commands::verify_resolution(&p, case)
        }
        Command::Eigenspaces { power, max_degree: d } => commands::eigenspaces(&p, *power, max_degree(*d)),
        Command::Invariants { max_xdeg, max_degree: d } => {
            let x = max_xdeg.or(p.bounds.max_xdeg).unwrap_or(DEFAULT_MAX_XDEG);
            commands::invariants(&p, x, max_degree(*d))
        }
        Command::CheckGr { level, max_degree: d } => commands::check_gr(&p, *level, max_degree(*d)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("values serialize"),
                Format::Text => out.text,
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
