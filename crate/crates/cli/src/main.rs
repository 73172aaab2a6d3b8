//! `diffop`: analyses of linear differential operators with exact output.
//!
//! Exit status: 0 on success, 2 when a check fails (`fuchs-check`,
//! `minimize` cross-checks), 1 on error. Errors carry a stable code.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diffop::algebra::parse_rational;
use diffop::bounds::Refinements;
use diffop::{Error, Rational, Result};
use num_bigint::BigInt;

use commands::BoundArgs;
use diffop::local::PointSpec;
use input::{read_operator, read_rationals};
use report::{error_json, Outcome};

#[derive(Parser)]
#[command(name = "diffop", version, about = "Exact analysis of linear differential operators over Q(z)")]
struct Cli {
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Human-readable output.
    #[arg(long, global = true)]
    text: bool,
    /// Name of the independent variable.
    #[arg(long, global = true, default_value = "z")]
    var: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OperatorArg {
    /// Operator text, a file containing it, or `-` for stdin.
    #[arg(long, short = 'o', allow_hyphen_values = true)]
    operator: String,
}

#[derive(Subcommand)]
enum Command {
    /// Singular points, local data and the global counts S, N, E.
    Analyze(OperatorArg),
    /// Degree bounds for monic right factors.
    Bound {
        #[command(flatten)]
        op: OperatorArg,
        /// Exponent bound, required for non-Fuchsian operators.
        #[arg(long = "E", value_parser = rational_arg)]
        e: Option<Rational>,
        /// Number of non-apparent singular points (overrides the census).
        #[arg(long = "S")]
        s: Option<usize>,
        /// Also report the exponent tower for this kappa.
        #[arg(long)]
        kappa: Option<u64>,
        /// Height for the tower (default: naive height of the operator).
        #[arg(long)]
        height: Option<BigInt>,
        /// Comma-separated refinements: sumE, nminus1, minslopes, all.
        #[arg(long, default_value = "")]
        refine: String,
        /// One report per factor order r = 1..m.
        #[arg(long = "per-r", conflicts_with = "r")]
        per_r: bool,
        /// A single factor order.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Newton polygons at the singular points and infinity, or at given points.
    Newton {
        #[command(flatten)]
        op: OperatorArg,
        /// `inf`, a rational, or `roots:<polynomial>`; repeatable.
        #[arg(long = "point")]
        points: Vec<String>,
    },
    /// Check the Fuchs relation on a Fuchsian operator.
    FuchsCheck(OperatorArg),
    /// Product of two operators.
    Multiply {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Right division `left = q * right + r`.
    Divmod {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Formal adjoint.
    Adjoint {
        #[arg(allow_hyphen_values = true)]
        operator: String,
    },
    /// Recurrence satisfied by the Taylor coefficients at 0.
    ToRecurrence(OperatorArg),
    /// Taylor coefficients at 0 from initial terms.
    Expand {
        #[command(flatten)]
        op: OperatorArg,
        /// Initial coefficients: a file (one per line) or a comma-separated list.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Number of coefficients to print.
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Smallest-order operator annihilating the series with the given first terms.
    Minimize {
        #[command(flatten)]
        op: OperatorArg,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long = "degree-cap")]
        degree_cap: Option<usize>,
        #[arg(long = "E", value_parser = rational_arg)]
        e: Option<Rational>,
    },
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Bound { .. } => "bound",
            Command::Newton { .. } => "newton",
            Command::FuchsCheck(_) => "fuchs-check",
            Command::Multiply { .. } => "multiply",
            Command::Divmod { .. } => "divmod",
            Command::Adjoint { .. } => "adjoint",
            Command::ToRecurrence(_) => "to-recurrence",
            Command::Expand { .. } => "expand",
            Command::Minimize { .. } => "minimize",
        }
    }
}

fn run(cmd: Command, var: &str) -> Result<Outcome> {
    let op = |s: &str| read_operator(s, var);
    match cmd {
        Command::Analyze(a) => commands::analyze(&op(&a.operator)?),
        Command::Bound { op: a, e, s, kappa, height, refine, per_r, r } => {
            let args = BoundArgs {
                e,
                s,
                kappa,
                height,
                refine: Refinements::parse(&refine)?,
                per_r,
                r,
            };
            commands::bound(&op(&a.operator)?, &args)
        }
        Command::Newton { op: a, points } => {
            let points = points.iter().map(|p| PointSpec::parse(p, var)).collect::<Result<Vec<_>>>()?;
            commands::newton(&op(&a.operator)?, points)
        }
        Command::FuchsCheck(a) => commands::fuchs_check(&op(&a.operator)?),
        Command::Multiply { left, right } => commands::multiply(&op(&left)?, &op(&right)?),
        Command::Divmod { left, right } => commands::divmod(&op(&left)?, &op(&right)?),
        Command::Adjoint { operator } => commands::adjoint(&op(&operator)?),
        Command::ToRecurrence(a) => commands::to_recurrence(&op(&a.operator)?),
        Command::Expand { op: a, coeffs, terms } => {
            commands::expand(&op(&a.operator)?, read_rationals(&coeffs)?, terms)
        }
        Command::Minimize { op: a, coeffs, degree_cap, e } => {
            commands::minimize_cmd(&op(&a.operator)?, &read_rationals(&coeffs)?, degree_cap, e)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let text = cli.text;
    match run(cli.command, &cli.var) {
        Ok(out) => {
            // a closed pipe is not an error worth reporting
            let mut stdout = std::io::stdout().lock();
            let _ = if text {
                write!(stdout, "{}", out.text)
            } else {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.to_json()).expect("json"))
            };
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            report_error(name, &e, text);
            ExitCode::from(1)
        }
    }
}

fn report_error(name: &str, e: &Error, text: bool) {
    if text {
        eprintln!("error[{}]: {e}", e.code());
    } else {
        let _ = writeln!(
            std::io::stdout().lock(),
            "{}",
            serde_json::to_string_pretty(&error_json(name, e)).expect("json")
        );
    }
}
