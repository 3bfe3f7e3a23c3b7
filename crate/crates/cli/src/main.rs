//! `dglie`: command-line front end for exact DGLA, L-infinity and HKR
//! computations.
//!
//! Exit codes: 0 success, 1 a mathematical check failed (the report carries
//! a witness), 2 usage or input error.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dglie_core::suite::DEFAULT_SEED;
use dglie_core::Error;

#[derive(Parser, Debug)]
#[command(name = "dglie", version, about = "Exact DG Lie algebra and L-infinity computations")]
pub struct Cli {
    /// Number of variables (inferred from the expressions when omitted).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Truncation: polynomial degree bound for hkr-report, nilpotency order
    /// of Q[hbar]/(hbar^N) for kontsevich-check.
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Check order: word order for L-infinity checks, operator order for
    /// hkr-report, arity for kontsevich-check.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Word-order cap for coalgebra elements.
    #[arg(long = "word-cap", global = true)]
    pub word_cap: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Permit twisting by an element that is not Maurer-Cartan.
    #[arg(long = "allow-non-mc", global = true)]
    pub allow_non_mc: bool,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

/// Instance arguments are a path, `-` for stdin, or inline JSON.
#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Schouten bracket of two poly vector fields.
    Schouten {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Wedge product of two poly vector fields.
    Wedge {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Gerstenhaber bracket of two poly differential operators.
    Gerstenhaber {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Hochschild differential of a poly differential operator.
    Hochschild {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Applies a poly differential operator to functions.
    Apply {
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// The HKR map of a poly vector field.
    U1 {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Exponential of the instance's `omega`.
    Exp { instance: String },
    /// Logarithm of the instance's `omega` (a group-like element).
    Ln { instance: String },
    /// Maurer-Cartan residue of `omega`.
    McCheck { instance: String },
    /// Pushes `omega` forward along the morphism.
    McPush { instance: String },
    /// The twisted coderivation (and morphism, if given).
    Twist { instance: String },
    /// Checks the twisted structures.
    TwistCheck { instance: String },
    /// Checks the algebra and morphism identities.
    LinfCheck { instance: String },
    /// Extends a morphism over Q to the coefficients in `extend_over`.
    Extend { instance: String },
    /// Truncated Hochschild cohomology ranks against poly vector field slices.
    HkrReport {
        #[arg(long = "p-min", default_value_t = -1, allow_hyphen_values = true)]
        p_min: i32,
        #[arg(long = "p-max", default_value_t = 1, allow_hyphen_values = true)]
        p_max: i32,
    },
    /// Formality conditions of the U1-only plugin, or with a bivector the
    /// Maurer-Cartan workflow over Q[hbar]/(hbar^N).
    KontsevichCheck {
        #[arg(allow_hyphen_values = true)]
        bivector: Option<String>,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Runs the randomized verification suite.
    Selftest,
}

/// What a verb produced: a report and whether its checks passed.
pub struct Outcome {
    pub report: serde_json::Value,
    pub passed: bool,
}

impl Outcome {
    pub fn ok(report: serde_json::Value) -> Self {
        Outcome { report, passed: true }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Axiom { .. } | Error::NotMaurerCartan(_) | Error::NotPoisson => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", render::render(&out.report, cli.format));
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            let code = exit_code(&e);
            if code == 1 {
                let report = serde_json::json!({ "passed": false, "witness": e.to_string() });
                print!("{}", render::render(&report, cli.format));
            }
            eprintln!("dglie: {e}");
            ExitCode::from(code)
        }
    }
}
