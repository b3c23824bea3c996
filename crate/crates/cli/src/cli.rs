use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use goursat_core::antideriv::verify_text;
use goursat_core::expr::Exponent;
use goursat_core::pipeline::parse_spec;
use serde_json::json;

use crate::{error_code, exit_code, report_json, report_text, run_one, EXIT_ELEMENTARY, EXIT_OBSTRUCTED, EXIT_PARSE};

#[derive(Debug, Parser)]
#[command(name = "goursat", version, about = "Decide and compute elementary integrals of F(t)/R(t)^p for p = 1/2, 1/3, 2/3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the integral and print the reductions or the obstruction.
    Diagnose(Input),
    /// Diagnose, integrate the elementary part and verify it.
    Integrate {
        #[command(flatten)]
        input: Input,
        /// Fold conjugate logarithms into arctangents.
        #[arg(long)]
        real_form: bool,
    },
    /// Check a claimed antiderivative by differentiation.
    Verify {
        /// The claimed antiderivative.
        #[arg(long)]
        antiderivative: String,
        #[arg(long)]
        integrand: String,
        #[arg(long, default_value = "t")]
        var: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    #[arg(long, required_unless_present = "batch", conflicts_with = "batch")]
    pub integrand: Option<String>,
    #[arg(long, default_value = "t")]
    pub var: String,
    /// 1/2, 1/3 or 2/3; inferred from the integrand when omitted.
    #[arg(long, value_parser = parse_exponent)]
    pub exponent: Option<Exponent>,
    #[arg(long)]
    pub json: bool,
    /// File with one integrand per line.
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

fn parse_exponent(s: &str) -> Result<Exponent, String> {
    Exponent::parse(s).map_err(|e| e.to_string())
}

/// Executes a parsed command, writing to `out` and `err`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match &cli.command {
        Command::Diagnose(input) => run_input(input, false, false, out, err),
        Command::Integrate { input, real_form } => run_input(input, true, *real_form, out, err),
        Command::Verify { antiderivative, integrand, var, json } => run_verify(antiderivative, integrand, var, *json, out, err),
    }
}

fn run_input(input: &Input, integrate: bool, real_form: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let lines: Vec<String> = match (&input.batch, &input.integrand) {
        (Some(path), _) => match std::fs::read_to_string(path) {
            Ok(s) => s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect(),
            Err(e) => {
                let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
                return EXIT_PARSE;
            }
        },
        (None, Some(t)) => vec![t.clone()],
        (None, None) => unreachable!("clap requires --integrand or --batch"),
    };
    let batch = input.batch.is_some();
    let mut code = EXIT_ELEMENTARY;
    for (i, line) in lines.iter().enumerate() {
        let c = match run_one(line, &input.var, input.exponent, integrate, real_form) {
            Ok(report) => {
                if input.json {
                    let mut v = report_json(&report);
                    if batch {
                        v["input"] = json!(line);
                    }
                    let _ = writeln!(out, "{v}");
                } else {
                    if batch && i > 0 {
                        let _ = writeln!(out);
                    }
                    let _ = write!(out, "{}", report_text(&report));
                }
                exit_code(&report)
            }
            Err(e) => {
                let c = error_code(&e);
                if input.json {
                    let _ = writeln!(out, "{}", json!({"input": line, "error": e.to_string()}));
                } else {
                    let _ = writeln!(err, "error: {line}: {e}");
                }
                c
            }
        };
        code = code.max(c);
    }
    code
}

fn run_verify(antiderivative: &str, integrand: &str, var: &str, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let report = parse_spec(integrand, var, None).and_then(|spec| verify_text(antiderivative, &spec));
    match report {
        Ok(r) => {
            if json {
                let _ = writeln!(out, "{}", json!({"verified": r.verified, "discrepancy": r.discrepancy_text}));
            } else {
                let _ = writeln!(out, "verified: {}", r.verified);
                if !r.verified {
                    let _ = writeln!(out, "discrepancy: {}", r.discrepancy_text);
                }
            }
            if r.verified {
                EXIT_ELEMENTARY
            } else {
                EXIT_OBSTRUCTED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}
