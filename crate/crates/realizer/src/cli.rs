//! Batch command-line driver.
//!
//! Exit codes: 0 success; 1 parse or type error (and input problems);
//! 2 stuck machine or exhausted fuel; 3 invalid trace or trace mismatch;
//! 4 unsupported request (negative observable type, or the nat pole at a
//! non-nat type). Results go to stdout, diagnostics to stderr.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ast::Term;
use crate::eval::Strategy;
use crate::machine::{self, MConfig, MCoterm, RunOutcome, TraceCheck, Trace};
use crate::realize::{self, NormalizeError};
use crate::{compile, json, parse, render, typecheck};

#[derive(Debug, Parser)]
#[command(
    name = "realizer",
    about = "Normalize simply-typed lambda-terms three ways: reference evaluation, \
             abstract-machine execution, and witness-passing realizability",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type-check a program and print its type.
    Check(CommonArgs),
    /// Compile a program to the abstract machine and print the result.
    Compile(CommonArgs),
    /// Compile, then run the machine against the top co-variable and print
    /// the trace.
    Run(CommonArgs),
    /// Normalize through the witness-passing evaluator and print the trace
    /// (or the integer, under `--pole nat`).
    Normalize(CommonArgs),
    /// Re-check a trace JSON file; exit 0 exactly when it is valid.
    Verify(CommonArgs),
    /// Run both the machine and the witness-passing paths and compare their
    /// traces step for step.
    Compare(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Cbn,
    Cbv,
}

impl From<VariantArg> for Strategy {
    fn from(v: VariantArg) -> Strategy {
        match v {
            VariantArg::Cbn => Strategy::Cbn,
            VariantArg::Cbv => Strategy::Cbv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PoleArg {
    /// Full machine configurations: the result is a reduction trace.
    Trace,
    /// Bare integers: the result is the final literal (nat programs only).
    Nat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmitArg {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Inline expression to process.
    #[arg(short = 'e', long = "expr")]
    pub expr: Option<String>,

    /// Input file: an `.stlc` source program, or a trace JSON for `verify`.
    pub file: Option<PathBuf>,

    /// Evaluation discipline.
    #[arg(long, value_enum, default_value_t = VariantArg::Cbn)]
    pub variant: VariantArg,

    /// Pole instantiation for `normalize`.
    #[arg(long, value_enum, default_value_t = PoleArg::Trace)]
    pub pole: PoleArg,

    /// Step budget for machine execution.
    #[arg(long, default_value_t = machine::DEFAULT_FUEL)]
    pub fuel: u64,

    /// Output format.
    #[arg(long, value_enum, default_value_t = EmitArg::Text)]
    pub emit: EmitArg,
}

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_STUCK: i32 = 2;
const EXIT_MISMATCH: i32 = 3;
const EXIT_UNSUPPORTED: i32 = 4;

pub fn dispatch(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Check(args) => with_typed_program(args, |_, ty| {
            println!("{}", render::type_to_string(&ty));
            EXIT_OK
        }),
        Command::Compile(args) => with_typed_program(args, |t, _| {
            let compiled = compile::compile(args.variant.into(), &t);
            match args.emit {
                EmitArg::Text => println!("{}", render::mterm_to_string(&compiled)),
                EmitArg::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&compiled).expect("machine terms serialize")
                ),
            }
            EXIT_OK
        }),
        Command::Run(args) => with_typed_program(args, |t, _| {
            let compiled = compile::compile(args.variant.into(), &t);
            let initial = MConfig::new(compiled, MCoterm::covar(0));
            match machine::run(&initial, args.fuel) {
                RunOutcome::Normalized(tr) => {
                    emit_trace(&tr, args.emit);
                    EXIT_OK
                }
                RunOutcome::Stuck { reason, partial } => {
                    eprintln!("machine stuck after {} steps: {reason}", partial.len());
                    eprintln!("{}", render::trace_to_string(&partial));
                    EXIT_STUCK
                }
                RunOutcome::FuelExhausted { partial } => {
                    eprintln!("fuel exhausted after {} steps", partial.len());
                    EXIT_STUCK
                }
            }
        }),
        Command::Normalize(args) => with_typed_program(args, |t, _| match args.pole {
            PoleArg::Trace => match realize::normalize_trace(&t, args.variant.into()) {
                Ok(tr) => {
                    emit_trace(&tr, args.emit);
                    EXIT_OK
                }
                Err(e) => normalize_failure(&e),
            },
            PoleArg::Nat => match realize::normalize_integer(&t, args.variant.into()) {
                Ok(n) => {
                    println!("{n}");
                    EXIT_OK
                }
                Err(e) => normalize_failure(&e),
            },
        }),
        Command::Verify(args) => {
            let text = match load_input(args) {
                Ok(text) => text,
                Err(code) => return code,
            };
            let trace = match json::decode_trace(&text) {
                Ok(tr) => tr,
                Err(e) => {
                    eprintln!("could not decode trace JSON: {e}");
                    return EXIT_INPUT;
                }
            };
            match machine::check_trace(&trace) {
                TraceCheck::Valid => {
                    println!("trace valid ({} steps)", trace.len());
                    EXIT_OK
                }
                TraceCheck::Invalid { position, reason } => {
                    eprintln!("trace invalid at step {position}: {reason}");
                    EXIT_MISMATCH
                }
            }
        }
        Command::Compare(args) => with_typed_program(args, |t, _| {
            let strategy: Strategy = args.variant.into();
            let realizability_trace = match realize::normalize_trace(&t, strategy) {
                Ok(tr) => tr,
                Err(e) => return normalize_failure(&e),
            };
            let compiled = compile::compile(strategy, &t);
            let machine_trace = match machine::run(&MConfig::new(compiled, MCoterm::covar(0)), args.fuel)
            {
                RunOutcome::Normalized(tr) => tr,
                RunOutcome::Stuck { reason, .. } => {
                    eprintln!("machine stuck: {reason}");
                    return EXIT_STUCK;
                }
                RunOutcome::FuelExhausted { .. } => {
                    eprintln!("machine fuel exhausted");
                    return EXIT_STUCK;
                }
            };
            if realizability_trace == machine_trace {
                println!("traces identical ({} steps)", machine_trace.len());
                EXIT_OK
            } else {
                eprintln!("trace mismatch");
                eprintln!("-- witness-passing path --");
                eprintln!("{}", render::trace_to_string(&realizability_trace));
                eprintln!("-- machine path --");
                eprintln!("{}", render::trace_to_string(&machine_trace));
                EXIT_MISMATCH
            }
        }),
    }
}

fn emit_trace(tr: &Trace, emit: EmitArg) {
    match emit {
        EmitArg::Text => println!("{}", render::trace_to_string(tr)),
        EmitArg::Json => println!("{}", json::encode_trace(tr)),
    }
}

fn normalize_failure(e: &NormalizeError) -> i32 {
    eprintln!("{e}");
    match e {
        NormalizeError::IllTyped(_) => EXIT_INPUT,
        NormalizeError::NegativeObservable(_) | NormalizeError::IntegerPoleNeedsNat(_) => {
            EXIT_UNSUPPORTED
        }
    }
}

fn load_input(args: &CommonArgs) -> Result<String, i32> {
    match (&args.expr, &args.file) {
        (Some(_), Some(_)) => {
            eprintln!("give either an inline expression or a file, not both");
            Err(EXIT_INPUT)
        }
        (Some(expr), None) => Ok(expr.clone()),
        (None, Some(path)) => fs::read_to_string(path).map_err(|e| {
            eprintln!("could not read {}: {e}", path.display());
            EXIT_INPUT
        }),
        (None, None) => {
            eprintln!("no input: pass -e <expr> or a file path");
            Err(EXIT_INPUT)
        }
    }
}

fn with_typed_program(args: &CommonArgs, k: impl FnOnce(Term, crate::ast::Type) -> i32) -> i32 {
    let source = match load_input(args) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let term = match parse::parse_program(&source) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_INPUT;
        }
    };
    let ty = match typecheck::typecheck(&typecheck::Context::empty(), &term) {
        Ok(ty) => ty,
        Err(e) => {
            eprintln!("type error: {e}");
            return EXIT_INPUT;
        }
    };
    k(term, ty)
}
