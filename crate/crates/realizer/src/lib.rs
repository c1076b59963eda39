//! Weak normalization of the simply-typed lambda-calculus with sums, sums
//! and all, run three ways that must agree:
//!
//! * a reference big-step evaluator ([`eval`]);
//! * compilation to a mu/mu-tilde abstract machine ([`compile`], [`machine`])
//!   whose deterministic small-step reduction produces a labelled trace;
//! * a witness-passing evaluator ([`realize`]) that assigns every well-typed
//!   term a proof-relevant witness of its type and reads a verified
//!   reduction trace out of the witness, one anti-reduction step at a time.
//!
//! The third path is the point: its trace is checked against the machine at
//! every construction step, so agreement with direct machine execution is
//! not an accident of testing but a property the evaluator enforces as it
//! runs. See the `examples/` directory for one runnable demonstration per
//! capability, and the `acceptance` test suite for the full battery of
//! agreement checks.

pub mod ast;
pub mod cli;
pub mod compile;
pub mod eval;
pub mod fuzz;
pub mod json;
pub mod kam;
pub mod machine;
pub mod parse;
pub mod realize;
pub mod render;
pub mod typecheck;

pub use ast::{polarity, Polarity, Side, Term, Type};
pub use eval::{eval_reference, Strategy};
pub use machine::{check_trace, is_normal, run, step, MConfig, MCoterm, MTerm, Rule, Trace};
pub use parse::{parse_program, ParseError};
pub use realize::{normalize_integer, normalize_trace, NormalizeError};
pub use typecheck::{typecheck, Context, TypeError};
