//! Normalize through the witness-passing evaluator.
//!
//! Every well-typed term is mapped to a truth witness of its type. Cutting
//! that witness against the falsity witness carried by the top-level
//! co-variable produces a pole element: under the trace pole, a complete
//! reduction sequence assembled by anti-reduction, each step checked against
//! the machine as it is recorded. No machine execution happens here — the
//! trace falls out of the witness structure — yet it is exactly the
//! reduction the machine would take.
//!
//! ```bash
//! cargo run -p realizer --example normalize_by_witness
//! ```

use realizer::eval::Strategy;
use realizer::machine::{check_trace, TraceCheck};
use realizer::parse::parse_program;
use realizer::realize::normalize_trace;
use realizer::render::trace_to_string;

fn main() {
    let src = "case (case inj1{unit+unit} () of \
                 { inj1 y1 -> inj2{unit + (unit + unit)} (inj2{unit+unit} y1) \
                 | inj2 y2 -> inj2{unit + (unit + unit)} (inj1{unit+unit} y2) }) of \
               { inj1 x1 -> 0 | inj2 x2 -> 1 }";
    println!("source: {src}\n");

    let term = parse_program(src).expect("program parses");
    let trace = normalize_trace(&term, Strategy::Cbn).expect("positive observable type");

    println!("{}", trace_to_string(&trace));
    println!("\n{} steps, rules: {:?}", trace.len(), trace.rules());
    assert_eq!(check_trace(&trace), TraceCheck::Valid);
    println!("the trace re-checks against the machine: valid");
}
