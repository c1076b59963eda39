//! Run the abstract machine and watch the labelled reduction trace.
//!
//! A configuration pairs a producer with a consumer; the four rules fire
//! depending on which side is a binder. Well-typed programs always end in a
//! normal configuration, but the machine also classifies ill-formed cuts as
//! stuck instead of erroring out.
//!
//! ```bash
//! cargo run -p realizer --example run_machine
//! ```

use realizer::compile::compile_cbn;
use realizer::machine::{run, MConfig, MCoterm, MTerm, RunOutcome, DEFAULT_FUEL};
use realizer::parse::parse_program;
use realizer::render::trace_to_string;
use realizer::Side;

fn main() {
    let src = "(case inj1{unit+unit} () of \
                 { inj1 x1 -> fun y : nat . 0 | inj2 x2 -> fun y : nat . 1 }) 3";
    println!("source: {src}\n");

    let term = parse_program(src).expect("program parses");
    let initial = MConfig::new(compile_cbn(&term), MCoterm::covar(0));
    match run(&initial, DEFAULT_FUEL) {
        RunOutcome::Normalized(trace) => {
            println!("{}", trace_to_string(&trace));
            println!("\nnormalized in {} steps", trace.len());
        }
        other => panic!("unexpected outcome: {other:?}"),
    }

    // An ill-formed cut: a constructor meeting an application frame.
    let stuck = MConfig::new(
        MTerm::inj(Side::One, MTerm::nat(3)),
        MCoterm::cons(MTerm::nat(2), MCoterm::covar(0)),
    );
    match run(&stuck, DEFAULT_FUEL) {
        RunOutcome::Stuck { reason, .. } => println!("\nill-formed cut is stuck: {reason}"),
        other => panic!("expected stuckness: {other:?}"),
    }
}
