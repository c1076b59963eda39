//! The two pole instantiations agree.
//!
//! The witness-passing evaluator is parametric in the pole. Under the trace
//! pole it returns the reduction sequence; under the integer pole every
//! anti-reduction step is the identity and only the literal observed at the
//! co-variable survives. Projecting the trace's final configuration must
//! give the same number, and both must match the reference evaluator.
//!
//! ```bash
//! cargo run -p realizer --example integer_pole
//! ```

use realizer::ast::Term;
use realizer::eval::{eval_reference, Strategy, DEFAULT_FUEL};
use realizer::parse::parse_program;
use realizer::realize::{extract_nat, normalize_integer, normalize_trace};

fn main() {
    let programs = [
        "if true then 4 else 7",
        "(fun x : nat . x) 3",
        "(fun f : nat -> nat . f (f 2)) (fun y : nat . y)",
        "case inj2{unit+nat} 9 of { inj1 u -> 0 | inj2 n -> n }",
    ];

    for src in programs {
        let term = parse_program(src).expect("program parses");
        for strategy in [Strategy::Cbn, Strategy::Cbv] {
            let direct = normalize_integer(&term, strategy).expect("nat program");
            let trace = normalize_trace(&term, strategy).expect("nat program");
            let projected = extract_nat(&trace).expect("final config is a literal");
            let oracle = match eval_reference(&term, strategy, DEFAULT_FUEL).unwrap() {
                Term::NatLit(n) => n,
                other => panic!("oracle returned a non-literal: {other}"),
            };
            assert_eq!(direct, projected);
            assert_eq!(direct, oracle);
            println!(
                "{src}  [{strategy}]  integer pole = {direct}, trace pole ends at the same \
                 literal in {} steps",
                trace.len()
            );
        }
    }
}
