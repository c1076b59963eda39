//! The reference evaluator, and why it is worth keeping around.
//!
//! The big-step evaluator shares no code with the machine or the
//! witness-passing path, which makes it an independent oracle: all three
//! must land on the same observable. This example triangulates a few
//! programs, including one where the strategies take different routes to
//! the same answer.
//!
//! ```bash
//! cargo run -p realizer --example reference_oracle
//! ```

use realizer::ast::Term;
use realizer::eval::{eval_reference, Strategy, DEFAULT_FUEL};
use realizer::parse::parse_program;
use realizer::realize::normalize_integer;
use realizer::render::term_to_string;

fn main() {
    let programs = [
        "(fun x : nat . x) 3",
        "(fun x : nat . 0) ((fun y : nat . y) 1)",
        "if (if true then false else true) then 1 else 2",
        "(fun f : nat -> nat . fun x : nat . f (f x)) (fun y : nat . y) 5",
    ];

    for src in programs {
        let term = parse_program(src).unwrap();
        for strategy in [Strategy::Cbn, Strategy::Cbv] {
            let value = eval_reference(&term, strategy, DEFAULT_FUEL).unwrap();
            let realized = normalize_integer(&term, strategy).unwrap();
            match &value {
                Term::NatLit(n) => assert_eq!(*n, realized),
                other => panic!("nat program evaluated to {other}"),
            }
            println!(
                "{src}  [{strategy}]  oracle = {}, witness path = {realized}",
                term_to_string(&value)
            );
        }
    }
    println!("\nthe oracle and the witness-passing path agree everywhere above");
}
