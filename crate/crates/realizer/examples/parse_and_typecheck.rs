//! Parse surface programs and compute their types.
//!
//! ```bash
//! cargo run -p realizer --example parse_and_typecheck
//! ```

use realizer::parse::parse_program;
use realizer::render::{term_to_string, type_to_string};
use realizer::typecheck::{typecheck, Context};

fn main() {
    let programs = [
        "fun x : nat . x",
        "case inj1{nat+unit} 3 of { inj1 x -> x | inj2 y -> 0 }",
        "if true then 4 else 7",
        "(fun f : nat -> nat . f 1) (fun y : nat . y)",
    ];

    for src in programs {
        let term = parse_program(src).expect("example programs parse");
        let ty = typecheck(&Context::empty(), &term).expect("example programs type-check");
        println!("source : {src}");
        println!("parsed : {}", term_to_string(&term));
        println!("type   : {}\n", type_to_string(&ty));
    }

    // Errors carry positions and expectations.
    match parse_program("fun x : . x") {
        Err(e) => println!("parse error demo : {e}"),
        Ok(_) => unreachable!(),
    }
    let bad = parse_program("3 3").unwrap();
    match typecheck(&Context::empty(), &bad) {
        Err(e) => println!("type error demo  : {e}"),
        Ok(_) => unreachable!(),
    }
}
