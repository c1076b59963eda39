//! Compile source programs to the mu/mu-tilde machine under both calling
//! disciplines and compare the shapes.
//!
//! Call-by-name translates an application by naming its context; call-by-value
//! additionally routes positive-typed arguments through a mu-tilde binder so
//! the machine computes them to a value first. Arguments at function types
//! have nothing to force, so both disciplines leave them in the frame.
//!
//! ```bash
//! cargo run -p realizer --example compile_to_machine
//! ```

use realizer::compile::{compile_cbn, compile_cbv, free_covars};
use realizer::parse::parse_program;
use realizer::render::mterm_to_string;

fn main() {
    let programs = [
        "fun x : nat . x",
        "(fun x : nat . x) 3",
        "inj1{nat+unit} 3",
        "inj1{nat+unit} ((fun x : nat . x) 3)",
        "(fun f : nat -> nat . f 1) (fun y : nat . y)",
        "case inj2{nat+nat} 8 of { inj1 x -> x | inj2 y -> y }",
    ];

    for src in programs {
        let term = parse_program(src).expect("example programs parse");
        let cbn = compile_cbn(&term);
        let cbv = compile_cbv(&term);
        println!("source : {src}");
        println!("  cbn  : {}", mterm_to_string(&cbn));
        println!("  cbv  : {}", mterm_to_string(&cbv));
        assert!(free_covars(&cbn).is_empty());
        assert!(free_covars(&cbv).is_empty());
        println!();
    }
    println!("every compiled image above is closed in its co-variables");
}
