//! Where the calling disciplines visibly differ.
//!
//! `(fun x : nat . 0) ((fun y : nat . y) 1)` throws its argument away.
//! Call-by-name never evaluates it: two steps. Call-by-value computes it to
//! a literal and binds it through a mu-tilde binder before the function ever
//! runs: six steps, two of them mu-tilde. Both agree on the answer.
//!
//! ```bash
//! cargo run -p realizer --example cbn_vs_cbv
//! ```

use realizer::eval::Strategy;
use realizer::machine::Rule;
use realizer::parse::parse_program;
use realizer::realize::{normalize_integer, normalize_trace};
use realizer::render::trace_to_string;

fn main() {
    let src = "(fun x : nat . 0) ((fun y : nat . y) 1)";
    println!("source: {src}\n");
    let term = parse_program(src).expect("program parses");

    for strategy in [Strategy::Cbn, Strategy::Cbv] {
        let trace = normalize_trace(&term, strategy).unwrap();
        let mu_tildes = trace.rules().iter().filter(|r| **r == Rule::MuTilde).count();
        println!("--- {strategy}: {} steps, {} mu-tilde ---", trace.len(), mu_tildes);
        println!("{}\n", trace_to_string(&trace));
    }

    let cbn = normalize_trace(&term, Strategy::Cbn).unwrap();
    let cbv = normalize_trace(&term, Strategy::Cbv).unwrap();
    assert!(cbv.len() > cbn.len());
    assert!(cbv.rules().contains(&Rule::MuTilde));
    assert!(!cbn.rules().contains(&Rule::MuTilde));
    assert_eq!(
        normalize_integer(&term, Strategy::Cbn).unwrap(),
        normalize_integer(&term, Strategy::Cbv).unwrap()
    );
    println!("same observable answer, visibly different evaluation order");
}
