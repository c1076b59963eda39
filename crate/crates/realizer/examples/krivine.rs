//! The Krivine machine on the arrow-only fragment.
//!
//! The classic demonstration: a function that discards its argument never
//! evaluates it, so applying `\y. \x. x` to the self-application combinator
//! terminates in two steps even though the argument loops forever on its own.
//!
//! ```bash
//! cargo run -p realizer --example krivine
//! ```

use realizer::kam::{kam_run, KConfig, KTerm, KamRule};

fn main() {
    let id = KTerm::lam(KTerm::Var(0));
    let omega = KTerm::lam(KTerm::app(KTerm::Var(0), KTerm::Var(0)));

    let program = KTerm::app(KTerm::lam(id.clone()), omega.clone());
    let out = kam_run(&KConfig::load(program), 1_000);
    println!("running  (\\y. \\x. x) omega  against the empty stack:");
    for (i, rule) in out.rules.iter().enumerate() {
        let name = match rule {
            KamRule::Push => "(1) push the argument",
            KamRule::Grab => "(2) grab it and substitute",
        };
        println!("  step {}: {name}", i + 1);
    }
    println!("final term is the identity: {}", out.final_config.term == id);
    assert_eq!(out.rules, vec![KamRule::Push, KamRule::Grab]);

    // The same argument run on its own never stops.
    let loops = kam_run(&KConfig::load(KTerm::app(omega.clone(), omega)), 1_000);
    println!(
        "omega omega on its own exhausts {} steps of fuel: {}",
        1_000, loops.fuel_exhausted
    );
}
