//! The central agreement: the witness-passing evaluator's trace equals
//! direct machine execution, step for step, rule for rule.
//!
//! The machine is deterministic, so a valid trace from a configuration is
//! forced to be the machine's own run. The witness-passing path earns
//! validity by construction — its anti-reduction steps are checked as they
//! are recorded — so agreement holds on every program, not just the ones a
//! test happens to pick. This example re-verifies it on a fresh random
//! corpus anyway.
//!
//! ```bash
//! cargo run -p realizer --example compare_paths
//! ```

use realizer::compile::compile;
use realizer::eval::Strategy;
use realizer::fuzz::TermGen;
use realizer::machine::{run, MConfig, MCoterm, DEFAULT_FUEL};
use realizer::realize::normalize_trace;

fn main() {
    let mut gen = TermGen::new(rand_seed());
    let mut longest = 0;
    for i in 0..200 {
        let (term, _) = gen.gen_closed_positive(3 + i % 4);
        for strategy in [Strategy::Cbn, Strategy::Cbv] {
            let witness_trace = normalize_trace(&term, strategy).expect("positive type");
            let machine_trace = run(
                &MConfig::new(compile(strategy, &term), MCoterm::covar(0)),
                DEFAULT_FUEL,
            )
            .into_normalized()
            .expect("well-typed programs normalize");
            assert_eq!(witness_trace, machine_trace, "disagreement on {term}");
            longest = longest.max(machine_trace.len());
        }
    }
    println!("400 runs over 200 random programs: traces identical on every one");
    println!("longest trace seen: {longest} steps");
}

fn rand_seed() -> u64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0)
}
