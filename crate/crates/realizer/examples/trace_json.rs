//! Traces as machine-checkable certificates.
//!
//! A trace serializes to JSON, travels, and is re-checked elsewhere without
//! trusting its producer: the checker replays every step against the
//! machine. Forging any part of it — a rule label, an intermediate
//! configuration — is caught at the first bad link.
//!
//! ```bash
//! cargo run -p realizer --example trace_json
//! ```

use realizer::eval::Strategy;
use realizer::json::{decode_trace, encode_trace};
use realizer::machine::{check_trace, MConfig, MTerm, TraceCheck};
use realizer::parse::parse_program;
use realizer::realize::normalize_trace;

fn main() {
    let term = parse_program("(fun x : nat . x) 3").unwrap();
    let trace = normalize_trace(&term, Strategy::Cbv).unwrap();

    let text = encode_trace(&trace);
    println!("{text}\n");

    let back = decode_trace(&text).expect("traces round-trip");
    assert_eq!(back, trace);
    assert_eq!(check_trace(&back), TraceCheck::Valid);
    println!("decoded trace re-checks: valid");

    // Forge the final configuration and watch the checker object.
    let mut forged = back.clone();
    forged.final_config = MConfig::new(MTerm::nat(4), forged.final_config.coterm.clone());
    if let Some(last) = forged.steps.last_mut() {
        last.next = forged.final_config.clone();
    }
    match check_trace(&forged) {
        TraceCheck::Invalid { position, reason } => {
            println!("forged trace rejected at step {position}: {reason}");
        }
        TraceCheck::Valid => unreachable!("forgery accepted"),
    }
}
