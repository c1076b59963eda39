//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! The corpus is shared: a hand-written set of closed programs at positive
//! observable types plus several hundred seeded, type-directed random terms
//! (depth at most 6). Every criterion that quantifies over "the corpus" runs
//! over all of it, under both calling disciplines where applicable.

use std::sync::OnceLock;

use realizer::ast::{polarity, Polarity, Side, Term, Type};
use realizer::compile::{compile, compile_cbn, compile_cbv, contains_mu_tilde, free_covars};
use realizer::eval::{eval_reference, Strategy, DEFAULT_FUEL};
use realizer::fuzz::TermGen;
use realizer::kam::{kam_run, KConfig, KTerm, KamRule};
use realizer::machine::{
    check_trace, run, step, MConfig, MCoterm, MTerm, Rule, RunOutcome, Step, TraceCheck,
};
use realizer::parse::parse_program;
use realizer::realize::{extract_nat, extract_sum_side, normalize_integer, normalize_trace};
use realizer::typecheck::{typecheck, Context};

const STRATEGIES: [Strategy; 2] = [Strategy::Cbn, Strategy::Cbv];

fn top() -> MCoterm {
    MCoterm::covar(0)
}

fn parse(src: &str) -> Term {
    parse_program(src).unwrap_or_else(|e| panic!("corpus program does not parse: {src}: {e}"))
}

/// The term from the introduction: nested case analysis whose inner redex
/// creates a redex at a larger sum type.
fn nested_case_source() -> &'static str {
    "case (case inj1{unit+unit} () of \
       { inj1 y1 -> inj2{unit + (unit + unit)} (inj2{unit+unit} y1) \
       | inj2 y2 -> inj2{unit + (unit + unit)} (inj1{unit+unit} y2) }) of \
     { inj1 x1 -> 0 | inj2 x2 -> 1 }"
}

fn handwritten_sources() -> Vec<&'static str> {
    vec![
        "3",
        "0",
        "(fun x : nat . x) 3",
        "if true then 4 else 7",
        "if false then 4 else 7",
        "case inj1{nat+unit} 3 of { inj1 x -> x | inj2 y -> 0 }",
        "case inj2{nat+nat} 8 of { inj1 x -> x | inj2 y -> y }",
        nested_case_source(),
        "(fun x : nat . 0) ((fun y : nat . y) 1)",
        "(fun f : nat -> nat . f 1) (fun y : nat . y)",
        "(fun f : nat -> nat . f 1) ((fun g : nat -> nat . g) (fun y : nat . y))",
        "(fun f : (nat -> nat) -> nat . f (fun x : nat . x)) (fun g : nat -> nat . g 5)",
        "inj1{nat+unit} 3",
        "inj2{(nat -> nat) + nat} ((fun x : nat . x) 9)",
        "inj1{(nat -> nat) + nat} (fun x : nat . x)",
        "true",
        "false",
        "if (if true then false else true) then 1 else 2",
        "(fun a : bool . fun b : bool . if a then b else false) true true",
        "case inj2{unit + (nat + unit)} (inj1{nat+unit} 5) of \
           { inj1 u -> 9 | inj2 s -> case s of { inj1 n -> n | inj2 v -> 0 } }",
        "(fun x : unit . 3) ()",
        "(fun x : unit . 7) ((fun u : unit . u) ())",
        "(fun f : nat -> nat . fun x : nat . f (f x)) (fun y : nat . y) 5",
        "(fun b : bool . if b then 0 else 1) false",
        "case (if true then inj1{nat+bool} 7 else inj2{nat+bool} false) of \
           { inj1 n -> n | inj2 b -> if b then 1 else 2 }",
        "(fun p : nat + (unit + unit) . case p of \
           { inj1 n -> n | inj2 b -> case b of { inj1 u -> 100 | inj2 u -> 200 } }) \
         (inj2{nat + (unit + unit)} (inj1{unit+unit} ()))",
        "(fun f : bool -> nat . f true) (fun b : bool . if b then 10 else 20)",
        "(fun g : (nat -> nat) -> nat -> nat . g (fun x : nat . x) 3) (fun h : nat -> nat . h)",
        "(fun u : unit . true) ()",
        "case inj1{(nat -> nat) + nat} (fun x : nat . x) of { inj1 f -> f 4 | inj2 n -> n }",
        "(fun x : nat . (fun y : nat . x) 0) 5",
        "(fun s : nat + nat . case s of { inj1 a -> a | inj2 b -> b }) \
         (inj1{nat+nat} ((fun z : nat . z) 6))",
        "(fun f : nat -> nat . fun g : nat -> nat . f (g 1)) (fun a : nat . a) (fun b : nat . b)",
        "if true then inj1{unit+unit} () else inj2{unit+unit} ()",
        "(fun c : bool . c) true",
        "inj1{(unit + unit) + nat} ((fun b : bool . b) false)",
    ]
}

/// The shared corpus: every handwritten program plus 520 fuzzed ones at
/// depths 3 through 6 and 120 fuzzed boolean programs.
fn corpus() -> &'static Vec<Term> {
    static CORPUS: OnceLock<Vec<Term>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut all: Vec<Term> = handwritten_sources().iter().map(|s| parse(s)).collect();
        assert!(all.len() >= 30, "need at least 30 hand-written programs");

        let mut gen = TermGen::new(0x5eed_2024);
        for i in 0..520 {
            let depth = 3 + (i % 4);
            let (t, _) = gen.gen_closed_positive(depth);
            all.push(t);
        }
        let mut bool_gen = TermGen::new(0xb001);
        for i in 0..120 {
            let depth = 2 + (i % 4);
            all.push(bool_gen.gen_term(&Context::empty(), &Type::bool(), depth));
        }

        for t in &all {
            let ty = typecheck(&Context::empty(), t)
                .unwrap_or_else(|e| panic!("corpus term is ill-typed: {e}"));
            assert_eq!(polarity(&ty), Polarity::Positive, "corpus term at negative type");
        }
        all
    })
}

#[test]
fn criterion_01_kam_discards_a_diverging_argument_in_two_steps() {
    // < (\y. \x. x) omega | * >  -->(1) -->(2)  < \x. x | * >
    let omega = KTerm::lam(KTerm::app(KTerm::Var(0), KTerm::Var(0)));
    let k = KTerm::lam(KTerm::lam(KTerm::Var(0)));
    let initial = KConfig::load(KTerm::app(k, omega));
    let out = kam_run(&initial, 1_000);
    assert_eq!(out.rules, vec![KamRule::Push, KamRule::Grab], "rules (1) then (2)");
    assert_eq!(out.step_count(), 2);
    assert_eq!(out.final_config, KConfig::load(KTerm::lam(KTerm::Var(0))));
    assert!(!out.fuel_exhausted);
    println!("[PASS] criterion 1: KAM reaches < \\x. x | * > in exactly 2 steps, rules (1);(2)");
}

#[test]
fn criterion_02_commuting_conversion_reduces_without_a_hurdle() {
    // (case z of { inj1 x1 -> \y. t1 | inj2 x2 -> \y. t2 }) u
    // with closed instances z = inj1{unit+unit} (), t1 = 0, t2 = 1, u = 3.
    let src = "(case inj1{unit+unit} () of \
                 { inj1 x1 -> fun y : nat . 0 | inj2 x2 -> fun y : nat . 1 }) 3";
    let t = parse(src);
    let tr = run(&MConfig::new(compile_cbn(&t), top()), DEFAULT_FUEL)
        .into_normalized()
        .expect("the example normalizes");

    // One ambient mu step for the application wrapper, then the mu step that
    // pushes the application frame under the case, then the dispatch and the
    // taken branch's mu-cons step.
    assert_eq!(
        tr.rules(),
        vec![Rule::Mu, Rule::Mu, Rule::MuTildeSum, Rule::MuCons]
    );

    // After the second mu step the machine sits at the dispatch shape: the
    // application frame `3 . alpha0` has moved inside both branches without
    // any commuting-conversion detour.
    let lam = |n: u64| MTerm::mu_copat(MConfig::new(MTerm::nat(n), MCoterm::covar(0)));
    let frame = MCoterm::cons(MTerm::nat(3), top());
    let dispatch = MConfig::new(
        MTerm::inj(Side::One, MTerm::unit()),
        MCoterm::mu_tilde_sum(
            MConfig::new(lam(0), frame.clone()),
            MConfig::new(lam(1), frame.clone()),
        ),
    );
    assert_eq!(tr.steps[1].next, dispatch);

    // Both branches hold a mu-cons redex (the displayed pair of steps); the
    // machine takes the one the dispatch selects, and the other steps the
    // same way when probed.
    for (branch, result) in [(lam(0), 0u64), (lam(1), 1u64)] {
        match step(&MConfig::new(branch, frame.clone())) {
            Step::Reduced { rule, next } => {
                assert_eq!(rule, Rule::MuCons);
                assert_eq!(next, MConfig::new(MTerm::nat(result), top()));
            }
            other => panic!("branch redex did not step: {other:?}"),
        }
    }

    assert_eq!(tr.final_config, MConfig::new(MTerm::nat(0), top()));
    // The witness-passing path produces the identical trace.
    assert_eq!(normalize_trace(&t, Strategy::Cbn).unwrap(), tr);
    println!(
        "[PASS] criterion 2: case-under-application reduces mu;mu then dispatch, \
         application frame inside both branches, both branch mu-cons redexes verified"
    );
}

#[test]
fn criterion_03_nested_cases_normalize_to_one_everywhere() {
    let t = parse(nested_case_source());
    for strategy in STRATEGIES {
        assert_eq!(
            normalize_integer(&t, strategy),
            Ok(1u8.into()),
            "integer pole under {strategy}"
        );
        let tr = normalize_trace(&t, strategy).unwrap();
        assert_eq!(
            tr.final_config,
            MConfig::new(MTerm::nat(1), top()),
            "trace pole under {strategy}"
        );
    }
    println!("[PASS] criterion 3: nested-case program yields 1 under both variants and both poles");
}

#[test]
fn criterion_04_witness_traces_equal_machine_runs_step_for_step() {
    let mut checked = 0usize;
    for t in corpus() {
        for strategy in STRATEGIES {
            let realizability = normalize_trace(t, strategy)
                .unwrap_or_else(|e| panic!("normalize failed under {strategy}: {e}"));
            let machine = run(&MConfig::new(compile(strategy, t), top()), DEFAULT_FUEL)
                .into_normalized()
                .unwrap_or_else(|| panic!("machine did not normalize under {strategy}: {t}"));
            assert_eq!(realizability, machine, "trace mismatch under {strategy}: {t}");
            checked += 1;
        }
    }
    println!(
        "[PASS] criterion 4: witness-passing and machine traces identical on {checked} \
         program/variant pairs (zero mismatches)"
    );
}

#[test]
fn criterion_05_well_typed_programs_always_normalize() {
    let mut runs = 0usize;
    for t in corpus() {
        for strategy in STRATEGIES {
            match run(&MConfig::new(compile(strategy, t), top()), DEFAULT_FUEL) {
                RunOutcome::Normalized(_) => runs += 1,
                RunOutcome::Stuck { reason, .. } => {
                    panic!("stuck under {strategy} ({reason}): {t}")
                }
                RunOutcome::FuelExhausted { .. } => {
                    panic!("fuel exhausted under {strategy}: {t}")
                }
            }
        }
    }
    println!(
        "[PASS] criterion 5: machine normalized all {runs} runs (never stuck, \
         never out of fuel)"
    );
}

#[test]
fn criterion_06_every_produced_trace_is_valid() {
    let mut checked = 0usize;
    for t in corpus() {
        for strategy in STRATEGIES {
            let tr = normalize_trace(t, strategy).unwrap();
            assert_eq!(check_trace(&tr), TraceCheck::Valid, "realizability trace: {t}");
            let mr = run(&MConfig::new(compile(strategy, t), top()), DEFAULT_FUEL)
                .into_normalized()
                .unwrap();
            assert_eq!(check_trace(&mr), TraceCheck::Valid, "machine trace: {t}");
            checked += 2;
        }
    }
    println!("[PASS] criterion 6: {checked} traces checked, zero invalid");
}

#[test]
fn criterion_07_boolean_canonicity() {
    let mut checked = 0usize;
    for t in corpus() {
        if typecheck(&Context::empty(), t) != Ok(Type::bool()) {
            continue;
        }
        for strategy in STRATEGIES {
            let tr = normalize_trace(t, strategy).unwrap();
            let side = match &tr.final_config.term {
                MTerm::Inj { side, .. } => *side,
                other => panic!("bool program did not end in an injection: {other} ({t})"),
            };
            assert_eq!(extract_sum_side(&tr), Ok(side));
            let oracle_side = match eval_reference(t, strategy, DEFAULT_FUEL).unwrap() {
                Term::Inj(s, _, _) => s,
                other => panic!("oracle value of a bool is not an injection: {other}"),
            };
            assert_eq!(side, oracle_side, "truth value disagreement on {t}");
            checked += 1;
        }
    }
    assert!(checked >= 100, "too few boolean corpus programs: {checked}");
    println!(
        "[PASS] criterion 7: all {checked} boolean runs end in inj1/inj2 and agree \
         with the oracle's truth value"
    );
}

#[test]
fn criterion_08_call_by_value_is_visibly_stricter() {
    let t = parse("(fun x : nat . 0) ((fun y : nat . y) 1)");
    let cbn = normalize_trace(&t, Strategy::Cbn).unwrap();
    let cbv = normalize_trace(&t, Strategy::Cbv).unwrap();
    assert!(
        cbv.len() > cbn.len(),
        "cbv ({}) should be strictly longer than cbn ({})",
        cbv.len(),
        cbn.len()
    );
    assert!(cbv.rules().contains(&Rule::MuTilde), "cbv must bind through mu-tilde");
    assert!(!cbn.rules().contains(&Rule::MuTilde), "cbn must not use mu-tilde");
    for strategy in STRATEGIES {
        assert_eq!(normalize_integer(&t, strategy), Ok(0u8.into()));
    }
    println!(
        "[PASS] criterion 8: discarded-argument program runs {} steps under cbv \
         (with mu-tilde) vs {} under cbn (without), both yielding 0",
        cbv.len(),
        cbn.len()
    );
}

#[test]
fn criterion_09_oracle_triangulation_at_nat() {
    let mut checked = 0usize;
    for t in corpus() {
        if typecheck(&Context::empty(), t) != Ok(Type::Nat) {
            continue;
        }
        for strategy in STRATEGIES {
            let direct = normalize_integer(&t, strategy).unwrap();
            let via_trace = extract_nat(&normalize_trace(&t, strategy).unwrap()).unwrap();
            let oracle = match eval_reference(t, strategy, DEFAULT_FUEL).unwrap() {
                Term::NatLit(n) => n,
                other => panic!("oracle value of a nat is not a literal: {other}"),
            };
            assert_eq!(direct, via_trace, "poles disagree on {t} under {strategy}");
            assert_eq!(direct, oracle, "evaluator disagrees on {t} under {strategy}");
            checked += 1;
        }
    }
    assert!(checked >= 200, "too few nat corpus programs: {checked}");
    println!(
        "[PASS] criterion 9: integer pole, trace extraction and reference evaluator \
         agree on {checked} nat runs"
    );
}

#[test]
fn criterion_10_compiled_terms_are_hygienic() {
    let mut checked = 0usize;
    for t in corpus() {
        let cbn = compile_cbn(t);
        let cbv = compile_cbv(t);
        assert!(free_covars(&cbn).is_empty(), "cbn image has free co-variables: {t}");
        assert!(free_covars(&cbv).is_empty(), "cbv image has free co-variables: {t}");
        assert!(!contains_mu_tilde(&cbn), "cbn image contains mu-tilde: {t}");
        checked += 1;
    }
    println!(
        "[PASS] criterion 10: {checked} compiled programs are co-variable-closed; \
         call-by-name images are mu-tilde-free"
    );
}
