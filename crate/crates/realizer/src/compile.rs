//! Translation of source terms into the mu/mu-tilde machine.
//!
//! Two disciplines are provided. Call-by-name binds application arguments
//! and injection payloads as given:
//!
//! ```text
//! [x]    = x                      [inj_i t]          = inj_i [t]
//! [\x.t] = mu(x . a) < [t] | a >  [case t of x. u_i] = mu a . < [t] | mut[inj_i x . < [u_i] | a >] >
//! [t u]  = mu a . < [t] | [u] . a >
//! ```
//!
//! Call-by-value routes positive arguments and payloads through a `mut`
//! binder so the machine evaluates them to a value first:
//!
//! ```text
//! [t u]     = mu a . < [u] | mut v . < [t] | v . a > >     (u at positive type)
//! [inj_i t] = mu a . < [t] | mut v . < inj_i v | a > >     (t at positive type)
//! ```
//!
//! At negative types there is nothing to force — a truth value witness of a
//! negative type is an arbitrary witness — so negative-typed arguments and
//! payloads keep the call-by-name form. This matches what the
//! witness-passing evaluator actually does with them and keeps its traces in
//! lock-step with the machine, which resolves the critical pair in favor of
//! `mu`. Unit values, literals and case forms compile the same way under
//! both disciplines; the sum destructor already forces its scrutinee.
//!
//! Compilation is total on raw terms. The call-by-value translation consults
//! the type checker to classify arguments; where no type can be derived it
//! falls back to the strict form (such terms are unsupported anyway).

use crate::ast::{polarity, Polarity, Term, Type};
use crate::eval::Strategy;
use crate::machine::{MConfig, MCoterm, MTerm};
use crate::typecheck::{typecheck, Context};

pub use crate::machine::{contains_mu_tilde, free_covars, free_tvars};

/// Compile under the chosen discipline, from the empty context.
pub fn compile(strategy: Strategy, t: &Term) -> MTerm {
    compile_under(strategy, &Context::empty(), t)
}

/// Compile an open term whose free variables are typed by `ctx`.
pub fn compile_under(strategy: Strategy, ctx: &Context, t: &Term) -> MTerm {
    match strategy {
        Strategy::Cbn => compile_cbn(t),
        Strategy::Cbv => cbv(ctx, t),
    }
}

/// The call-by-name translation.
pub fn compile_cbn(t: &Term) -> MTerm {
    match t {
        Term::Var(i) => MTerm::var(*i),
        Term::Lam(_, body) => {
            MTerm::mu_copat(MConfig::new(compile_cbn(body), MCoterm::covar(0)))
        }
        Term::App(fun, arg) => MTerm::mu(MConfig::new(
            compile_cbn(fun),
            MCoterm::cons(compile_cbn(arg), MCoterm::covar(0)),
        )),
        Term::Inj(side, _, payload) => MTerm::inj(*side, compile_cbn(payload)),
        Term::Case(scrutinee, branch1, branch2) => MTerm::mu(MConfig::new(
            compile_cbn(scrutinee),
            MCoterm::mu_tilde_sum(
                MConfig::new(compile_cbn(branch1), MCoterm::covar(0)),
                MConfig::new(compile_cbn(branch2), MCoterm::covar(0)),
            ),
        )),
        Term::UnitIntro => MTerm::unit(),
        Term::NatLit(n) => MTerm::nat_big(n.clone()),
    }
}

/// The call-by-value translation (closed terms).
pub fn compile_cbv(t: &Term) -> MTerm {
    cbv(&Context::empty(), t)
}

fn cbv(ctx: &Context, t: &Term) -> MTerm {
    match t {
        Term::Var(i) => MTerm::var(*i),
        Term::Lam(annot, body) => MTerm::mu_copat(MConfig::new(
            cbv(&ctx.pushed(annot.clone()), body),
            MCoterm::covar(0),
        )),
        Term::App(fun, arg) => {
            let strict = match typecheck(ctx, arg) {
                Ok(ty) => polarity(&ty) == Polarity::Positive,
                Err(_) => true,
            };
            if strict {
                // mu a . < [arg] | mut v . < [fun] | v . a > >
                MTerm::mu(MConfig::new(
                    cbv(ctx, arg),
                    MCoterm::mu_tilde(MConfig::new(
                        crate::machine::shift_mterm(&cbv(ctx, fun), 1, 0),
                        MCoterm::cons(MTerm::var(0), MCoterm::covar(0)),
                    )),
                ))
            } else {
                MTerm::mu(MConfig::new(
                    cbv(ctx, fun),
                    MCoterm::cons(cbv(ctx, arg), MCoterm::covar(0)),
                ))
            }
        }
        Term::Inj(side, annot, payload) => {
            let payload_ty = match annot {
                Type::Sum(l, r) => Some(side.pick(l.as_ref(), r.as_ref())),
                _ => None,
            };
            let strict = payload_ty.map_or(true, |ty| polarity(ty) == Polarity::Positive);
            if strict {
                // mu a . < [payload] | mut v . < inj_i v | a > >
                MTerm::mu(MConfig::new(
                    cbv(ctx, payload),
                    MCoterm::mu_tilde(MConfig::new(
                        MTerm::inj(*side, MTerm::var(0)),
                        MCoterm::covar(0),
                    )),
                ))
            } else {
                MTerm::inj(*side, cbv(ctx, payload))
            }
        }
        Term::Case(scrutinee, branch1, branch2) => {
            let (left, right) = match typecheck(ctx, scrutinee) {
                Ok(Type::Sum(l, r)) => ((*l).clone(), (*r).clone()),
                _ => (Type::Nat, Type::Nat),
            };
            MTerm::mu(MConfig::new(
                cbv(ctx, scrutinee),
                MCoterm::mu_tilde_sum(
                    MConfig::new(cbv(&ctx.pushed(left), branch1), MCoterm::covar(0)),
                    MConfig::new(cbv(&ctx.pushed(right), branch2), MCoterm::covar(0)),
                ),
            ))
        }
        Term::UnitIntro => MTerm::unit(),
        Term::NatLit(n) => MTerm::nat_big(n.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Side;
    use crate::eval::{eval_reference, DEFAULT_FUEL};
    use crate::machine::{run, MConfig, RunOutcome};
    use crate::parse::parse_program;

    fn top() -> MCoterm {
        MCoterm::covar(0)
    }

    #[test]
    fn lambda_compiles_to_a_copattern() {
        let t = parse_program("fun x : nat . x").unwrap();
        assert_eq!(
            compile_cbn(&t),
            MTerm::mu_copat(MConfig::new(MTerm::var(0), top()))
        );
    }

    #[test]
    fn application_compiles_to_a_mu_wrapper() {
        let t = parse_program("(fun x : nat . x) 3").unwrap();
        assert_eq!(
            compile_cbn(&t),
            MTerm::mu(MConfig::new(
                MTerm::mu_copat(MConfig::new(MTerm::var(0), top())),
                MCoterm::cons(MTerm::nat(3), top()),
            ))
        );
    }

    #[test]
    fn injections_compile_transparently_under_cbn() {
        let t = parse_program("inj1{nat+unit} 3").unwrap();
        assert_eq!(compile_cbn(&t), MTerm::inj(Side::One, MTerm::nat(3)));
    }

    #[test]
    fn cbv_application_forces_positive_arguments() {
        // [t u] = mu a . < [u] | mut v . < [t] | v . a > >
        let t = parse_program("(fun x : nat . x) 3").unwrap();
        assert_eq!(
            compile_cbv(&t),
            MTerm::mu(MConfig::new(
                MTerm::nat(3),
                MCoterm::mu_tilde(MConfig::new(
                    MTerm::mu_copat(MConfig::new(MTerm::var(0), top())),
                    MCoterm::cons(MTerm::var(0), top()),
                )),
            ))
        );
    }

    #[test]
    fn cbv_variables_compile_to_themselves() {
        let t = parse_program("fun x : nat . x").unwrap();
        match compile_cbv(&t) {
            MTerm::MuCopat { body } => assert_eq!(body.term, MTerm::var(0)),
            other => panic!("unexpected compilation {other:?}"),
        }
    }

    #[test]
    fn cbv_injections_force_positive_payloads() {
        let t = parse_program("inj1{nat+unit} ((fun x : nat . x) 3)").unwrap();
        let inner = compile_cbv(&parse_program("(fun x : nat . x) 3").unwrap());
        assert_eq!(
            compile_cbv(&t),
            MTerm::mu(MConfig::new(
                inner,
                MCoterm::mu_tilde(MConfig::new(
                    MTerm::inj(Side::One, MTerm::var(0)),
                    top()
                )),
            ))
        );
    }

    #[test]
    fn cbv_leaves_negative_arguments_unforced() {
        // The argument has arrow type, so there is no value to wait for.
        let t = parse_program("(fun f : nat -> nat . f 1) (fun y : nat . y)").unwrap();
        let compiled = compile_cbv(&t);
        match &compiled {
            MTerm::Mu { body } => match &body.coterm {
                MCoterm::Cons { .. } => {}
                other => panic!("expected a direct application frame, got {other}"),
            },
            other => panic!("unexpected compilation {other}"),
        }
    }

    #[test]
    fn compiled_closed_terms_have_no_free_covariables() {
        let sources = [
            "fun x : nat . x",
            "(fun x : nat . x) 3",
            "case inj1{nat+unit} 3 of { inj1 x -> x | inj2 y -> 0 }",
            "if true then 4 else 7",
            "(fun f : nat -> nat . f ((fun y : nat . y) 2)) (fun x : nat . x)",
        ];
        for src in sources {
            let t = parse_program(src).unwrap();
            assert!(free_covars(&compile_cbn(&t)).is_empty(), "cbn {src}");
            assert!(free_covars(&compile_cbv(&t)).is_empty(), "cbv {src}");
            assert!(free_tvars(&compile_cbn(&t)).is_empty(), "cbn term vars {src}");
            assert!(free_tvars(&compile_cbv(&t)).is_empty(), "cbv term vars {src}");
            assert!(!contains_mu_tilde(&compile_cbn(&t)), "cbn mut-free {src}");
        }
    }

    #[test]
    fn machine_and_oracle_agree_at_nat() {
        let sources = [
            "(fun x : nat . x) 3",
            "if false then 4 else 7",
            "case inj2{nat+nat} 8 of { inj1 x -> x | inj2 y -> y }",
            "(fun f : nat -> nat . f 1) (fun y : nat . y)",
        ];
        for src in sources {
            let t = parse_program(src).unwrap();
            for strategy in [Strategy::Cbn, Strategy::Cbv] {
                let compiled = compile(strategy, &t);
                let outcome = run(&MConfig::new(compiled, top()), DEFAULT_FUEL);
                let tr = match outcome {
                    RunOutcome::Normalized(tr) => tr,
                    other => panic!("{src} under {strategy} did not normalize: {other:?}"),
                };
                let expected = eval_reference(&t, strategy, DEFAULT_FUEL).unwrap();
                match (&tr.final_config.term, expected) {
                    (MTerm::Nat { n }, Term::NatLit(m)) => assert_eq!(*n, m, "{src} {strategy}"),
                    (got, want) => panic!("{src} {strategy}: machine {got:?} oracle {want:?}"),
                }
            }
        }
    }
}
