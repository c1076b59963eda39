//! Reference big-step evaluator for closed source terms.
//!
//! This is the independent oracle the machine and the witness-passing
//! evaluator are validated against. It implements weak evaluation under
//! both strategies: call-by-name substitutes arguments and injection
//! payloads unevaluated, call-by-value evaluates them first.

use std::fmt;

use crate::ast::{instantiate, Side, Term};

/// Evaluation strategy, shared by the oracle, the compilers and the
/// witness-passing evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Cbn,
    Cbv,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Cbn => write!(f, "cbn"),
            Strategy::Cbv => write!(f, "cbv"),
        }
    }
}

pub const DEFAULT_FUEL: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// Fuel ran out. Cannot happen for well-typed terms given enough fuel.
    Diverged,
    /// A stuck state, impossible on well-typed closed input.
    Stuck(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Diverged => write!(f, "evaluation ran out of fuel"),
            EvalError::Stuck(why) => write!(f, "evaluator stuck on well-typed input: {why}"),
        }
    }
}

impl std::error::Error for EvalError {}

/// Weak big-step evaluation of a closed term. The result is a closed term
/// in weak-head normal form: a lambda, a unit, a literal, or an injection
/// whose payload is a value under CBV and an arbitrary term under CBN.
pub fn eval_reference(t: &Term, strategy: Strategy, fuel: u64) -> Result<Term, EvalError> {
    let mut budget = fuel;
    eval(t, strategy, &mut budget)
}

fn eval(t: &Term, strategy: Strategy, fuel: &mut u64) -> Result<Term, EvalError> {
    match t {
        Term::Lam(_, _) | Term::UnitIntro | Term::NatLit(_) => Ok(t.clone()),
        Term::Var(i) => Err(EvalError::Stuck(format!("free variable {i}"))),
        Term::Inj(side, annot, payload) => match strategy {
            Strategy::Cbn => Ok(t.clone()),
            Strategy::Cbv => {
                let v = eval(payload, strategy, fuel)?;
                Ok(Term::inj(*side, annot.clone(), v))
            }
        },
        Term::App(fun, arg) => {
            let fun_v = eval(fun, strategy, fuel)?;
            let body = match fun_v {
                Term::Lam(_, body) => body,
                other => {
                    return Err(EvalError::Stuck(format!(
                        "application head is not a lambda: {other:?}"
                    )))
                }
            };
            let arg_t = match strategy {
                Strategy::Cbn => arg.as_ref().clone(),
                Strategy::Cbv => eval(arg, strategy, fuel)?,
            };
            spend(fuel)?;
            eval(&instantiate(&body, &arg_t), strategy, fuel)
        }
        Term::Case(scrutinee, branch1, branch2) => {
            let scrut_v = eval(scrutinee, strategy, fuel)?;
            let (side, payload) = match scrut_v {
                Term::Inj(side, _, payload) => (side, payload),
                other => {
                    return Err(EvalError::Stuck(format!(
                        "case scrutinee is not an injection: {other:?}"
                    )))
                }
            };
            let branch = match side {
                Side::One => branch1,
                Side::Two => branch2,
            };
            spend(fuel)?;
            eval(&instantiate(branch, &payload), strategy, fuel)
        }
    }
}

fn spend(fuel: &mut u64) -> Result<(), EvalError> {
    if *fuel == 0 {
        Err(EvalError::Diverged)
    } else {
        *fuel -= 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Type;
    use crate::typecheck::{typecheck, Context};

    fn eval_ok(t: &Term, s: Strategy) -> Term {
        eval_reference(t, s, DEFAULT_FUEL).expect("evaluation should succeed")
    }

    #[test]
    fn beta_step() {
        let t = Term::app(Term::lam(Type::Nat, Term::Var(0)), Term::nat(3));
        assert_eq!(eval_ok(&t, Strategy::Cbn), Term::nat(3));
        assert_eq!(eval_ok(&t, Strategy::Cbv), Term::nat(3));
    }

    #[test]
    fn if_true_takes_the_first_branch() {
        let t = Term::ite(Term::tru(), Term::nat(4), Term::nat(7));
        assert_eq!(eval_ok(&t, Strategy::Cbv), Term::nat(4));
    }

    /// Nested case analysis where reducing the inner case creates a redex at
    /// a larger sum type; weak evaluation still lands on the second branch.
    #[test]
    fn nested_cases_normalize_to_one() {
        let t = nested_case_term();
        assert_eq!(eval_ok(&t, Strategy::Cbn), Term::nat(1));
        assert_eq!(eval_ok(&t, Strategy::Cbv), Term::nat(1));
    }

    /// case (case inj1{unit+unit} () of
    ///        { inj1 y1 -> inj2{unit+(unit+unit)} (inj2{unit+unit} y1)
    ///        | inj2 y2 -> inj2{unit+(unit+unit)} (inj1{unit+unit} y2) }) of
    ///   { inj1 x1 -> 0 | inj2 x2 -> 1 }
    pub(crate) fn nested_case_term() -> Term {
        let uu = Type::sum(Type::Unit, Type::Unit);
        let outer_sum = Type::sum(Type::Unit, uu.clone());
        let inner = Term::case(
            Term::inj(Side::One, uu.clone(), Term::UnitIntro),
            Term::inj(
                Side::Two,
                outer_sum.clone(),
                Term::inj(Side::Two, uu.clone(), Term::Var(0)),
            ),
            Term::inj(
                Side::Two,
                outer_sum.clone(),
                Term::inj(Side::One, uu.clone(), Term::Var(0)),
            ),
        );
        let t = Term::case(inner, Term::nat(0), Term::nat(1));
        assert_eq!(typecheck(&Context::empty(), &t), Ok(Type::Nat));
        t
    }

    #[test]
    fn fuel_exhaustion_reports_divergence() {
        let t = Term::app(Term::lam(Type::Nat, Term::Var(0)), Term::nat(3));
        assert_eq!(eval_reference(&t, Strategy::Cbn, 0), Err(EvalError::Diverged));
    }

    #[test]
    fn oracle_preserves_types() {
        let t = Term::ite(Term::fls(), Term::tru(), Term::fls());
        let ty = typecheck(&Context::empty(), &t).unwrap();
        for s in [Strategy::Cbn, Strategy::Cbv] {
            let v = eval_ok(&t, s);
            assert_eq!(typecheck(&Context::empty(), &v), Ok(ty.clone()));
        }
    }
}
