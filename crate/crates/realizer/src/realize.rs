//! The witness-passing evaluator: normalization as the computational
//! content of an adequacy argument.
//!
//! For each source type there are four flavors of witness. Truth value
//! witnesses are canonical producers (a literal for `nat`, a tagged payload
//! for sums, and at negative types any truth witness). Falsity value
//! witnesses are canonical observations (an argument frame `u . e` for
//! arrows, nothing at `unit`, and at positive types any falsity witness).
//! Truth and falsity witnesses proper are functions: a truth witness
//! consumes a falsity value witness and lands in the pole, a falsity witness
//! consumes a truth value witness. Every witness carries the machine
//! (co-)term it justifies, and each pole element produced records why that
//! (co-)term computes well.
//!
//! The pole is abstract: [`TracePole`] materializes a verified reduction
//! trace (its `expand` checks, at construction time, that each claimed
//! anti-reduction step is the machine's own step), while [`IntegerPole`]
//! keeps only the final literal. [`realize`] maps a well-typed term to a
//! truth witness of its type under either calling discipline; [`normalize`]
//! variants cut the resulting witness against the top-level co-variable.
//!
//! Witnesses are dynamically tagged. Tag mismatches are impossible for
//! well-typed input, so they panic; the fuzz suites double as evidence that
//! they never fire.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigUint;

use crate::ast::{polarity, Polarity, Side, Term, Type};
use crate::compile;
use crate::eval::Strategy;
use crate::machine::{self, MConfig, MCoterm, MTerm, Rule, Step, Trace};
use crate::typecheck::{typecheck, Context, TypeError};

fn bug(msg: &str) -> ! {
    panic!("witness universe violation (unreachable from well-typed input): {msg}")
}

fn expect_type(r: Result<Type, TypeError>) -> Type {
    match r {
        Ok(ty) => ty,
        Err(e) => bug(&format!("ill-typed subterm: {e}")),
    }
}

/// A pole: what it means for a configuration to compute well, together with
/// closure under anti-reduction (`expand`) and the observation made at the
/// top-level co-variable (`at_covar`).
pub trait Pole: Clone + 'static {
    type Elem;

    /// Promote a pole element for the reduct of `from` into one for `from`
    /// itself. `rule` names the machine step being undone.
    fn expand(&self, rule: Rule, from: &MConfig, elem: Self::Elem) -> Self::Elem;

    /// The pole element observed when a value meets the top-level
    /// co-variable.
    fn at_covar(&self, value: &TruthValue<Self>) -> Self::Elem;
}

/// A truth witness: a producer of its type, carrying the machine term it
/// justifies. Applying it to a falsity value witness of the same type lands
/// in the pole, with the trace starting at `< carried | frame >`.
pub struct TruthWitness<P: Pole> {
    pub carried: MTerm,
    justify: Rc<dyn Fn(&FalsityValue<P>) -> P::Elem>,
}

impl<P: Pole> Clone for TruthWitness<P> {
    fn clone(&self) -> Self {
        TruthWitness { carried: self.carried.clone(), justify: self.justify.clone() }
    }
}

impl<P: Pole> TruthWitness<P> {
    pub fn new(carried: MTerm, justify: impl Fn(&FalsityValue<P>) -> P::Elem + 'static) -> Self {
        TruthWitness { carried, justify: Rc::new(justify) }
    }

    pub fn justify(&self, frame: &FalsityValue<P>) -> P::Elem {
        (self.justify)(frame)
    }
}

/// A falsity witness: a consumer of its type, carrying the machine co-term
/// it justifies. Applying it to a truth value witness lands in the pole,
/// with the trace starting at `< value | carried >`.
pub struct FalsityWitness<P: Pole> {
    pub carried: MCoterm,
    justify: Rc<dyn Fn(&TruthValue<P>) -> P::Elem>,
}

impl<P: Pole> Clone for FalsityWitness<P> {
    fn clone(&self) -> Self {
        FalsityWitness { carried: self.carried.clone(), justify: self.justify.clone() }
    }
}

impl<P: Pole> FalsityWitness<P> {
    pub fn new(carried: MCoterm, justify: impl Fn(&TruthValue<P>) -> P::Elem + 'static) -> Self {
        FalsityWitness { carried, justify: Rc::new(justify) }
    }

    pub fn justify(&self, value: &TruthValue<P>) -> P::Elem {
        (self.justify)(value)
    }
}

/// An argument position: call-by-name stores a truth witness, call-by-value
/// a truth value witness. The same choice shows up in application frames,
/// sum payloads and environment entries.
pub enum Arg<P: Pole> {
    ByName(TruthWitness<P>),
    ByValue(Rc<TruthValue<P>>),
}

impl<P: Pole> Clone for Arg<P> {
    fn clone(&self) -> Self {
        match self {
            Arg::ByName(w) => Arg::ByName(w.clone()),
            Arg::ByValue(v) => Arg::ByValue(v.clone()),
        }
    }
}

impl<P: Pole> Arg<P> {
    pub fn carried(&self) -> MTerm {
        match self {
            Arg::ByName(w) => w.carried.clone(),
            Arg::ByValue(v) => v.carried(),
        }
    }
}

/// A truth value witness.
pub enum TruthValue<P: Pole> {
    Nat(BigUint),
    Sum(Side, Arg<P>),
    /// At negative types, value witnesses are just witnesses.
    Neg(TruthWitness<P>),
}

impl<P: Pole> Clone for TruthValue<P> {
    fn clone(&self) -> Self {
        match self {
            TruthValue::Nat(n) => TruthValue::Nat(n.clone()),
            TruthValue::Sum(s, a) => TruthValue::Sum(*s, a.clone()),
            TruthValue::Neg(w) => TruthValue::Neg(w.clone()),
        }
    }
}

impl<P: Pole> TruthValue<P> {
    /// The machine term this value justifies.
    pub fn carried(&self) -> MTerm {
        match self {
            TruthValue::Nat(n) => MTerm::nat_big(n.clone()),
            TruthValue::Sum(side, payload) => MTerm::inj(*side, payload.carried()),
            TruthValue::Neg(w) => w.carried.clone(),
        }
    }
}

/// A falsity value witness.
pub enum FalsityValue<P: Pole> {
    /// An application frame `arg . rest` against an arrow type.
    ConsFrame { arg: Arg<P>, rest: FalsityWitness<P> },
    /// At positive types, falsity value witnesses are just falsity
    /// witnesses. The unit type has no falsity values at all.
    Pos(FalsityWitness<P>),
}

impl<P: Pole> Clone for FalsityValue<P> {
    fn clone(&self) -> Self {
        match self {
            FalsityValue::ConsFrame { arg, rest } => {
                FalsityValue::ConsFrame { arg: arg.clone(), rest: rest.clone() }
            }
            FalsityValue::Pos(f) => FalsityValue::Pos(f.clone()),
        }
    }
}

impl<P: Pole> FalsityValue<P> {
    /// The machine co-term this value justifies.
    pub fn carried(&self) -> MCoterm {
        match self {
            FalsityValue::ConsFrame { arg, rest } => {
                MCoterm::cons(arg.carried(), rest.carried.clone())
            }
            FalsityValue::Pos(f) => f.carried.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// The combinators
// ---------------------------------------------------------------------------

/// Cut a truth witness against a falsity witness at a type. Polarity decides
/// which side drives: positive types feed the falsity witness (as a falsity
/// value) to the truth witness, negative types the other way around.
pub fn cut<P: Pole>(ty: &Type, tw: &TruthWitness<P>, fw: &FalsityWitness<P>) -> P::Elem {
    match polarity(ty) {
        Polarity::Positive => tw.justify(&FalsityValue::Pos(fw.clone())),
        Polarity::Negative => fw.justify(&TruthValue::Neg(tw.clone())),
    }
}

/// Embed a truth value witness into the truth witnesses, CPS-style: the
/// resulting witness hands the value to whatever falsity witness it meets.
/// At negative types this is the identity.
pub fn val_term<P: Pole>(v: &TruthValue<P>) -> TruthWitness<P> {
    match v {
        TruthValue::Neg(w) => w.clone(),
        _ => {
            let v = v.clone();
            TruthWitness::new(v.carried(), move |frame| match frame {
                FalsityValue::Pos(k) => k.justify(&v),
                FalsityValue::ConsFrame { .. } => {
                    bug("a positive value met an application frame")
                }
            })
        }
    }
}

/// Embed a falsity value witness into the falsity witnesses; the dual of
/// [`val_term`]. At positive types this is the identity.
pub fn val_coterm<P: Pole>(frame: &FalsityValue<P>) -> FalsityWitness<P> {
    match frame {
        FalsityValue::Pos(k) => k.clone(),
        _ => {
            let frame = frame.clone();
            FalsityWitness::new(frame.carried(), move |value| match value {
                TruthValue::Neg(w) => w.justify(&frame),
                _ => bug("a positive value met a negative observation frame"),
            })
        }
    }
}

/// The falsity witness carried by the top-level co-variable, available at
/// positive types only: feeding it a value yields the pole's observation of
/// that value sitting against the co-variable. At negative types there is no
/// falsity value to hand over, so the construction is unsupported.
pub fn covar_falsity<P: Pole>(ty: &Type, pole: &P) -> Option<FalsityWitness<P>> {
    match polarity(ty) {
        Polarity::Positive => {
            let pole = pole.clone();
            Some(FalsityWitness::new(MCoterm::covar(0), move |value| {
                pole.at_covar(value)
            }))
        }
        Polarity::Negative => None,
    }
}

// ---------------------------------------------------------------------------
// Witness environments
// ---------------------------------------------------------------------------

/// A de Bruijn telescope of argument witnesses, one per binder in scope.
/// Each entry also supplies the machine substitution: its carried term.
pub struct WitnessEnv<P: Pole> {
    entries: Vec<Arg<P>>,
}

impl<P: Pole> Clone for WitnessEnv<P> {
    fn clone(&self) -> Self {
        WitnessEnv { entries: self.entries.clone() }
    }
}

impl<P: Pole> Default for WitnessEnv<P> {
    fn default() -> Self {
        WitnessEnv::empty()
    }
}

impl<P: Pole> WitnessEnv<P> {
    pub fn empty() -> Self {
        WitnessEnv { entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, index: usize) -> &Arg<P> {
        if index >= self.entries.len() {
            bug("unbound variable in the witness environment");
        }
        &self.entries[self.entries.len() - 1 - index]
    }

    pub fn pushed(&self, arg: Arg<P>) -> Self {
        let mut entries = self.entries.clone();
        entries.push(arg);
        WitnessEnv { entries }
    }

    /// Apply the environment's machine substitution to a compiled term.
    pub fn apply(&self, t: &MTerm) -> MTerm {
        if self.entries.is_empty() {
            return t.clone();
        }
        let map: HashMap<usize, MTerm> = self
            .entries
            .iter()
            .rev()
            .enumerate()
            .map(|(i, arg)| (i, arg.carried()))
            .collect();
        machine::subst_mterm_vars(t, &map)
    }
}

fn check_arg_kind<P: Pole>(strategy: Strategy, arg: &Arg<P>) {
    match (strategy, arg) {
        (Strategy::Cbn, Arg::ByName(_)) | (Strategy::Cbv, Arg::ByValue(_)) => {}
        _ => bug("argument witness kind does not match the evaluation strategy"),
    }
}

fn step_expect(from: &MConfig, want: Rule) -> MConfig {
    match machine::step(from) {
        Step::Reduced { rule, next } if rule == want => next,
        other => bug(&format!(
            "expected the machine to take a {want} step at {from}, it gave {other:?}"
        )),
    }
}

// ---------------------------------------------------------------------------
// The evaluator
// ---------------------------------------------------------------------------

/// Turn a well-typed term into a truth witness of its type. The witness
/// carries the compiled term with the environment's machine substitution
/// applied; the pole elements it produces start at the corresponding
/// configurations and are built by anti-reduction, one `expand` per machine
/// step.
pub fn realize<P: Pole>(
    t: &Term,
    ctx: &Context,
    env: &WitnessEnv<P>,
    strategy: Strategy,
    pole: &P,
) -> TruthWitness<P> {
    let carried = env.apply(&compile::compile_under(strategy, ctx, t));
    match t {
        Term::Var(i) => match (strategy, env.lookup(*i)) {
            (Strategy::Cbn, Arg::ByName(w)) => w.clone(),
            (Strategy::Cbv, Arg::ByValue(v)) => val_term(v),
            _ => bug("environment entry kind does not match the evaluation strategy"),
        },

        Term::NatLit(n) => val_term(&TruthValue::Nat(n.clone())),

        Term::UnitIntro => TruthWitness::new(carried, |_| {
            bug("the unit type has no falsity value witnesses")
        }),

        Term::Lam(annot, body) => {
            let inner_ctx = ctx.pushed(annot.clone());
            let body_ty = expect_type(typecheck(&inner_ctx, body));
            let body = (**body).clone();
            let env = env.clone();
            let pole = pole.clone();
            let self_carried = carried.clone();
            TruthWitness::new(carried, move |frame| match frame {
                FalsityValue::ConsFrame { arg, rest } => {
                    check_arg_kind(strategy, arg);
                    let from = MConfig::new(self_carried.clone(), frame.carried());
                    let body_witness =
                        realize(&body, &inner_ctx, &env.pushed(arg.clone()), strategy, &pole);
                    let inner = cut(&body_ty, &body_witness, rest);
                    pole.expand(Rule::MuCons, &from, inner)
                }
                FalsityValue::Pos(_) => bug("a function witness met a positive falsity witness"),
            })
        }

        Term::App(fun, arg) => {
            let strict = match strategy {
                Strategy::Cbn => None,
                Strategy::Cbv => {
                    let arg_ty = expect_type(typecheck(ctx, arg));
                    match polarity(&arg_ty) {
                        Polarity::Positive => Some(arg_ty),
                        Polarity::Negative => None,
                    }
                }
            };
            match strict {
                // Lazy argument: one mu step discharges the application
                // wrapper and the argument witness enters the frame as is.
                None => {
                    let fun = (**fun).clone();
                    let arg = (**arg).clone();
                    let ctx = ctx.clone();
                    let env = env.clone();
                    let pole = pole.clone();
                    let self_carried = carried.clone();
                    TruthWitness::new(carried, move |frame| {
                        let rest = val_coterm(frame);
                        let arg_witness = realize(&arg, &ctx, &env, strategy, &pole);
                        let arg = match strategy {
                            Strategy::Cbn => Arg::ByName(arg_witness),
                            Strategy::Cbv => {
                                Arg::ByValue(Rc::new(TruthValue::Neg(arg_witness)))
                            }
                        };
                        let app_frame = FalsityValue::ConsFrame { arg, rest };
                        let from = MConfig::new(self_carried.clone(), frame.carried());
                        let inner = realize(&fun, &ctx, &env, strategy, &pole).justify(&app_frame);
                        pole.expand(Rule::Mu, &from, inner)
                    })
                }
                // Strict argument: a mu step exposes the mu-tilde binder, the
                // argument computes to a value, and a mu-tilde step feeds it
                // to the function.
                Some(arg_ty) => {
                    let fun = (**fun).clone();
                    let arg = (**arg).clone();
                    let ctx = ctx.clone();
                    let env = env.clone();
                    let pole = pole.clone();
                    let self_carried = carried.clone();
                    TruthWitness::new(carried, move |frame| {
                        let from = MConfig::new(self_carried.clone(), frame.carried());
                        let next = step_expect(&from, Rule::Mu);
                        let binder = next.coterm.clone();
                        let cont = {
                            let fun = fun.clone();
                            let ctx = ctx.clone();
                            let env = env.clone();
                            let pole = pole.clone();
                            let frame = frame.clone();
                            let binder = binder.clone();
                            FalsityWitness::new(binder.clone(), move |value| {
                                let inner_from = MConfig::new(value.carried(), binder.clone());
                                let app_frame = FalsityValue::ConsFrame {
                                    arg: Arg::ByValue(Rc::new(value.clone())),
                                    rest: val_coterm(&frame),
                                };
                                let inner =
                                    realize(&fun, &ctx, &env, strategy, &pole).justify(&app_frame);
                                pole.expand(Rule::MuTilde, &inner_from, inner)
                            })
                        };
                        let arg_witness = realize(&arg, &ctx, &env, strategy, &pole);
                        let inner = cut(&arg_ty, &arg_witness, &cont);
                        pole.expand(Rule::Mu, &from, inner)
                    })
                }
            }
        }

        Term::Inj(side, annot, payload) => {
            let payload_ty = match annot {
                Type::Sum(l, r) => side.pick(l.as_ref(), r.as_ref()).clone(),
                _ => bug("injection annotation is not a sum type"),
            };
            let strict = strategy == Strategy::Cbv && polarity(&payload_ty) == Polarity::Positive;
            if !strict {
                let payload_witness = realize(payload, ctx, env, strategy, pole);
                let arg = match strategy {
                    Strategy::Cbn => Arg::ByName(payload_witness),
                    Strategy::Cbv => Arg::ByValue(Rc::new(TruthValue::Neg(payload_witness))),
                };
                val_term(&TruthValue::Sum(*side, arg))
            } else {
                let side = *side;
                let payload = (**payload).clone();
                let ctx = ctx.clone();
                let env = env.clone();
                let pole = pole.clone();
                let self_carried = carried.clone();
                TruthWitness::new(carried, move |frame| {
                    let from = MConfig::new(self_carried.clone(), frame.carried());
                    let next = step_expect(&from, Rule::Mu);
                    let binder = next.coterm.clone();
                    let cont = {
                        let pole = pole.clone();
                        let frame = frame.clone();
                        let binder = binder.clone();
                        FalsityWitness::new(binder.clone(), move |value| {
                            let inner_from = MConfig::new(value.carried(), binder.clone());
                            let sum =
                                TruthValue::Sum(side, Arg::ByValue(Rc::new(value.clone())));
                            let inner = val_term(&sum).justify(&frame);
                            pole.expand(Rule::MuTilde, &inner_from, inner)
                        })
                    };
                    let payload_witness = realize(&payload, &ctx, &env, strategy, &pole);
                    let inner = cut(&payload_ty, &payload_witness, &cont);
                    pole.expand(Rule::Mu, &from, inner)
                })
            }
        }

        Term::Case(scrutinee, branch1, branch2) => {
            let scrut_ty = expect_type(typecheck(ctx, scrutinee));
            let (left_ty, right_ty) = match &scrut_ty {
                Type::Sum(l, r) => ((**l).clone(), (**r).clone()),
                _ => bug("case scrutinee is not at a sum type"),
            };
            let scrutinee = (**scrutinee).clone();
            let branch1 = (**branch1).clone();
            let branch2 = (**branch2).clone();
            let ctx = ctx.clone();
            let env = env.clone();
            let pole = pole.clone();
            let self_carried = carried.clone();
            TruthWitness::new(carried, move |frame| {
                let from = MConfig::new(self_carried.clone(), frame.carried());
                let next = step_expect(&from, Rule::Mu);
                let destructor = next.coterm.clone();
                let cont = {
                    let branch1 = branch1.clone();
                    let branch2 = branch2.clone();
                    let left_ty = left_ty.clone();
                    let right_ty = right_ty.clone();
                    let ctx = ctx.clone();
                    let env = env.clone();
                    let pole = pole.clone();
                    let frame = frame.clone();
                    let destructor = destructor.clone();
                    FalsityWitness::new(destructor.clone(), move |value| match value {
                        TruthValue::Sum(side, payload) => {
                            check_arg_kind(strategy, payload);
                            let inner_from =
                                MConfig::new(value.carried(), destructor.clone());
                            let (branch, branch_ty) = match side {
                                Side::One => (&branch1, &left_ty),
                                Side::Two => (&branch2, &right_ty),
                            };
                            let branch_witness = realize(
                                branch,
                                &ctx.pushed(branch_ty.clone()),
                                &env.pushed(payload.clone()),
                                strategy,
                                &pole,
                            );
                            let inner = branch_witness.justify(&frame);
                            pole.expand(Rule::MuTildeSum, &inner_from, inner)
                        }
                        _ => bug("case scrutinee produced a non-injection value"),
                    })
                };
                let scrut_witness = realize(&scrutinee, &ctx, &env, strategy, &pole);
                let inner = cut(&scrut_ty, &scrut_witness, &cont);
                pole.expand(Rule::Mu, &from, inner)
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Poles
// ---------------------------------------------------------------------------

/// The trace pole: a pole element is a full reduction trace ending in a
/// normal configuration. `expand` refuses to record a step the machine would
/// not take, so every trace this pole builds is self-verifying.
#[derive(Debug, Clone, Copy, Default)]
pub struct TracePole;

impl Pole for TracePole {
    type Elem = Trace;

    fn expand(&self, rule: Rule, from: &MConfig, mut elem: Trace) -> Trace {
        match machine::step(from) {
            Step::Reduced { rule: r, next } if r == rule && next == elem.initial => {}
            other => bug(&format!(
                "anti-reduction along {rule} from {from} does not match the machine ({other:?})"
            )),
        }
        elem.steps.insert(
            0,
            machine::TraceStep { rule, next: elem.initial.clone() },
        );
        elem.initial = from.clone();
        elem
    }

    fn at_covar(&self, value: &TruthValue<Self>) -> Trace {
        let config = MConfig::new(value.carried(), MCoterm::covar(0));
        if !machine::is_normal(&config) {
            bug(&format!("value against the top co-variable is not normal: {config}"));
        }
        Trace::at(config)
    }
}

/// The integer pole: a pole element is a bare natural number. Anti-reduction
/// is the identity; only the literal observed at the co-variable survives.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegerPole;

impl Pole for IntegerPole {
    type Elem = BigUint;

    fn expand(&self, _rule: Rule, _from: &MConfig, elem: BigUint) -> BigUint {
        elem
    }

    fn at_covar(&self, value: &TruthValue<Self>) -> BigUint {
        match value {
            TruthValue::Nat(n) => n.clone(),
            _ => bug("the integer pole observes literals only"),
        }
    }
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    IllTyped(TypeError),
    /// Realizability-driven normalization is offered at positive observable
    /// types only; apply the program to arguments to reach one.
    NegativeObservable(Type),
    IntegerPoleNeedsNat(Type),
}

impl fmt::Display for NormalizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizeError::IllTyped(e) => write!(f, "ill-typed program: {e}"),
            NormalizeError::NegativeObservable(ty) => write!(
                f,
                "normalization is only offered at positive observable types; \
                 this program has the negative type {} (apply it to arguments \
                 to reach a positive type)",
                crate::render::type_to_string(ty)
            ),
            NormalizeError::IntegerPoleNeedsNat(ty) => write!(
                f,
                "the integer pole is defined at type nat only, not {}",
                crate::render::type_to_string(ty)
            ),
        }
    }
}

impl std::error::Error for NormalizeError {}

/// Normalize under the trace pole: the result is a verified reduction trace
/// from `< compiled | alpha0 >` to a normal configuration.
pub fn normalize_trace(t: &Term, strategy: Strategy) -> Result<Trace, NormalizeError> {
    let ty = typecheck(&Context::empty(), t).map_err(NormalizeError::IllTyped)?;
    let pole = TracePole;
    let top = covar_falsity(&ty, &pole).ok_or(NormalizeError::NegativeObservable(ty.clone()))?;
    let witness = realize(t, &Context::empty(), &WitnessEnv::empty(), strategy, &pole);
    Ok(cut(&ty, &witness, &top))
}

/// Normalize under the integer pole; defined at type `nat` only.
pub fn normalize_integer(t: &Term, strategy: Strategy) -> Result<BigUint, NormalizeError> {
    let ty = typecheck(&Context::empty(), t).map_err(NormalizeError::IllTyped)?;
    if ty != Type::Nat {
        return Err(NormalizeError::IntegerPoleNeedsNat(ty));
    }
    let pole = IntegerPole;
    let top = covar_falsity(&ty, &pole).ok_or(NormalizeError::NegativeObservable(ty.clone()))?;
    let witness = realize(t, &Context::empty(), &WitnessEnv::empty(), strategy, &pole);
    Ok(cut(&ty, &witness, &top))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractError {
    NotANatLiteral { final_config: MConfig },
    NotAnInjection { final_config: MConfig },
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractError::NotANatLiteral { final_config } => write!(
                f,
                "final configuration is not a nat literal against a co-variable: {final_config}"
            ),
            ExtractError::NotAnInjection { final_config } => write!(
                f,
                "final configuration is not an injection against a co-variable: {final_config}"
            ),
        }
    }
}

impl std::error::Error for ExtractError {}

/// Read the literal out of a trace ending in `< n | alpha >`.
pub fn extract_nat(tr: &Trace) -> Result<BigUint, ExtractError> {
    match (&tr.final_config.term, &tr.final_config.coterm) {
        (MTerm::Nat { n }, MCoterm::CoVar { .. }) => Ok(n.clone()),
        _ => Err(ExtractError::NotANatLiteral { final_config: tr.final_config.clone() }),
    }
}

/// Read the injection side out of a trace ending in `< inj_i t | alpha >`.
pub fn extract_sum_side(tr: &Trace) -> Result<Side, ExtractError> {
    match (&tr.final_config.term, &tr.final_config.coterm) {
        (MTerm::Inj { side, .. }, MCoterm::CoVar { .. }) => Ok(*side),
        _ => Err(ExtractError::NotAnInjection { final_config: tr.final_config.clone() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{check_trace, run, RunOutcome, TraceCheck, DEFAULT_FUEL};
    use crate::parse::parse_program;

    fn trace_of(src: &str, strategy: Strategy) -> Trace {
        let t = parse_program(src).unwrap();
        normalize_trace(&t, strategy).unwrap()
    }

    #[test]
    fn a_literal_normalizes_in_zero_steps() {
        let tr = trace_of("3", Strategy::Cbn);
        assert!(tr.is_empty());
        assert_eq!(tr.final_config, MConfig::new(MTerm::nat(3), MCoterm::covar(0)));
        assert_eq!(check_trace(&tr), TraceCheck::Valid);
    }

    #[test]
    fn cutting_a_value_against_the_top_covariable() {
        let pole = TracePole;
        let witness = val_term::<TracePole>(&TruthValue::Nat(3u8.into()));
        let top = covar_falsity(&Type::Nat, &pole).unwrap();
        let tr = cut(&Type::Nat, &witness, &top);
        assert!(tr.is_empty());
        assert_eq!(tr.initial, MConfig::new(MTerm::nat(3), MCoterm::covar(0)));
    }

    #[test]
    fn beta_redex_under_cbn_takes_mu_then_mu_cons() {
        let tr = trace_of("(fun x : nat . x) 3", Strategy::Cbn);
        assert_eq!(tr.rules(), vec![Rule::Mu, Rule::MuCons]);
        assert_eq!(tr.final_config, MConfig::new(MTerm::nat(3), MCoterm::covar(0)));
    }

    #[test]
    fn beta_redex_under_cbv_binds_the_evaluated_argument() {
        let tr = trace_of("(fun x : nat . x) 3", Strategy::Cbv);
        assert_eq!(tr.rules(), vec![Rule::Mu, Rule::MuTilde, Rule::MuCons]);
        assert_eq!(tr.final_config, MConfig::new(MTerm::nat(3), MCoterm::covar(0)));
    }

    #[test]
    fn covar_falsity_is_unsupported_at_negative_types() {
        assert!(covar_falsity(&Type::arrow(Type::Nat, Type::Nat), &TracePole).is_none());
        assert!(covar_falsity(&Type::Nat, &TracePole).is_some());
        assert!(covar_falsity(&Type::sum(Type::Unit, Type::Unit), &TracePole).is_some());
    }

    #[test]
    fn normalizing_a_function_is_unsupported() {
        let t = parse_program("fun x : nat . x").unwrap();
        assert!(matches!(
            normalize_trace(&t, Strategy::Cbn),
            Err(NormalizeError::NegativeObservable(_))
        ));
    }

    #[test]
    fn integer_pole_agrees_with_the_oracle() {
        let t = parse_program("if true then 4 else 7").unwrap();
        for strategy in [Strategy::Cbn, Strategy::Cbv] {
            assert_eq!(normalize_integer(&t, strategy), Ok(4u8.into()));
        }
    }

    #[test]
    fn integer_pole_rejects_non_nat_types() {
        let t = parse_program("true").unwrap();
        assert!(matches!(
            normalize_integer(&t, Strategy::Cbn),
            Err(NormalizeError::IntegerPoleNeedsNat(_))
        ));
    }

    #[test]
    fn traces_agree_with_the_machine_exactly() {
        let sources = [
            "(fun x : nat . x) 3",
            "if true then 4 else 7",
            "case inj2{nat+nat} 8 of { inj1 x -> x | inj2 y -> y }",
            "(fun f : nat -> nat . f ((fun y : nat . y) 2)) (fun x : nat . x)",
            "(fun f : nat -> nat . f 1) ((fun g : nat -> nat . g) (fun y : nat . y))",
            "inj1{(nat -> nat) + nat} (fun x : nat . x)",
        ];
        for src in sources {
            let t = parse_program(src).unwrap();
            for strategy in [Strategy::Cbn, Strategy::Cbv] {
                let tr = normalize_trace(&t, strategy).unwrap();
                let compiled = compile::compile(strategy, &t);
                let machine_tr = run(&MConfig::new(compiled, MCoterm::covar(0)), DEFAULT_FUEL);
                match machine_tr {
                    RunOutcome::Normalized(m) => assert_eq!(tr, m, "{src} under {strategy}"),
                    other => panic!("machine did not normalize {src}: {other:?}"),
                }
                assert_eq!(check_trace(&tr), TraceCheck::Valid, "{src} under {strategy}");
            }
        }
    }

    #[test]
    fn extract_nat_demands_a_literal() {
        let tr = trace_of("3", Strategy::Cbn);
        assert_eq!(extract_nat(&tr), Ok(3u8.into()));
        let tr = trace_of("true", Strategy::Cbn);
        assert!(matches!(extract_nat(&tr), Err(ExtractError::NotANatLiteral { .. })));
        assert_eq!(extract_sum_side(&tr), Ok(Side::One));
    }

    #[test]
    fn nested_cases_normalize_to_one_under_all_four_paths() {
        let src = "case (case inj1{unit+unit} () of \
                   { inj1 y1 -> inj2{unit + (unit + unit)} (inj2{unit+unit} y1) \
                   | inj2 y2 -> inj2{unit + (unit + unit)} (inj1{unit+unit} y2) }) of \
                   { inj1 x1 -> 0 | inj2 x2 -> 1 }";
        let t = parse_program(src).unwrap();
        for strategy in [Strategy::Cbn, Strategy::Cbv] {
            assert_eq!(normalize_integer(&t, strategy), Ok(1u8.into()));
            let tr = normalize_trace(&t, strategy).unwrap();
            assert_eq!(tr.final_config, MConfig::new(MTerm::nat(1), MCoterm::covar(0)));
        }
    }
}
