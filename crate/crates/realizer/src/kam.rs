//! The Krivine abstract machine for the arrow-only fragment.
//!
//! Contexts are bare argument stacks, so the machine needs just two rules:
//!
//! ```text
//! (1) < t u   | e >      -->  < t | u . e >
//! (2) < \x. t | u . e >  -->  < t[u/x] | e >
//! ```
//!
//! It simulates weak call-by-name reduction of untyped lambda-terms. The
//! full language needs the richer mu/mu-tilde machine; this fragment is kept
//! because its two rules are the smallest instance of the whole story.

use crate::ast::Term;

/// Untyped lambda-terms, de Bruijn indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KTerm {
    Var(usize),
    Lam(Box<KTerm>),
    App(Box<KTerm>, Box<KTerm>),
}

impl KTerm {
    pub fn lam(body: KTerm) -> KTerm {
        KTerm::Lam(Box::new(body))
    }

    pub fn app(fun: KTerm, arg: KTerm) -> KTerm {
        KTerm::App(Box::new(fun), Box::new(arg))
    }

    /// Erase an arrow-only source term (annotations dropped). Returns `None`
    /// if the term uses sums, literals or unit.
    pub fn from_source(t: &Term) -> Option<KTerm> {
        match t {
            Term::Var(i) => Some(KTerm::Var(*i)),
            Term::Lam(_, b) => Some(KTerm::lam(KTerm::from_source(b)?)),
            Term::App(f, a) => Some(KTerm::app(KTerm::from_source(f)?, KTerm::from_source(a)?)),
            _ => None,
        }
    }
}

/// Argument stacks: the empty context or a pushed argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KContext {
    Star,
    Cons(KTerm, Box<KContext>),
}

impl KContext {
    pub fn cons(arg: KTerm, rest: KContext) -> KContext {
        KContext::Cons(arg, Box::new(rest))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KConfig {
    pub term: KTerm,
    pub context: KContext,
}

impl KConfig {
    pub fn new(term: KTerm, context: KContext) -> KConfig {
        KConfig { term, context }
    }

    /// Load a term against the empty context.
    pub fn load(term: KTerm) -> KConfig {
        KConfig::new(term, KContext::Star)
    }
}

/// The two reduction rules, in the order they are numbered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KamRule {
    /// Rule (1): push the argument of an application onto the context.
    Push,
    /// Rule (2): a lambda grabs the top of the context and substitutes.
    Grab,
}

fn shift(t: &KTerm, by: usize, cutoff: usize) -> KTerm {
    match t {
        KTerm::Var(i) => {
            if *i >= cutoff {
                KTerm::Var(i + by)
            } else {
                KTerm::Var(*i)
            }
        }
        KTerm::Lam(b) => KTerm::lam(shift(b, by, cutoff + 1)),
        KTerm::App(f, a) => KTerm::app(shift(f, by, cutoff), shift(a, by, cutoff)),
    }
}

fn instantiate(body: &KTerm, arg: &KTerm) -> KTerm {
    fn go(t: &KTerm, arg: &KTerm, depth: usize) -> KTerm {
        match t {
            KTerm::Var(i) => {
                if *i == depth {
                    shift(arg, depth, 0)
                } else if *i > depth {
                    KTerm::Var(i - 1)
                } else {
                    KTerm::Var(*i)
                }
            }
            KTerm::Lam(b) => KTerm::lam(go(b, arg, depth + 1)),
            KTerm::App(f, a) => KTerm::app(go(f, arg, depth), go(a, arg, depth)),
        }
    }
    go(body, arg, 0)
}

/// Apply one rule, or return `None` when neither applies.
pub fn kam_step(c: &KConfig) -> Option<(KamRule, KConfig)> {
    match (&c.term, &c.context) {
        (KTerm::App(f, a), e) => Some((
            KamRule::Push,
            KConfig::new((**f).clone(), KContext::cons((**a).clone(), e.clone())),
        )),
        (KTerm::Lam(body), KContext::Cons(arg, rest)) => Some((
            KamRule::Grab,
            KConfig::new(instantiate(body, arg), (**rest).clone()),
        )),
        _ => None,
    }
}

/// Result of running the machine: the last configuration reached, the rules
/// applied in order, and whether fuel ran out first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KamRun {
    pub final_config: KConfig,
    pub rules: Vec<KamRule>,
    pub fuel_exhausted: bool,
}

impl KamRun {
    pub fn step_count(&self) -> usize {
        self.rules.len()
    }
}

/// Iterate [`kam_step`] until neither rule applies.
pub fn kam_run(initial: &KConfig, fuel: u64) -> KamRun {
    let mut current = initial.clone();
    let mut rules = Vec::new();
    let mut budget = fuel;
    while let Some((rule, next)) = kam_step(&current) {
        if budget == 0 {
            return KamRun { final_config: current, rules, fuel_exhausted: true };
        }
        budget -= 1;
        rules.push(rule);
        current = next;
    }
    KamRun { final_config: current, rules, fuel_exhausted: false }
}
