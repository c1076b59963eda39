//! The untyped mu/mu-tilde abstract machine.
//!
//! Configurations pair a term (producer) with a co-term (consumer). Four
//! reduction rules drive the machine:
//!
//! ```text
//! (mu)            < mu a . c        | e >      -->  c[e/a]
//! (mu-tilde)      < t               | mut x . c >  -->  c[t/x]
//! (mu-cons)       < mu(x . a) . c   | t . e >  -->  c[t/x, e/a]
//! (mu-tilde-sum)  < injI t | mut[inj1 x . c1 | inj2 x . c2] >  -->  cI[t/x]
//! ```
//!
//! The presentation is non-confluent on the single critical pair
//! `< mu a . c | mut x . c' >`; this machine fixes it in favor of `mu`, which
//! never matters for call-by-name images (they contain no `mut`) and gives
//! the strict argument order for call-by-value images.
//!
//! Terms and co-terms use separate de Bruijn index spaces. `mu` binds one
//! co-variable, `mut` one term variable, `mu(x . a)` one of each, and each
//! arm of the sum destructor one term variable. The serde encoding of these
//! types is the wire format for traces: every node is a `{"k": ...}` object
//! and a configuration is `{"t": ..., "e": ...}`.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::ast::Side;

pub(crate) mod biguint_decimal {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<BigUint>()
            .map_err(|e| de::Error::custom(format!("bad natural literal: {e}")))
    }
}

/// Machine terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "k", rename_all = "kebab-case")]
pub enum MTerm {
    Var { i: usize },
    /// `mu(x . a) . c` — binds one term variable and one co-variable.
    MuCopat { body: Box<MConfig> },
    /// `mu a . c` — binds one co-variable.
    Mu { body: Box<MConfig> },
    Inj { side: Side, payload: Box<MTerm> },
    Nat {
        #[serde(with = "biguint_decimal")]
        n: BigUint,
    },
    Unit,
}

/// Machine co-terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "k", rename_all = "kebab-case")]
pub enum MCoterm {
    #[serde(rename = "covar")]
    CoVar { i: usize },
    /// `t . e` — an application frame.
    Cons { arg: Box<MTerm>, rest: Box<MCoterm> },
    /// `mut x . c` — binds one term variable.
    MuTilde { body: Box<MConfig> },
    /// `mut[inj1 x . c1 | inj2 x . c2]` — each arm binds one term variable.
    MuTildeSum {
        branch1: Box<MConfig>,
        branch2: Box<MConfig>,
    },
}

/// A machine configuration `< t | e >`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MConfig {
    #[serde(rename = "t")]
    pub term: MTerm,
    #[serde(rename = "e")]
    pub coterm: MCoterm,
}

impl MTerm {
    pub fn var(i: usize) -> MTerm {
        MTerm::Var { i }
    }

    pub fn mu(body: MConfig) -> MTerm {
        MTerm::Mu { body: Box::new(body) }
    }

    pub fn mu_copat(body: MConfig) -> MTerm {
        MTerm::MuCopat { body: Box::new(body) }
    }

    pub fn inj(side: Side, payload: MTerm) -> MTerm {
        MTerm::Inj { side, payload: Box::new(payload) }
    }

    pub fn nat(n: u64) -> MTerm {
        MTerm::Nat { n: BigUint::from(n) }
    }

    pub fn nat_big(n: BigUint) -> MTerm {
        MTerm::Nat { n }
    }

    pub fn unit() -> MTerm {
        MTerm::Unit
    }
}

impl MCoterm {
    pub fn covar(i: usize) -> MCoterm {
        MCoterm::CoVar { i }
    }

    pub fn cons(arg: MTerm, rest: MCoterm) -> MCoterm {
        MCoterm::Cons { arg: Box::new(arg), rest: Box::new(rest) }
    }

    pub fn mu_tilde(body: MConfig) -> MCoterm {
        MCoterm::MuTilde { body: Box::new(body) }
    }

    pub fn mu_tilde_sum(branch1: MConfig, branch2: MConfig) -> MCoterm {
        MCoterm::MuTildeSum {
            branch1: Box::new(branch1),
            branch2: Box::new(branch2),
        }
    }
}

impl MConfig {
    pub fn new(term: MTerm, coterm: MCoterm) -> MConfig {
        MConfig { term, coterm }
    }
}

/// The four reduction rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Mu,
    MuTilde,
    MuCons,
    MuTildeSum,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Mu => write!(f, "mu"),
            Rule::MuTilde => write!(f, "mu-tilde"),
            Rule::MuCons => write!(f, "mu-cons"),
            Rule::MuTildeSum => write!(f, "mu-tilde-sum"),
        }
    }
}

/// One recorded reduction step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub next: MConfig,
}

/// A reduction sequence from `initial` to `final`, each step labelled with
/// the rule that produced it. A valid trace ends in a normal configuration;
/// see [`check_trace`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub initial: MConfig,
    pub steps: Vec<TraceStep>,
    #[serde(rename = "final")]
    pub final_config: MConfig,
}

impl Trace {
    /// The zero-step trace at a configuration.
    pub fn at(config: MConfig) -> Trace {
        Trace {
            initial: config.clone(),
            steps: Vec::new(),
            final_config: config,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.steps.iter().map(|s| s.rule).collect()
    }
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

struct VarMaps<'a> {
    on_term: &'a dyn Fn(usize, usize, usize) -> MTerm,
    on_coterm: &'a dyn Fn(usize, usize, usize) -> MCoterm,
}

fn map_term(t: &MTerm, td: usize, cd: usize, m: &VarMaps) -> MTerm {
    match t {
        MTerm::Var { i } => {
            if *i < td {
                MTerm::var(*i)
            } else {
                (m.on_term)(*i, td, cd)
            }
        }
        MTerm::MuCopat { body } => MTerm::mu_copat(map_config(body, td + 1, cd + 1, m)),
        MTerm::Mu { body } => MTerm::mu(map_config(body, td, cd + 1, m)),
        MTerm::Inj { side, payload } => MTerm::inj(*side, map_term(payload, td, cd, m)),
        MTerm::Nat { n } => MTerm::Nat { n: n.clone() },
        MTerm::Unit => MTerm::Unit,
    }
}

fn map_coterm(e: &MCoterm, td: usize, cd: usize, m: &VarMaps) -> MCoterm {
    match e {
        MCoterm::CoVar { i } => {
            if *i < cd {
                MCoterm::covar(*i)
            } else {
                (m.on_coterm)(*i, td, cd)
            }
        }
        MCoterm::Cons { arg, rest } => {
            MCoterm::cons(map_term(arg, td, cd, m), map_coterm(rest, td, cd, m))
        }
        MCoterm::MuTilde { body } => MCoterm::mu_tilde(map_config(body, td + 1, cd, m)),
        MCoterm::MuTildeSum { branch1, branch2 } => MCoterm::mu_tilde_sum(
            map_config(branch1, td + 1, cd, m),
            map_config(branch2, td + 1, cd, m),
        ),
    }
}

fn map_config(c: &MConfig, td: usize, cd: usize, m: &VarMaps) -> MConfig {
    MConfig::new(map_term(&c.term, td, cd, m), map_coterm(&c.coterm, td, cd, m))
}

/// Shift the free variables of a term: term indices by `t_by`, co-term
/// indices by `c_by`.
pub fn shift_mterm(t: &MTerm, t_by: usize, c_by: usize) -> MTerm {
    if t_by == 0 && c_by == 0 {
        return t.clone();
    }
    map_term(
        t,
        0,
        0,
        &VarMaps {
            on_term: &|i, _, _| MTerm::var(i + t_by),
            on_coterm: &|i, _, _| MCoterm::covar(i + c_by),
        },
    )
}

/// Shift the free variables of a co-term.
pub fn shift_mcoterm(e: &MCoterm, t_by: usize, c_by: usize) -> MCoterm {
    if t_by == 0 && c_by == 0 {
        return e.clone();
    }
    map_coterm(
        e,
        0,
        0,
        &VarMaps {
            on_term: &|i, _, _| MTerm::var(i + t_by),
            on_coterm: &|i, _, _| MCoterm::covar(i + c_by),
        },
    )
}

/// Capture-avoiding simultaneous substitution of free term and co-term
/// variables in a configuration. Identity maps return the input unchanged.
pub fn subst_config(
    c: &MConfig,
    term_env: &HashMap<usize, MTerm>,
    coterm_env: &HashMap<usize, MCoterm>,
) -> MConfig {
    map_config(
        c,
        0,
        0,
        &VarMaps {
            on_term: &|i, td, cd| match term_env.get(&(i - td)) {
                Some(img) => shift_mterm(img, td, cd),
                None => MTerm::var(i),
            },
            on_coterm: &|i, td, cd| match coterm_env.get(&(i - cd)) {
                Some(img) => shift_mcoterm(img, td, cd),
                None => MCoterm::covar(i),
            },
        },
    )
}

/// Substitute the free term variables of a term through a map, leaving
/// co-variables alone.
pub fn subst_mterm_vars(t: &MTerm, term_env: &HashMap<usize, MTerm>) -> MTerm {
    map_term(
        t,
        0,
        0,
        &VarMaps {
            on_term: &|i, td, cd| match term_env.get(&(i - td)) {
                Some(img) => shift_mterm(img, td, cd),
                None => MTerm::var(i),
            },
            on_coterm: &|i, _, _| MCoterm::covar(i),
        },
    )
}

/// Instantiate the binders of a configuration body: replace term index 0
/// with `term0` and/or co-term index 0 with `coterm0`, lowering the other
/// free indices of each instantiated space by one.
fn inst_config(c: &MConfig, term0: Option<&MTerm>, coterm0: Option<&MCoterm>) -> MConfig {
    map_config(
        c,
        0,
        0,
        &VarMaps {
            on_term: &|i, td, cd| match term0 {
                Some(img) => {
                    if i == td {
                        shift_mterm(img, td, cd)
                    } else {
                        MTerm::var(i - 1)
                    }
                }
                None => MTerm::var(i),
            },
            on_coterm: &|i, td, cd| match coterm0 {
                Some(img) => {
                    if i == cd {
                        shift_mcoterm(img, td, cd)
                    } else {
                        MCoterm::covar(i - 1)
                    }
                }
                None => MCoterm::covar(i),
            },
        },
    )
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

/// Result of one machine step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Reduced { rule: Rule, next: MConfig },
    /// No rule applies and the configuration is a legitimate stopping point:
    /// `< x | e >` with `e` neither `mut` nor a sum destructor, or
    /// `< t | a >` with `t` not a `mu`.
    Normal,
    /// No rule applies and the configuration is an ill-formed cut.
    Stuck { reason: String },
}

/// Apply exactly one reduction rule, with priority
/// mu-cons > mu-tilde-sum > mu > mu-tilde. The priority only matters on the
/// critical pair `< mu a . c | mut x . c' >`, which resolves to `mu`.
pub fn step(c: &MConfig) -> Step {
    match (&c.term, &c.coterm) {
        (MTerm::MuCopat { body }, MCoterm::Cons { arg, rest }) => Step::Reduced {
            rule: Rule::MuCons,
            next: inst_config(body, Some(arg), Some(rest)),
        },
        (MTerm::Inj { side, payload }, MCoterm::MuTildeSum { branch1, branch2 }) => {
            let branch = side.pick(branch1, branch2);
            Step::Reduced {
                rule: Rule::MuTildeSum,
                next: inst_config(branch, Some(payload), None),
            }
        }
        (MTerm::Mu { body }, e) => Step::Reduced {
            rule: Rule::Mu,
            next: inst_config(body, None, Some(e)),
        },
        (t, MCoterm::MuTilde { body }) => Step::Reduced {
            rule: Rule::MuTilde,
            next: inst_config(body, Some(t), None),
        },
        (MTerm::Var { .. }, MCoterm::CoVar { .. } | MCoterm::Cons { .. }) => Step::Normal,
        (_, MCoterm::CoVar { .. }) => Step::Normal,
        (MTerm::Inj { .. }, MCoterm::Cons { .. }) => Step::Stuck {
            reason: "constructor against application frame".into(),
        },
        (MTerm::Nat { .. }, MCoterm::Cons { .. }) => Step::Stuck {
            reason: "literal against application frame".into(),
        },
        (MTerm::Unit, MCoterm::Cons { .. }) => Step::Stuck {
            reason: "unit against application frame".into(),
        },
        (MTerm::Var { .. }, MCoterm::MuTildeSum { .. }) => Step::Stuck {
            reason: "variable against sum destructor".into(),
        },
        (MTerm::MuCopat { .. }, MCoterm::MuTildeSum { .. }) => Step::Stuck {
            reason: "function abstraction against sum destructor".into(),
        },
        (MTerm::Nat { .. }, MCoterm::MuTildeSum { .. }) => Step::Stuck {
            reason: "literal against sum destructor".into(),
        },
        (MTerm::Unit, MCoterm::MuTildeSum { .. }) => Step::Stuck {
            reason: "unit against sum destructor".into(),
        },
    }
}

/// True when the configuration is a normal stopping point.
pub fn is_normal(c: &MConfig) -> bool {
    matches!(step(c), Step::Normal)
}

pub const DEFAULT_FUEL: u64 = 100_000;

/// Result of running the machine to quiescence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    Normalized(Trace),
    Stuck { reason: String, partial: Trace },
    FuelExhausted { partial: Trace },
}

impl RunOutcome {
    pub fn trace(&self) -> &Trace {
        match self {
            RunOutcome::Normalized(t) => t,
            RunOutcome::Stuck { partial, .. } => partial,
            RunOutcome::FuelExhausted { partial } => partial,
        }
    }

    pub fn into_normalized(self) -> Option<Trace> {
        match self {
            RunOutcome::Normalized(t) => Some(t),
            _ => None,
        }
    }
}

/// Iterate [`step`], recording each rule and configuration.
pub fn run(initial: &MConfig, fuel: u64) -> RunOutcome {
    let mut steps = Vec::new();
    let mut current = initial.clone();
    let mut budget = fuel;
    loop {
        match step(&current) {
            Step::Reduced { rule, next } => {
                steps.push(TraceStep { rule, next: next.clone() });
                current = next;
            }
            Step::Normal => {
                return RunOutcome::Normalized(Trace {
                    initial: initial.clone(),
                    steps,
                    final_config: current,
                });
            }
            Step::Stuck { reason } => {
                return RunOutcome::Stuck {
                    reason,
                    partial: Trace {
                        initial: initial.clone(),
                        steps,
                        final_config: current,
                    },
                };
            }
        }
        if budget == 0 {
            return RunOutcome::FuelExhausted {
                partial: Trace {
                    initial: initial.clone(),
                    steps,
                    final_config: current,
                },
            };
        }
        budget -= 1;
    }
}

/// Verdict of [`check_trace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceCheck {
    Valid,
    Invalid { position: usize, reason: String },
}

impl TraceCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, TraceCheck::Valid)
    }
}

/// Check that every recorded step is the machine's own step (same rule, same
/// resulting configuration) and that the trace ends in a normal
/// configuration. This is the executable meaning of membership in the pole.
pub fn check_trace(tr: &Trace) -> TraceCheck {
    let mut current = &tr.initial;
    for (position, s) in tr.steps.iter().enumerate() {
        match step(current) {
            Step::Reduced { rule, next } => {
                if rule != s.rule {
                    return TraceCheck::Invalid {
                        position,
                        reason: format!("recorded rule {} but the machine applies {}", s.rule, rule),
                    };
                }
                if next != s.next {
                    return TraceCheck::Invalid {
                        position,
                        reason: "recorded configuration differs from the machine's step".into(),
                    };
                }
            }
            Step::Normal => {
                return TraceCheck::Invalid {
                    position,
                    reason: "step recorded at a normal configuration".into(),
                }
            }
            Step::Stuck { reason } => {
                return TraceCheck::Invalid {
                    position,
                    reason: format!("step recorded at a stuck configuration: {reason}"),
                }
            }
        }
        current = &s.next;
    }
    if *current != tr.final_config {
        return TraceCheck::Invalid {
            position: tr.steps.len(),
            reason: "final configuration does not close the step list".into(),
        };
    }
    if !is_normal(&tr.final_config) {
        return TraceCheck::Invalid {
            position: tr.steps.len(),
            reason: "final configuration is not normal".into(),
        };
    }
    TraceCheck::Valid
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

/// The free co-term variables of a machine term.
pub fn free_covars(t: &MTerm) -> BTreeSet<usize> {
    let mut frees = Frees::default();
    frees.term(t, 0, 0);
    frees.covars
}

/// The free term variables of a machine term.
pub fn free_tvars(t: &MTerm) -> BTreeSet<usize> {
    let mut frees = Frees::default();
    frees.term(t, 0, 0);
    frees.tvars
}

#[derive(Default)]
struct Frees {
    tvars: BTreeSet<usize>,
    covars: BTreeSet<usize>,
}

impl Frees {
    fn term(&mut self, t: &MTerm, td: usize, cd: usize) {
        match t {
            MTerm::Var { i } => {
                if *i >= td {
                    self.tvars.insert(i - td);
                }
            }
            MTerm::MuCopat { body } => self.config(body, td + 1, cd + 1),
            MTerm::Mu { body } => self.config(body, td, cd + 1),
            MTerm::Inj { payload, .. } => self.term(payload, td, cd),
            MTerm::Nat { .. } | MTerm::Unit => {}
        }
    }

    fn coterm(&mut self, e: &MCoterm, td: usize, cd: usize) {
        match e {
            MCoterm::CoVar { i } => {
                if *i >= cd {
                    self.covars.insert(i - cd);
                }
            }
            MCoterm::Cons { arg, rest } => {
                self.term(arg, td, cd);
                self.coterm(rest, td, cd);
            }
            MCoterm::MuTilde { body } => self.config(body, td + 1, cd),
            MCoterm::MuTildeSum { branch1, branch2 } => {
                self.config(branch1, td + 1, cd);
                self.config(branch2, td + 1, cd);
            }
        }
    }

    fn config(&mut self, c: &MConfig, td: usize, cd: usize) {
        self.term(&c.term, td, cd);
        self.coterm(&c.coterm, td, cd);
    }
}

/// True when the term contains a `mut` binder anywhere.
pub fn contains_mu_tilde(t: &MTerm) -> bool {
    fn in_term(t: &MTerm) -> bool {
        match t {
            MTerm::Var { .. } | MTerm::Nat { .. } | MTerm::Unit => false,
            MTerm::MuCopat { body } | MTerm::Mu { body } => in_config(body),
            MTerm::Inj { payload, .. } => in_term(payload),
        }
    }
    fn in_coterm(e: &MCoterm) -> bool {
        match e {
            MCoterm::CoVar { .. } => false,
            MCoterm::Cons { arg, rest } => in_term(arg) || in_coterm(rest),
            MCoterm::MuTilde { .. } => true,
            MCoterm::MuTildeSum { branch1, branch2 } => in_config(branch1) || in_config(branch2),
        }
    }
    fn in_config(c: &MConfig) -> bool {
        in_term(&c.term) || in_coterm(&c.coterm)
    }
    in_term(t)
}
