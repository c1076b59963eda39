//! Deterministic pretty-printing for every syntactic category.
//!
//! Source terms and types print in the surface grammar and re-parse to an
//! alpha-equivalent term (binder names are generated: `x`, `x1`, `x2`, ...).
//! Machine objects print in the abstract-machine notation with generated
//! co-variable names `a0`, `a1`, ...; a free co-variable at index `k` prints
//! as `alphak`, so the ambient top-level co-variable reads `alpha0`.

use std::fmt;

use crate::ast::{Term, Type};
use crate::machine::{MConfig, MCoterm, MTerm, Trace};

#[derive(Default)]
struct Namer {
    terms: usize,
    cos: usize,
}

impl Namer {
    fn fresh_term(&mut self) -> String {
        let n = self.terms;
        self.terms += 1;
        if n == 0 {
            "x".to_string()
        } else {
            format!("x{n}")
        }
    }

    fn fresh_co(&mut self) -> String {
        let n = self.cos;
        self.cos += 1;
        format!("a{n}")
    }
}

fn wrap(s: String, parens: bool) -> String {
    if parens {
        format!("({s})")
    } else {
        s
    }
}

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

pub fn type_to_string(ty: &Type) -> String {
    // Precedence: 0 arrow, 1 sum, 2 atom; both connectives right-associative.
    fn go(ty: &Type, prec: u8) -> String {
        match ty {
            Type::Nat => "nat".into(),
            Type::Unit => "unit".into(),
            Type::Arrow(a, b) => wrap(format!("{} -> {}", go(a, 1), go(b, 0)), prec > 0),
            Type::Sum(a, b) => wrap(format!("{} + {}", go(a, 2), go(b, 1)), prec > 1),
        }
    }
    go(ty, 0)
}

// ---------------------------------------------------------------------------
// Source terms
// ---------------------------------------------------------------------------

pub fn term_to_string(t: &Term) -> String {
    let mut namer = Namer::default();
    let mut env = Vec::new();
    go_term(t, 0, &mut env, &mut namer)
}

// Precedence: 0 full term, 1 application spine, 2 atom.
fn go_term(t: &Term, prec: u8, env: &mut Vec<String>, namer: &mut Namer) -> String {
    match t {
        Term::Var(i) => var_name(env, *i),
        Term::NatLit(n) => n.to_string(),
        Term::UnitIntro => "()".into(),
        Term::Lam(annot, body) => {
            let name = namer.fresh_term();
            env.push(name.clone());
            let body_s = go_term(body, 0, env, namer);
            env.pop();
            wrap(
                format!("fun {} : {} . {}", name, type_to_string(annot), body_s),
                prec > 0,
            )
        }
        Term::App(f, a) => {
            let f_s = go_term(f, 1, env, namer);
            let a_s = go_term(a, 2, env, namer);
            wrap(format!("{f_s} {a_s}"), prec > 1)
        }
        Term::Inj(side, annot, payload) => {
            let payload_s = go_term(payload, 0, env, namer);
            wrap(
                format!("inj{}{{{}}} {}", side.index(), type_to_string(annot), payload_s),
                prec > 0,
            )
        }
        Term::Case(scrutinee, branch1, branch2) => {
            let s = go_term(scrutinee, 0, env, namer);
            let n1 = namer.fresh_term();
            env.push(n1.clone());
            let b1 = go_term(branch1, 0, env, namer);
            env.pop();
            let n2 = namer.fresh_term();
            env.push(n2.clone());
            let b2 = go_term(branch2, 0, env, namer);
            env.pop();
            wrap(
                format!("case {s} of {{ inj1 {n1} -> {b1} | inj2 {n2} -> {b2} }}"),
                prec > 0,
            )
        }
    }
}

fn var_name(env: &[String], index: usize) -> String {
    if index < env.len() {
        env[env.len() - 1 - index].clone()
    } else {
        format!("free{}", index - env.len())
    }
}

fn covar_name(env: &[String], index: usize) -> String {
    if index < env.len() {
        env[env.len() - 1 - index].clone()
    } else {
        format!("alpha{}", index - env.len())
    }
}

// ---------------------------------------------------------------------------
// Machine objects
// ---------------------------------------------------------------------------

pub fn mterm_to_string(t: &MTerm) -> String {
    let mut namer = Namer::default();
    go_mterm(t, false, &mut Vec::new(), &mut Vec::new(), &mut namer)
}

pub fn mcoterm_to_string(e: &MCoterm) -> String {
    let mut namer = Namer::default();
    go_mcoterm(e, &mut Vec::new(), &mut Vec::new(), &mut namer)
}

pub fn mconfig_to_string(c: &MConfig) -> String {
    let mut namer = Namer::default();
    go_mconfig(c, &mut Vec::new(), &mut Vec::new(), &mut namer)
}

/// One line for the initial configuration, then one rule-labelled line per
/// step.
pub fn trace_to_string(tr: &Trace) -> String {
    let mut out = mconfig_to_string(&tr.initial);
    for step in &tr.steps {
        out.push_str(&format!("\n--{}--> {}", step.rule, mconfig_to_string(&step.next)));
    }
    out
}

fn go_mterm(
    t: &MTerm,
    atom: bool,
    tenv: &mut Vec<String>,
    cenv: &mut Vec<String>,
    namer: &mut Namer,
) -> String {
    match t {
        MTerm::Var { i } => var_name(tenv, *i),
        MTerm::Nat { n } => n.to_string(),
        MTerm::Unit => "()".into(),
        MTerm::Inj { side, payload } => {
            let p = go_mterm(payload, true, tenv, cenv, namer);
            wrap(format!("inj{} {}", side.index(), p), atom)
        }
        MTerm::Mu { body } => {
            let a = namer.fresh_co();
            cenv.push(a.clone());
            let b = go_mconfig(body, tenv, cenv, namer);
            cenv.pop();
            wrap(format!("mu {a} . {b}"), atom)
        }
        MTerm::MuCopat { body } => {
            let x = namer.fresh_term();
            let a = namer.fresh_co();
            tenv.push(x.clone());
            cenv.push(a.clone());
            let b = go_mconfig(body, tenv, cenv, namer);
            cenv.pop();
            tenv.pop();
            wrap(format!("mu({x} . {a}) {b}"), atom)
        }
    }
}

fn go_mcoterm(
    e: &MCoterm,
    tenv: &mut Vec<String>,
    cenv: &mut Vec<String>,
    namer: &mut Namer,
) -> String {
    match e {
        MCoterm::CoVar { i } => covar_name(cenv, *i),
        MCoterm::Cons { arg, rest } => {
            let a = go_mterm(arg, true, tenv, cenv, namer);
            let r = go_mcoterm(rest, tenv, cenv, namer);
            format!("{a} . {r}")
        }
        MCoterm::MuTilde { body } => {
            let x = namer.fresh_term();
            tenv.push(x.clone());
            let b = go_mconfig(body, tenv, cenv, namer);
            tenv.pop();
            format!("mut {x} . {b}")
        }
        MCoterm::MuTildeSum { branch1, branch2 } => {
            let x1 = namer.fresh_term();
            tenv.push(x1.clone());
            let b1 = go_mconfig(branch1, tenv, cenv, namer);
            tenv.pop();
            let x2 = namer.fresh_term();
            tenv.push(x2.clone());
            let b2 = go_mconfig(branch2, tenv, cenv, namer);
            tenv.pop();
            format!("mut[inj1 {x1} . {b1} | inj2 {x2} . {b2}]")
        }
    }
}

fn go_mconfig(
    c: &MConfig,
    tenv: &mut Vec<String>,
    cenv: &mut Vec<String>,
    namer: &mut Namer,
) -> String {
    let t = go_mterm(&c.term, false, tenv, cenv, namer);
    let e = go_mcoterm(&c.coterm, tenv, cenv, namer);
    format!("< {t} | {e} >")
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", type_to_string(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", term_to_string(self))
    }
}

impl fmt::Display for MTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", mterm_to_string(self))
    }
}

impl fmt::Display for MCoterm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", mcoterm_to_string(self))
    }
}

impl fmt::Display for MConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", mconfig_to_string(self))
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", trace_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    #[test]
    fn identity_renders_in_surface_syntax() {
        let t = Term::lam(Type::Nat, Term::Var(0));
        assert_eq!(term_to_string(&t), "fun x : nat . x");
    }

    #[test]
    fn compiled_identity_renders_in_machine_notation() {
        let t = crate::compile::compile_cbn(&Term::lam(Type::Nat, Term::Var(0)));
        assert_eq!(mterm_to_string(&t), "mu(x . a0) < x | a0 >");
    }

    #[test]
    fn rendering_round_trips_through_the_parser() {
        let sources = [
            "fun x : nat . x",
            "(fun x : nat . x) 3",
            "case inj1{nat+unit} 3 of { inj1 x -> x | inj2 y -> 0 }",
            "fun f : (nat -> nat) -> nat . f (fun x : nat . x)",
            "if true then 4 else 7",
            "inj2{nat + (unit + unit)} true",
        ];
        for src in sources {
            let t = parse_program(src).unwrap();
            let printed = term_to_string(&t);
            let back = parse_program(&printed)
                .unwrap_or_else(|e| panic!("render of {src:?} did not re-parse: {printed:?}: {e}"));
            assert_eq!(back, t, "round trip changed {src:?} (printed {printed:?})");
        }
    }

    #[test]
    fn types_print_with_minimal_parentheses() {
        let ty = Type::arrow(
            Type::arrow(Type::Nat, Type::Unit),
            Type::sum(Type::Nat, Type::sum(Type::Unit, Type::Nat)),
        );
        assert_eq!(type_to_string(&ty), "(nat -> unit) -> nat + unit + nat");
        def_round_trip(&ty);
        let ty = Type::sum(Type::sum(Type::Nat, Type::Unit), Type::Nat);
        assert_eq!(type_to_string(&ty), "(nat + unit) + nat");
        def_round_trip(&ty);
    }

    fn def_round_trip(ty: &Type) {
        let printed = type_to_string(ty);
        assert_eq!(crate::parse::parse_type(&printed).unwrap(), *ty);
    }

    #[test]
    fn free_covariables_print_as_alpha() {
        let c = MConfig::new(MTerm::nat(3), MCoterm::covar(0));
        assert_eq!(mconfig_to_string(&c), "< 3 | alpha0 >");
    }

    #[test]
    fn traces_render_one_labelled_line_per_step() {
        let c = MConfig::new(
            MTerm::mu(MConfig::new(MTerm::nat(3), MCoterm::covar(0))),
            MCoterm::covar(0),
        );
        let tr = crate::machine::run(&c, 10).into_normalized().unwrap();
        let printed = trace_to_string(&tr);
        let lines: Vec<&str> = printed.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("--mu--> "));
    }
}
