//! Source-language abstract syntax: types, terms, polarity.
//!
//! Terms use de Bruijn indices for term variables; names exist only in the
//! parser and the pretty-printer. Injections carry their full sum type so
//! that type checking stays syntax-directed.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Which injection of a sum. Serialized as the number 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Side {
    One,
    Two,
}

impl From<Side> for u8 {
    fn from(s: Side) -> u8 {
        s.index()
    }
}

impl TryFrom<u8> for Side {
    type Error = String;

    fn try_from(i: u8) -> Result<Side, String> {
        Side::from_index(i).ok_or_else(|| format!("injection side must be 1 or 2, got {i}"))
    }
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Side> {
        match i {
            1 => Some(Side::One),
            2 => Some(Side::Two),
            _ => None,
        }
    }

    /// Project the component of a sum type selected by this side.
    pub fn pick<'a, T>(self, left: &'a T, right: &'a T) -> &'a T {
        match self {
            Side::One => left,
            Side::Two => right,
        }
    }
}

/// Source types. `nat` and sums are positive, `unit` and arrows negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Nat,
    Unit,
    Sum(Box<Type>, Box<Type>),
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub fn sum(left: Type, right: Type) -> Type {
        Type::Sum(Box::new(left), Box::new(right))
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Box::new(dom), Box::new(cod))
    }

    /// `bool` is sugar for `unit + unit`.
    pub fn bool() -> Type {
        Type::sum(Type::Unit, Type::Unit)
    }

    pub fn polarity(&self) -> Polarity {
        polarity(self)
    }
}

/// Polarity of a type: positive types are defined by their constructors,
/// negative types by their destructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

/// Classify a type. `nat` and sums are positive; `unit` and arrows negative.
pub fn polarity(ty: &Type) -> Polarity {
    match ty {
        Type::Nat | Type::Sum(_, _) => Polarity::Positive,
        Type::Unit | Type::Arrow(_, _) => Polarity::Negative,
    }
}

/// Source terms, de Bruijn indexed. Case branches each bind one variable
/// (index 0 inside the branch body).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    /// `fun x : annot . body`
    Lam(Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// `injN{annot} payload`; the annotation must be a sum type.
    Inj(Side, Type, Box<Term>),
    /// `case scrutinee of { inj1 x -> branch1 | inj2 y -> branch2 }`
    Case(Box<Term>, Box<Term>, Box<Term>),
    UnitIntro,
    NatLit(BigUint),
}

impl Term {
    pub fn lam(annot: Type, body: Term) -> Term {
        Term::Lam(annot, Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    pub fn inj(side: Side, annot: Type, payload: Term) -> Term {
        Term::Inj(side, annot, Box::new(payload))
    }

    pub fn case(scrutinee: Term, branch1: Term, branch2: Term) -> Term {
        Term::Case(Box::new(scrutinee), Box::new(branch1), Box::new(branch2))
    }

    pub fn nat(n: u64) -> Term {
        Term::NatLit(BigUint::from(n))
    }

    /// `true` is the first injection into `unit + unit`.
    pub fn tru() -> Term {
        Term::inj(Side::One, Type::bool(), Term::UnitIntro)
    }

    /// `false` is the second injection into `unit + unit`.
    pub fn fls() -> Term {
        Term::inj(Side::Two, Type::bool(), Term::UnitIntro)
    }

    /// `if c then a else b` desugars to a case with ignored binders, so the
    /// branch bodies are weakened past the new binder.
    pub fn ite(cond: Term, then: Term, els: Term) -> Term {
        Term::case(cond, shift(&then, 1, 0), shift(&els, 1, 0))
    }

    /// True when every index is bound, i.e. the term makes sense under a
    /// context of `depth` binders.
    pub fn closed_under(&self, depth: usize) -> bool {
        match self {
            Term::Var(i) => *i < depth,
            Term::Lam(_, b) => b.closed_under(depth + 1),
            Term::App(f, a) => f.closed_under(depth) && a.closed_under(depth),
            Term::Inj(_, _, p) => p.closed_under(depth),
            Term::Case(s, b1, b2) => {
                s.closed_under(depth) && b1.closed_under(depth + 1) && b2.closed_under(depth + 1)
            }
            Term::UnitIntro | Term::NatLit(_) => true,
        }
    }
}

/// Shift free variables (indices >= cutoff) up by `by`.
pub fn shift(t: &Term, by: usize, cutoff: usize) -> Term {
    match t {
        Term::Var(i) => {
            if *i >= cutoff {
                Term::Var(i + by)
            } else {
                Term::Var(*i)
            }
        }
        Term::Lam(a, b) => Term::Lam(a.clone(), Box::new(shift(b, by, cutoff + 1))),
        Term::App(f, u) => Term::app(shift(f, by, cutoff), shift(u, by, cutoff)),
        Term::Inj(s, a, p) => Term::inj(*s, a.clone(), shift(p, by, cutoff)),
        Term::Case(s, b1, b2) => Term::case(
            shift(s, by, cutoff),
            shift(b1, by, cutoff + 1),
            shift(b2, by, cutoff + 1),
        ),
        Term::UnitIntro => Term::UnitIntro,
        Term::NatLit(n) => Term::NatLit(n.clone()),
    }
}

/// Substitute `arg` for index 0 in `body`, lowering the remaining free
/// indices by one (the binder is consumed).
pub fn instantiate(body: &Term, arg: &Term) -> Term {
    fn go(t: &Term, arg: &Term, depth: usize) -> Term {
        match t {
            Term::Var(i) => {
                if *i == depth {
                    shift(arg, depth, 0)
                } else if *i > depth {
                    Term::Var(i - 1)
                } else {
                    Term::Var(*i)
                }
            }
            Term::Lam(a, b) => Term::Lam(a.clone(), Box::new(go(b, arg, depth + 1))),
            Term::App(f, u) => Term::app(go(f, arg, depth), go(u, arg, depth)),
            Term::Inj(s, a, p) => Term::inj(*s, a.clone(), go(p, arg, depth)),
            Term::Case(s, b1, b2) => Term::case(
                go(s, arg, depth),
                go(b1, arg, depth + 1),
                go(b2, arg, depth + 1),
            ),
            Term::UnitIntro => Term::UnitIntro,
            Term::NatLit(n) => Term::NatLit(n.clone()),
        }
    }
    go(body, arg, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polarity_of_base_types() {
        assert_eq!(polarity(&Type::Nat), Polarity::Positive);
        assert_eq!(polarity(&Type::sum(Type::Unit, Type::Unit)), Polarity::Positive);
        assert_eq!(polarity(&Type::Unit), Polarity::Negative);
        assert_eq!(polarity(&Type::arrow(Type::Nat, Type::Nat)), Polarity::Negative);
    }

    #[test]
    fn instantiate_consumes_the_binder() {
        // (fun x. x y) with y free at index 1; substituting for x leaves y at index 0.
        let body = Term::app(Term::Var(0), Term::Var(1));
        let out = instantiate(&body, &Term::nat(3));
        assert_eq!(out, Term::app(Term::nat(3), Term::Var(0)));
    }

    #[test]
    fn instantiate_shifts_the_argument_under_binders() {
        // body = fun z:nat. x  (x is index 1 inside the lambda);
        // substituting an open argument must shift it past z.
        let body = Term::lam(Type::Nat, Term::Var(1));
        let arg = Term::Var(4);
        let out = instantiate(&body, &arg);
        assert_eq!(out, Term::lam(Type::Nat, Term::Var(5)));
    }

    #[test]
    fn if_sugar_ignores_its_binder() {
        let t = Term::ite(Term::tru(), Term::Var(0), Term::nat(7));
        // The then-branch referred to an outer variable; inside the case
        // branch it must skip the unit binder.
        match t {
            Term::Case(_, b1, _) => assert_eq!(*b1, Term::Var(1)),
            _ => panic!("expected a case"),
        }
    }
}
