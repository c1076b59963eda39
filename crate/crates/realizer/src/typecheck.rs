//! Syntax-directed type checker for the source language.
//!
//! Every term form has exactly one applicable rule, so checking is plain
//! structural recursion returning the unique derivable type.

use std::fmt;

use crate::ast::{Term, Type};

/// A de Bruijn telescope of types; index 0 is the innermost binder.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Context {
    tys: Vec<Type>,
}

impl Context {
    pub fn empty() -> Context {
        Context { tys: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.tys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tys.is_empty()
    }

    pub fn lookup(&self, index: usize) -> Option<&Type> {
        if index < self.tys.len() {
            Some(&self.tys[self.tys.len() - 1 - index])
        } else {
            None
        }
    }

    /// A copy of this context extended with one more binder.
    pub fn pushed(&self, ty: Type) -> Context {
        let mut tys = self.tys.clone();
        tys.push(ty);
        Context { tys }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeError {
    UnboundVariable { term: Term, index: usize, depth: usize },
    NotAFunction { term: Term, found: Type },
    ArgumentMismatch { term: Term, expected: Type, found: Type },
    NotASum { term: Term, found: Type },
    BranchMismatch { term: Term, first: Type, second: Type },
    InjAnnotationNotSum { term: Term, annot: Type },
    InjPayloadMismatch { term: Term, expected: Type, found: Type },
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::render;
        match self {
            TypeError::UnboundVariable { index, depth, .. } => {
                write!(f, "unbound variable: index {index} under {depth} binders")
            }
            TypeError::NotAFunction { found, .. } => {
                write!(f, "applying a term of type {}", render::type_to_string(found))
            }
            TypeError::ArgumentMismatch { expected, found, .. } => write!(
                f,
                "argument has type {} but the function expects {}",
                render::type_to_string(found),
                render::type_to_string(expected)
            ),
            TypeError::NotASum { found, .. } => write!(
                f,
                "case scrutinee has type {}, not a sum",
                render::type_to_string(found)
            ),
            TypeError::BranchMismatch { first, second, .. } => write!(
                f,
                "case branches disagree: {} vs {}",
                render::type_to_string(first),
                render::type_to_string(second)
            ),
            TypeError::InjAnnotationNotSum { annot, .. } => write!(
                f,
                "injection annotation {} is not a sum type",
                render::type_to_string(annot)
            ),
            TypeError::InjPayloadMismatch { expected, found, .. } => write!(
                f,
                "injection payload has type {} but the annotation demands {}",
                render::type_to_string(found),
                render::type_to_string(expected)
            ),
        }
    }
}

impl std::error::Error for TypeError {}

impl TypeError {
    /// The subterm the rule failed on.
    pub fn subterm(&self) -> &Term {
        match self {
            TypeError::UnboundVariable { term, .. }
            | TypeError::NotAFunction { term, .. }
            | TypeError::ArgumentMismatch { term, .. }
            | TypeError::NotASum { term, .. }
            | TypeError::BranchMismatch { term, .. }
            | TypeError::InjAnnotationNotSum { term, .. }
            | TypeError::InjPayloadMismatch { term, .. } => term,
        }
    }
}

/// Compute the unique type of `t` under `ctx`, or report why none exists.
pub fn typecheck(ctx: &Context, t: &Term) -> Result<Type, TypeError> {
    match t {
        Term::Var(i) => ctx.lookup(*i).cloned().ok_or(TypeError::UnboundVariable {
            term: t.clone(),
            index: *i,
            depth: ctx.len(),
        }),
        Term::Lam(annot, body) => {
            let cod = typecheck(&ctx.pushed(annot.clone()), body)?;
            Ok(Type::arrow(annot.clone(), cod))
        }
        Term::App(fun, arg) => {
            let fun_ty = typecheck(ctx, fun)?;
            let (dom, cod) = match fun_ty {
                Type::Arrow(dom, cod) => (*dom, *cod),
                other => {
                    return Err(TypeError::NotAFunction {
                        term: t.clone(),
                        found: other,
                    })
                }
            };
            let arg_ty = typecheck(ctx, arg)?;
            if arg_ty != dom {
                return Err(TypeError::ArgumentMismatch {
                    term: t.clone(),
                    expected: dom,
                    found: arg_ty,
                });
            }
            Ok(cod)
        }
        Term::Inj(side, annot, payload) => {
            let (left, right) = match annot {
                Type::Sum(l, r) => (l.as_ref(), r.as_ref()),
                other => {
                    return Err(TypeError::InjAnnotationNotSum {
                        term: t.clone(),
                        annot: other.clone(),
                    })
                }
            };
            let want = side.pick(left, right);
            let got = typecheck(ctx, payload)?;
            if got != *want {
                return Err(TypeError::InjPayloadMismatch {
                    term: t.clone(),
                    expected: want.clone(),
                    found: got,
                });
            }
            Ok(annot.clone())
        }
        Term::Case(scrutinee, branch1, branch2) => {
            let scrut_ty = typecheck(ctx, scrutinee)?;
            let (left, right) = match scrut_ty {
                Type::Sum(l, r) => (*l, *r),
                other => {
                    return Err(TypeError::NotASum {
                        term: t.clone(),
                        found: other,
                    })
                }
            };
            let ty1 = typecheck(&ctx.pushed(left), branch1)?;
            let ty2 = typecheck(&ctx.pushed(right), branch2)?;
            if ty1 != ty2 {
                return Err(TypeError::BranchMismatch {
                    term: t.clone(),
                    first: ty1,
                    second: ty2,
                });
            }
            Ok(ty1)
        }
        Term::UnitIntro => Ok(Type::Unit),
        Term::NatLit(_) => Ok(Type::Nat),
    }
}
