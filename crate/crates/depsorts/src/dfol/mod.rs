//! Dependently typed first-order logic: formulas in context, their
//! substitution operations, and the sequent calculus in [`proof`].
//!
//! Two substitution operations coexist. [`Formula::subst_map`] is the
//! capture-avoiding instance `φ{(Δ, Γ, ā)}`, which rebinds every quantifier
//! to `fresh(Δ)` and is defined on checked formulas. [`Formula::subst`] is
//! ordinary syntactic substitution, renaming a binder only when it would
//! capture; its result is meaningful up to α-equivalence.

pub mod proof;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::checker::{CheckError, Checker, ContextMap, FreshSequence};
use crate::signature::Signature;
use crate::syntax::{Context, Subst, Symbol, Term, Type, Var, VariableSystem};

pub use proof::{check_proof, to_star, ProofError, ProofErrorKind, ProofMode, ProofTree, RuleTag, Sequent, Theory, TheoryError};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    /// `R(t̄)` with the explicit arguments only.
    Atom(Symbol, Vec<Term>),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(Var, Type, Box<Formula>),
    Exists(Var, Type, Box<Formula>),
}

/// Which quantifier a binder node carries.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Connective {
    And,
    Or,
    Imp,
}

#[derive(Clone, PartialEq, Debug, Error)]
pub enum FormulaError {
    #[error("in {location}: {source}")]
    Check { location: String, source: CheckError },
}

impl Formula {
    pub fn atom(name: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(Symbol::from(name), args)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall(x: Var, ty: Type, body: Formula) -> Formula {
        Formula::Forall(x, ty, Box::new(body))
    }

    pub fn exists(x: Var, ty: Type, body: Formula) -> Formula {
        Formula::Exists(x, ty, Box::new(body))
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Formula {
        match c {
            Connective::And => Formula::and(a, b),
            Connective::Or => Formula::or(a, b),
            Connective::Imp => Formula::imp(a, b),
        }
    }

    pub fn quantified(q: Quantifier, x: Var, ty: Type, body: Formula) -> Formula {
        match q {
            Quantifier::Forall => Formula::forall(x, ty, body),
            Quantifier::Exists => Formula::exists(x, ty, body),
        }
    }

    /// Splits a binary connective node.
    pub fn as_binary(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((Connective::And, a, b)),
            Formula::Or(a, b) => Some((Connective::Or, a, b)),
            Formula::Imp(a, b) => Some((Connective::Imp, a, b)),
            _ => None,
        }
    }

    /// Splits a quantifier node.
    pub fn as_quantified(&self) -> Option<(Quantifier, &Var, &Type, &Formula)> {
        match self {
            Formula::Forall(x, ty, body) => Some((Quantifier::Forall, x, ty, body)),
            Formula::Exists(x, ty, body) => Some((Quantifier::Exists, x, ty, body)),
            _ => None,
        }
    }

    /// `FV`, with `FV((Qx:A)φ) = FV(A) ∪ (FV(φ) ∖ {x})`.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::Top | Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Forall(x, ty, body) | Formula::Exists(x, ty, body) => {
                ty.collect_vars(out);
                let mut inner = body.free_vars();
                inner.remove(x);
                out.extend(inner);
            }
        }
    }

    /// Every variable occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::Top | Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            Formula::Forall(x, ty, body) | Formula::Exists(x, ty, body) => {
                out.insert(x.clone());
                ty.collect_vars(out);
                body.collect_all(out);
            }
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Top | Formula::Bot => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.height().max(b.height()),
            Formula::Forall(_, _, body) | Formula::Exists(_, _, body) => 1 + body.height(),
        }
    }

    /// The capture-avoiding instance `φ{(Δ, Γ, ā)}`. Atoms are substituted
    /// syntactically; each quantifier is rebound to `fresh(Δ)`.
    pub fn subst_map(&self, map: &ContextMap, vs: &VariableSystem) -> Formula {
        match self {
            Formula::Atom(r, args) => {
                let s = map.subst();
                Formula::Atom(r.clone(), args.iter().map(|t| t.subst(&s)).collect())
            }
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => {
                let (c, a, b) = self.as_binary().expect("binary node");
                Formula::binary(c, a.subst_map(map, vs), b.subst_map(map, vs))
            }
            Formula::Forall(..) | Formula::Exists(..) => {
                let (q, x, ty, body) = self.as_quantified().expect("quantifier node");
                let y = map.source.fresh(vs);
                let moved = ty.subst(&map.subst());
                let mut terms = map.terms.clone();
                terms.push(Term::Var(y.clone()));
                let lifted =
                    ContextMap::new(map.source.extend(y.clone(), moved.clone()), map.target.extend(x.clone(), ty.clone()), terms);
                Formula::quantified(q, y, moved, body.subst_map(&lifted, vs))
            }
        }
    }

    /// Syntactic substitution `φ[s]`, renaming a binder to `vs.pick(…)`
    /// whenever it would capture a variable of the substituted terms.
    pub fn subst(&self, s: &Subst, vs: &VariableSystem) -> Formula {
        match self {
            Formula::Atom(r, args) => Formula::Atom(r.clone(), args.iter().map(|t| t.subst(s)).collect()),
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => {
                let (c, a, b) = self.as_binary().expect("binary node");
                Formula::binary(c, a.subst(s, vs), b.subst(s, vs))
            }
            Formula::Forall(..) | Formula::Exists(..) => {
                let (q, x, ty, body) = self.as_quantified().expect("quantifier node");
                let moved = ty.subst(s);
                let body_free = body.free_vars();
                let mut inner = Subst::default();
                let mut range_vars = BTreeSet::new();
                for v in s.domain() {
                    if v != x && body_free.contains(v) {
                        let t = s.get(v).expect("in domain").clone();
                        t.collect_vars(&mut range_vars);
                        inner.insert(v.clone(), t);
                    }
                }
                if range_vars.contains(x) {
                    let mut avoid = range_vars;
                    avoid.extend(body.all_vars());
                    avoid.extend(s.domain().cloned());
                    let y = vs.pick(&avoid);
                    inner.insert(x.clone(), Term::Var(y.clone()));
                    Formula::quantified(q, y, moved, body.subst(&inner, vs))
                } else {
                    Formula::quantified(q, x.clone(), moved, body.subst(&inner, vs))
                }
            }
        }
    }

    /// The locally nameless form: each binder is renamed to `#d`, where `d`
    /// is its nesting depth. Two formulas are α-equivalent exactly when
    /// their locally nameless forms are equal.
    pub fn locally_nameless(&self) -> Formula {
        fn go(f: &Formula, env: &mut Vec<(Var, Var)>) -> Formula {
            let rename = |t: &Term, env: &[(Var, Var)]| rename_term(t, env);
            match f {
                Formula::Atom(r, args) => Formula::Atom(r.clone(), args.iter().map(|t| rename(t, env)).collect()),
                Formula::Top => Formula::Top,
                Formula::Bot => Formula::Bot,
                Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => {
                    let (c, a, b) = f.as_binary().expect("binary node");
                    Formula::binary(c, go(a, env), go(b, env))
                }
                Formula::Forall(..) | Formula::Exists(..) => {
                    let (q, x, ty, body) = f.as_quantified().expect("quantifier node");
                    let ty = Type { head: ty.head.clone(), args: ty.args.iter().map(|t| rename(t, env)).collect() };
                    let bound = Var::new(&format!("#{}", env.len()));
                    env.push((x.clone(), bound.clone()));
                    let body = go(body, env);
                    env.pop();
                    Formula::quantified(q, bound, ty, body)
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self == other || self.locally_nameless() == other.locally_nameless()
    }

    /// An α-variant whose binders are successively fresh for the context
    /// they extend, so that it passes the strict formation rules.
    pub fn freshen(&self, ctx: &Context, vs: &VariableSystem) -> Formula {
        match self {
            Formula::Atom(..) | Formula::Top | Formula::Bot => self.clone(),
            Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => {
                let (c, a, b) = self.as_binary().expect("binary node");
                Formula::binary(c, a.freshen(ctx, vs), b.freshen(ctx, vs))
            }
            Formula::Forall(..) | Formula::Exists(..) => {
                let (q, x, ty, body) = self.as_quantified().expect("quantifier node");
                let (y, body) = if ctx.is_fresh(vs, x) {
                    (x.clone(), (*body).clone())
                } else {
                    let y = ctx.fresh(vs);
                    let mut s = Subst::default();
                    s.insert(x.clone(), Term::Var(y.clone()));
                    (y.clone(), body.subst(&s, vs))
                };
                let inner = ctx.extend(y.clone(), ty.clone());
                Formula::quantified(q, y, ty.clone(), body.freshen(&inner, vs))
            }
        }
    }
}

fn rename_term(t: &Term, env: &[(Var, Var)]) -> Term {
    match t {
        Term::Var(v) => match env.iter().rev().find(|(x, _)| x == v) {
            Some((_, b)) => Term::Var(b.clone()),
            None => t.clone(),
        },
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| rename_term(a, env)).collect()),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(r, args) => {
                write!(f, "{r}")?;
                if !args.is_empty() {
                    let shown: Vec<String> = args.iter().map(Term::to_string).collect();
                    write!(f, "({})", shown.join(","))?;
                }
                Ok(())
            }
            Formula::Top => f.write_str("⊤"),
            Formula::Bot => f.write_str("⊥"),
            Formula::And(a, b) => write!(f, "({a} ∧ {b})"),
            Formula::Or(a, b) => write!(f, "({a} ∨ {b})"),
            Formula::Imp(a, b) => write!(f, "({a} → {b})"),
            Formula::Forall(x, ty, body) => write!(f, "(∀{x}:{ty}){body}"),
            Formula::Exists(x, ty, body) => write!(f, "(∃{x}:{ty}){body}"),
        }
    }
}

/// Checks `φ form (Γ)` by the formation rules. Each quantifier extends the
/// context, so its binder must be fresh for the context so far.
pub fn check_formula(sig: &Signature, ctx: &Context, phi: &Formula) -> Result<(), FormulaError> {
    let checker = Checker::new(sig);
    checker.context(ctx).map_err(|source| FormulaError::Check { location: "context".into(), source })?;
    check_in(&checker, ctx, phi)
}

pub(crate) fn check_in(checker: &Checker<'_>, ctx: &Context, phi: &Formula) -> Result<(), FormulaError> {
    let here = |source| FormulaError::Check { location: phi.to_string(), source };
    match phi {
        Formula::Atom(r, args) => checker.predicate_args(ctx, r, args).map(|_| ()).map_err(here),
        Formula::Top | Formula::Bot => Ok(()),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            check_in(checker, ctx, a)?;
            check_in(checker, ctx, b)
        }
        Formula::Forall(x, ty, body) | Formula::Exists(x, ty, body) => {
            let inner = ctx.extend(x.clone(), ty.clone());
            checker.context(&inner).map_err(here)?;
            check_in(checker, &inner, body)
        }
    }
}

/// `φ^σ`, the standardized formula over `Γ^σ`, together with `Γ^σ`.
pub fn standardize_formula(ctx: &Context, phi: &Formula, seq: &FreshSequence, vs: &VariableSystem) -> Option<(Context, Formula)> {
    fn go(ctx: &Context, phi: &Formula, seq: &FreshSequence, vs: &VariableSystem) -> Option<Formula> {
        let n = ctx.len();
        let new_vars = seq.vars().get(..n)?;
        let rename = Subst::for_context(ctx, &new_vars.iter().cloned().map(Term::Var).collect::<Vec<_>>()).ok()?;
        Some(match phi {
            Formula::Atom(..) | Formula::Top | Formula::Bot => phi.subst(&rename, vs),
            Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => {
                let (c, a, b) = phi.as_binary().expect("binary node");
                Formula::binary(c, go(ctx, a, seq, vs)?, go(ctx, b, seq, vs)?)
            }
            Formula::Forall(..) | Formula::Exists(..) => {
                let (q, x, ty, body) = phi.as_quantified().expect("quantifier node");
                let binder = seq.vars().get(n)?.clone();
                let inner = go(&ctx.extend(x.clone(), ty.clone()), body, seq, vs)?;
                Formula::quantified(q, binder, ty.subst(&rename), inner)
            }
        })
    }
    let n = ctx.len();
    let new_vars = seq.vars().get(..n)?;
    let rename = Subst::for_context(ctx, &new_vars.iter().cloned().map(Term::Var).collect::<Vec<_>>()).ok()?;
    let std_ctx =
        Context::from_entries(ctx.entries().iter().zip(new_vars).map(|((_, ty), v)| (v.clone(), ty.subst(&rename))).collect());
    Some((std_ctx, go(ctx, phi, seq, vs)?))
}

#[cfg(test)]
mod tests;
