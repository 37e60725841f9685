//! Judgement checking for the rules R1–R5 (and the R5* variant).
//!
//! The checker is syntax directed. Hidden arguments of a type or function
//! symbol are recovered by solving the declaration's context from right to
//! left: the argument in the last position is always explicit, its inferred
//! type is matched against the declared type, and the match fixes earlier
//! arguments. Because typing is unique, no backtracking is ever needed; a
//! matching conflict is a hard error.

mod enumerate;
mod map;
mod structural;
mod verify;

pub use enumerate::{enumerate, EnumError, Enumeration};
pub use map::{CheckedMap, ContextMap};
pub use structural::{
    apply_substitution, interchange, standardize, strengthen, weaken, FreshSequence, Standardized, StructuralError,
};
pub use verify::{verify_derivation, VerifyError};

use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::signature::{Decl, Signature};
use crate::syntax::{Context, Subst, Symbol, Term, Type, Var, VariableSystem};

/// One of the three judgement forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Judgement {
    Context(Context),
    Type(Context, Type),
    Elem(Context, Term, Type),
}

impl Judgement {
    pub fn context(&self) -> &Context {
        match self {
            Judgement::Context(c) | Judgement::Type(c, _) | Judgement::Elem(c, _, _) => c,
        }
    }

    /// The same judgement over a different context.
    pub fn with_context(&self, ctx: Context) -> Judgement {
        match self {
            Judgement::Context(_) => Judgement::Context(ctx),
            Judgement::Type(_, a) => Judgement::Type(ctx, a.clone()),
            Judgement::Elem(_, t, a) => Judgement::Elem(ctx, t.clone(), a.clone()),
        }
    }

    /// Variables occurring in the subject (the part right of the context).
    pub fn subject_vars(&self) -> std::collections::BTreeSet<Var> {
        match self {
            Judgement::Context(_) => Default::default(),
            Judgement::Type(_, a) => a.free_vars(),
            Judgement::Elem(_, t, a) => {
                let mut vs = a.free_vars();
                t.collect_vars(&mut vs);
                vs
            }
        }
    }

    /// Applies a substitution to the subject and replaces the context.
    pub fn transport(&self, ctx: Context, s: &Subst) -> Judgement {
        match self {
            Judgement::Context(_) => Judgement::Context(ctx),
            Judgement::Type(_, a) => Judgement::Type(ctx, a.subst(s)),
            Judgement::Elem(_, t, a) => Judgement::Elem(ctx, t.subst(s), a.subst(s)),
        }
    }
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgement::Context(c) => write!(f, "{c} context"),
            Judgement::Type(c, a) => write!(f, "{a} type {c}"),
            Judgement::Elem(c, t, a) => write!(f, "{t} : {a} {c}"),
        }
    }
}

/// The derivation rules.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R5Star,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R5Star => "R5*",
        })
    }
}

/// Which function rule is in force.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Mode {
    /// R5, with the premise that the result type is well formed.
    #[default]
    Standard,
    /// R5*, without that premise.
    Star,
}

/// A derivation tree. Premises are shared, so a tree is really a DAG.
///
/// Premise order follows the rule displays: R2 has the context then the
/// type; R4 and R5 have the target context, the declaration context, one
/// premise per argument of the full context map, and for R5 the result type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgement,
    pub premises: Vec<Arc<Derivation>>,
    pub height: usize,
}

impl Derivation {
    pub fn new(rule: Rule, conclusion: Judgement, premises: Vec<Arc<Derivation>>) -> Derivation {
        let height = match rule {
            Rule::R1 => 0,
            _ => 1 + premises.iter().map(|p| p.height).max().unwrap_or(0),
        };
        Derivation { rule, conclusion, premises, height }
    }

    /// For R4/R5 nodes, the full argument list of the context map.
    pub fn full_args(&self) -> Option<Vec<Term>> {
        match self.rule {
            Rule::R4 | Rule::R5 | Rule::R5Star => {
                let n = match self.rule {
                    Rule::R5 => self.premises.len() - 3,
                    _ => self.premises.len() - 2,
                };
                Some(
                    self.premises[2..2 + n]
                        .iter()
                        .map(|p| match &p.conclusion {
                            Judgement::Elem(_, t, _) => t.clone(),
                            other => panic!("argument premise is not a typing: {other}"),
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// The declared symbol at an R4/R5 node.
    pub fn symbol(&self) -> Option<&Symbol> {
        match (&self.rule, &self.conclusion) {
            (Rule::R4, Judgement::Type(_, a)) => Some(&a.head),
            (Rule::R5 | Rule::R5Star, Judgement::Elem(_, Term::App(f, _), _)) => Some(f),
            _ => None,
        }
    }

    /// Number of distinct nodes in the shared tree.
    pub fn node_count(&self) -> usize {
        fn go(d: &Derivation, seen: &mut std::collections::HashSet<*const Derivation>) {
            if seen.insert(d as *const _) {
                d.premises.iter().for_each(|p| go(p, seen));
            }
        }
        let mut seen = Default::default();
        go(self, &mut seen);
        seen.len()
    }
}

/// Why a judgement failed to check.
#[derive(Clone, PartialEq, Debug, Error)]
pub enum CheckErrorKind {
    #[error("variable {var} is not fresh for the preceding declarations")]
    NotFresh { var: Var },
    #[error("variable {var} is not declared in the context")]
    Unbound { var: Var },
    #[error("symbol {symbol} is not declared")]
    Undeclared { symbol: Symbol },
    #[error("{symbol} is a {found} symbol, expected a {expected} symbol")]
    WrongKind { symbol: Symbol, expected: &'static str, found: &'static str },
    #[error("{symbol} takes {expected} explicit arguments, got {found}")]
    Arity { symbol: Symbol, expected: usize, found: usize },
    #[error("hidden argument {position} of {symbol} could not be reconstructed")]
    Unresolved { symbol: Symbol, position: usize },
    #[error("argument {position} of {symbol} has type {found}, which does not match the declared {declared}")]
    MatchConflict { symbol: Symbol, position: usize, declared: Type, found: Type },
    #[error("{term} has type {found}, expected {expected}")]
    Mismatch { term: Term, expected: Type, found: Type },
    #[error("context map has {found} components, target context has {expected} declarations")]
    MapLength { expected: usize, found: usize },
    #[error("reconstruction fuel exhausted; the judgement is undecided")]
    Undecided,
}

/// A check failure with the rule being attempted and the path to the
/// offending subexpression, outermost first.
#[derive(Clone, PartialEq, Debug)]
pub struct CheckError {
    pub rule: Rule,
    pub path: Vec<String>,
    pub kind: CheckErrorKind,
}

impl CheckError {
    fn new(rule: Rule, kind: CheckErrorKind) -> CheckError {
        CheckError { rule, path: Vec::new(), kind }
    }

    fn within(mut self, step: impl Into<String>) -> CheckError {
        self.path.insert(0, step.into());
        self
    }
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if !self.path.is_empty() {
            write!(f, " at {}", self.path.join(" / "))?;
        }
        write!(f, ": {}", self.kind)
    }
}

impl std::error::Error for CheckError {}

/// Default bound on reconstruction steps before reporting `Undecided`.
pub const DEFAULT_FUEL: usize = 1_000_000;

/// A judgement checker for one signature and rule mode.
///
/// Results are memoised for the lifetime of the checker, which keeps the
/// shared derivation DAGs small. The memo tables are private to the value.
pub struct Checker<'s> {
    sig: &'s Signature,
    vs: VariableSystem,
    mode: Mode,
    fuel: Cell<usize>,
    contexts: RefCell<HashMap<Context, Arc<Derivation>>>,
    types: RefCell<HashMap<(Context, Type), Arc<Derivation>>>,
    terms: RefCell<HashMap<(Context, Term), (Type, Arc<Derivation>)>>,
}

impl<'s> Checker<'s> {
    pub fn new(sig: &'s Signature) -> Checker<'s> {
        Checker {
            sig,
            vs: sig.var_system(),
            mode: Mode::Standard,
            fuel: Cell::new(DEFAULT_FUEL),
            contexts: Default::default(),
            types: Default::default(),
            terms: Default::default(),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_fuel(self, fuel: usize) -> Self {
        self.fuel.set(fuel);
        self
    }

    pub fn signature(&self) -> &'s Signature {
        self.sig
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn burn(&self, rule: Rule) -> Result<(), CheckError> {
        let left = self.fuel.get();
        if left == 0 {
            return Err(CheckError::new(rule, CheckErrorKind::Undecided));
        }
        self.fuel.set(left - 1);
        Ok(())
    }

    /// Derives `Γ context` (rules R1 and R2).
    pub fn context(&self, ctx: &Context) -> Result<Arc<Derivation>, CheckError> {
        if let Some(d) = self.contexts.borrow().get(ctx) {
            return Ok(d.clone());
        }
        // Walk up from the longest memoised prefix to avoid deep recursion.
        let mut start = ctx.len();
        while start > 0 && !self.contexts.borrow().contains_key(&ctx.prefix(start)) {
            start -= 1;
        }
        let mut current = if start == 0 {
            let empty = Arc::new(Derivation::new(Rule::R1, Judgement::Context(Context::empty()), vec![]));
            self.contexts.borrow_mut().insert(Context::empty(), empty.clone());
            empty
        } else {
            self.contexts.borrow()[&ctx.prefix(start)].clone()
        };
        for k in start..ctx.len() {
            let prefix = ctx.prefix(k);
            let (x, ty) = &ctx.entries()[k];
            if !prefix.is_fresh(&self.vs, x) {
                return Err(CheckError::new(Rule::R2, CheckErrorKind::NotFresh { var: x.clone() })
                    .within(format!("declaration {} ({x})", k + 1)));
            }
            let ty_d =
                self.type_in(&prefix, ty, current.clone()).map_err(|e| e.within(format!("declaration {} ({x})", k + 1)))?;
            let extended = ctx.prefix(k + 1);
            let d = Arc::new(Derivation::new(Rule::R2, Judgement::Context(extended.clone()), vec![current, ty_d]));
            self.contexts.borrow_mut().insert(extended, d.clone());
            current = d;
        }
        Ok(current)
    }

    /// Derives `A type (Δ)` (rule R4).
    pub fn type_of(&self, ctx: &Context, ty: &Type) -> Result<Arc<Derivation>, CheckError> {
        let ctx_d = self.context(ctx)?;
        self.type_in(ctx, ty, ctx_d)
    }

    fn type_in(&self, ctx: &Context, ty: &Type, ctx_d: Arc<Derivation>) -> Result<Arc<Derivation>, CheckError> {
        let key = (ctx.clone(), ty.clone());
        if let Some(d) = self.types.borrow().get(&key) {
            return Ok(d.clone());
        }
        self.burn(Rule::R4)?;
        let decl = self.lookup(&ty.head, "type", Rule::R4)?;
        let (full, arg_ds) = self.reconstruct(ctx, decl, &ty.args, Rule::R4)?;
        debug_assert_eq!(full.len(), decl.ctx.len());
        let decl_d = self.context(&decl.ctx).map_err(|e| e.within(format!("context of {}", decl.name)))?;
        let mut premises = vec![ctx_d, decl_d];
        premises.extend(arg_ds);
        let d = Arc::new(Derivation::new(Rule::R4, Judgement::Type(ctx.clone(), ty.clone()), premises));
        self.types.borrow_mut().insert(key, d.clone());
        Ok(d)
    }

    /// Infers the unique type of a term (rules R3 and R5/R5*).
    pub fn infer(&self, ctx: &Context, term: &Term) -> Result<(Type, Arc<Derivation>), CheckError> {
        let key = (ctx.clone(), term.clone());
        if let Some(hit) = self.terms.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let ctx_d = self.context(ctx)?;
        let out = match term {
            Term::Var(v) => {
                let (_, ty) =
                    ctx.lookup(v).ok_or_else(|| CheckError::new(Rule::R3, CheckErrorKind::Unbound { var: v.clone() }))?;
                let d = Derivation::new(Rule::R3, Judgement::Elem(ctx.clone(), term.clone(), ty.clone()), vec![ctx_d]);
                (ty.clone(), Arc::new(d))
            }
            Term::App(f, args) => {
                let rule = match self.mode {
                    Mode::Standard => Rule::R5,
                    Mode::Star => Rule::R5Star,
                };
                self.burn(rule)?;
                let decl = self.lookup(f, "function", rule)?;
                let (full, arg_ds) = self.reconstruct(ctx, decl, args, rule)?;
                let ret = decl.ret().expect("function declaration has a result type");
                let result = ret.subst(&Subst::for_context(&decl.ctx, &full).expect("full argument list"));
                let decl_d = self.context(&decl.ctx).map_err(|e| e.within(format!("context of {f}")))?;
                let mut premises = vec![ctx_d.clone(), decl_d];
                premises.extend(arg_ds);
                if self.mode == Mode::Standard {
                    let ty_d = self.type_in(ctx, &result, ctx_d).map_err(|e| e.within(format!("result type of {f}")))?;
                    premises.push(ty_d);
                }
                let d = Derivation::new(rule, Judgement::Elem(ctx.clone(), term.clone(), result.clone()), premises);
                (result, Arc::new(d))
            }
        };
        self.terms.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// Checks `a : A (Δ)` by inference and syntactic comparison.
    pub fn check_term(&self, ctx: &Context, term: &Term, ty: &Type) -> Result<Arc<Derivation>, CheckError> {
        let (found, d) = self.infer(ctx, term)?;
        if &found != ty {
            return Err(CheckError::new(d.rule, CheckErrorKind::Mismatch { term: term.clone(), expected: ty.clone(), found }));
        }
        Ok(d)
    }

    /// Checks any judgement.
    pub fn judgement(&self, j: &Judgement) -> Result<Arc<Derivation>, CheckError> {
        match j {
            Judgement::Context(c) => self.context(c),
            Judgement::Type(c, a) => self.type_of(c, a),
            Judgement::Elem(c, t, a) => self.check_term(c, t, a),
        }
    }

    /// Checks the `n + 2` judgements making up `ā : Δ → Γ`.
    pub fn context_map(&self, map: &ContextMap) -> Result<CheckedMap, CheckError> {
        let source = self.context(&map.source).map_err(|e| e.within("source context"))?;
        let target = self.context(&map.target).map_err(|e| e.within("target context"))?;
        if map.terms.len() != map.target.len() {
            return Err(CheckError::new(
                Rule::R4,
                CheckErrorKind::MapLength { expected: map.target.len(), found: map.terms.len() },
            ));
        }
        let mut components = Vec::with_capacity(map.terms.len());
        for (k, (_, ty)) in map.target.entries().iter().enumerate() {
            let s = Subst::for_context(&map.target.prefix(k), &map.terms[..k]).expect("prefix lengths agree");
            let expected = ty.subst(&s);
            let d =
                self.check_term(&map.source, &map.terms[k], &expected).map_err(|e| e.within(format!("component {}", k + 1)))?;
            components.push(d);
        }
        Ok(CheckedMap { map: map.clone(), source, target, components })
    }

    fn lookup(&self, name: &Symbol, expected: &'static str, rule: Rule) -> Result<&'s Decl, CheckError> {
        let decl =
            self.sig.get(name).ok_or_else(|| CheckError::new(rule, CheckErrorKind::Undeclared { symbol: name.clone() }))?;
        let found = decl.kind_name();
        if found != expected {
            return Err(CheckError::new(rule, CheckErrorKind::WrongKind { symbol: name.clone(), expected, found }));
        }
        Ok(decl)
    }

    /// Checks the explicit arguments of a predicate atom `R(t̄)` in `Γ` and
    /// returns the full context map into the predicate's context.
    pub fn predicate_args(&self, ctx: &Context, name: &Symbol, explicit: &[Term]) -> Result<Vec<Term>, CheckError> {
        self.context(ctx)?;
        let decl = self.lookup(name, "predicate", Rule::R4)?;
        let (full, _) = self.reconstruct(ctx, decl, explicit, Rule::R4).map_err(|e| e.within(format!("atom {name}")))?;
        Ok(full)
    }

    /// Recovers the full argument list of a context map into `decl.ctx` from
    /// the explicit arguments, returning it with one typing derivation per
    /// component.
    pub(crate) fn reconstruct(
        &self,
        ctx: &Context,
        decl: &Decl,
        explicit: &[Term],
        rule: Rule,
    ) -> Result<(Vec<Term>, Vec<Arc<Derivation>>), CheckError> {
        if explicit.len() != decl.det.len() {
            return Err(CheckError::new(
                rule,
                CheckErrorKind::Arity { symbol: decl.name.clone(), expected: decl.det.len(), found: explicit.len() },
            ));
        }
        let n = decl.ctx.len();
        let mut full: Vec<Option<Term>> = vec![None; n];
        for (&pos, t) in decl.det.iter().zip(explicit) {
            full[pos - 1] = Some(t.clone());
        }
        let mut derivs: Vec<Option<Arc<Derivation>>> = vec![None; n];
        for k in (0..n).rev() {
            let step = format!("argument {} of {}", k + 1, decl.name);
            let a_k = full[k].clone().ok_or_else(|| {
                CheckError::new(rule, CheckErrorKind::Unresolved { symbol: decl.name.clone(), position: k + 1 })
            })?;
            let (found, d) = self.infer(ctx, &a_k).map_err(|e| e.within(step.clone()))?;
            let declared = &decl.ctx.entries()[k].1;
            if !match_type(declared, &found, &decl.ctx, &mut full) {
                let shown = partial_instance(declared, &decl.ctx, &full);
                return Err(CheckError::new(
                    rule,
                    CheckErrorKind::MatchConflict { symbol: decl.name.clone(), position: k + 1, declared: shown, found },
                )
                .within(step));
            }
            derivs[k] = Some(d);
        }
        Ok((
            full.into_iter().map(|t| t.expect("all positions solved")).collect(),
            derivs.into_iter().map(|d| d.expect("all positions typed")).collect(),
        ))
    }
}

/// First-order matching of a declared type against an inferred one; the
/// pattern variables are the declaration-context variables, bound in
/// `solution` by position.
fn match_type(pattern: &Type, target: &Type, decl_ctx: &Context, solution: &mut [Option<Term>]) -> bool {
    pattern.head == target.head
        && pattern.args.len() == target.args.len()
        && pattern.args.iter().zip(&target.args).all(|(p, t)| match_term(p, t, decl_ctx, solution))
}

fn match_term(pattern: &Term, target: &Term, decl_ctx: &Context, solution: &mut [Option<Term>]) -> bool {
    match pattern {
        Term::Var(v) => {
            let Some((i, _)) = decl_ctx.lookup(v) else { return false };
            match &solution[i] {
                Some(bound) => bound == target,
                None => {
                    solution[i] = Some(target.clone());
                    true
                }
            }
        }
        Term::App(f, ps) => match target {
            Term::App(g, ts) if f == g && ps.len() == ts.len() => {
                ps.iter().zip(ts).all(|(p, t)| match_term(p, t, decl_ctx, solution))
            }
            _ => false,
        },
    }
}

/// The declared type with whatever has been solved so far substituted in,
/// for error messages.
fn partial_instance(declared: &Type, decl_ctx: &Context, solution: &[Option<Term>]) -> Type {
    let mut s = Subst::default();
    for ((x, _), t) in decl_ctx.entries().iter().zip(solution) {
        if let Some(t) = t {
            s.insert(x.clone(), t.clone());
        }
    }
    declared.subst(&s)
}

/// Checks `Γ context`.
pub fn check_context(sig: &Signature, ctx: &Context) -> Result<Arc<Derivation>, CheckError> {
    Checker::new(sig).context(ctx)
}

/// Checks `A type (Γ)`.
pub fn check_type(sig: &Signature, ctx: &Context, ty: &Type) -> Result<Arc<Derivation>, CheckError> {
    Checker::new(sig).type_of(ctx, ty)
}

/// Infers the type of `a` in `Γ`.
pub fn infer_type(sig: &Signature, ctx: &Context, term: &Term) -> Result<(Type, Arc<Derivation>), CheckError> {
    Checker::new(sig).infer(ctx, term)
}

/// Checks `a : A (Γ)`.
pub fn check_term(sig: &Signature, ctx: &Context, term: &Term, ty: &Type) -> Result<Arc<Derivation>, CheckError> {
    Checker::new(sig).check_term(ctx, term, ty)
}

/// Checks a context map `ā : Δ → Γ`.
pub fn check_ctx_map(sig: &Signature, map: &ContextMap) -> Result<CheckedMap, CheckError> {
    Checker::new(sig).context_map(map)
}

/// Checks a judgement under the given rule mode.
pub fn check_judgement(sig: &Signature, j: &Judgement, mode: Mode) -> Result<Arc<Derivation>, CheckError> {
    Checker::new(sig).with_mode(mode).judgement(j)
}

/// Checks a judgement with R5* in place of R5.
pub fn check_mode_r5star(sig: &Signature, j: &Judgement) -> Result<Arc<Derivation>, CheckError> {
    check_judgement(sig, j, Mode::Star)
}

/// The (P1)–(P3) decomposition of a type or term derivation: the declared
/// symbol, the full context map into its declaration context, and the
/// height of the map's premises, which is strictly below the node's own.
pub fn grade(d: &Derivation) -> Option<(Symbol, Vec<Term>, usize)> {
    let sym = d.symbol()?.clone();
    let args = d.full_args()?;
    let map_height = d.premises.iter().take(2 + args.len()).map(|p| p.height).max().unwrap_or(0);
    Some((sym, args, map_height))
}

#[cfg(test)]
mod tests;
