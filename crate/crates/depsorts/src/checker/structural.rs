//! Executable forms of the structural theorems: substitution, weakening,
//! strengthening, interchange and variable standardization.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use super::{CheckError, CheckedMap, Checker, ContextMap, Derivation, Judgement, Rule};
use crate::signature::Signature;
use crate::syntax::{Context, Flavor, Subst, Term, Var, VariableSystem};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum StructuralError {
    #[error("this transformation needs the unrestricted variable system")]
    RequiresUnrestricted,
    #[error("the derivation's context {found} is not the map's target {expected}")]
    ContextMismatch { expected: Context, found: Context },
    #[error("only type and typing judgements can be substituted into")]
    NotSubstitutable,
    #[error("position {position} is out of range for a context of length {len}")]
    Position { position: usize, len: usize },
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("input does not check: {0}")]
    Input(CheckError),
    #[error("transformed judgement fails to recheck: {0}")]
    Recheck(CheckError),
    #[error("{var} cannot follow the earlier entries of the fresh sequence")]
    NotFreshSequence { var: Var },
}

/// Substitutes a checked context map `s: Θ → Γ` into a derivation over `Γ`,
/// rebuilding the derivation node by node.
///
/// Variable leaves become the corresponding component derivations, so the
/// result has height at most `height(d) + max component height`.
pub fn apply_substitution(d: &Arc<Derivation>, s: &CheckedMap) -> Result<Arc<Derivation>, StructuralError> {
    let ctx = d.conclusion.context();
    if matches!(d.conclusion, Judgement::Context(_)) {
        return Err(StructuralError::NotSubstitutable);
    }
    if ctx != &s.map.target {
        return Err(StructuralError::ContextMismatch { expected: s.map.target.clone(), found: ctx.clone() });
    }
    let subst = s.map.subst();
    let mut memo = HashMap::new();
    Ok(rebuild(d, s, &subst, &mut memo))
}

fn rebuild(
    d: &Arc<Derivation>,
    s: &CheckedMap,
    subst: &Subst,
    memo: &mut HashMap<*const Derivation, Arc<Derivation>>,
) -> Arc<Derivation> {
    if let Some(done) = memo.get(&Arc::as_ptr(d)) {
        return done.clone();
    }
    let out = match d.rule {
        Rule::R3 => {
            let Judgement::Elem(ctx, Term::Var(x), _) = &d.conclusion else { unreachable!("R3 types a variable") };
            let (i, _) = ctx.lookup(x).expect("R3 variable is declared");
            s.components[i].clone()
        }
        Rule::R4 | Rule::R5 | Rule::R5Star => {
            let mut premises = Vec::with_capacity(d.premises.len());
            premises.push(s.source.clone());
            premises.push(d.premises[1].clone());
            for p in &d.premises[2..] {
                premises.push(rebuild(p, s, subst, memo));
            }
            let conclusion = d.conclusion.transport(s.map.source.clone(), subst);
            Arc::new(Derivation::new(d.rule, conclusion, premises))
        }
        Rule::R1 | Rule::R2 => unreachable!("context judgements never occur over the substituted context"),
    };
    memo.insert(Arc::as_ptr(d), out.clone());
    out
}

fn require_unrestricted(sig: &Signature) -> Result<(), StructuralError> {
    match sig.flavor() {
        Flavor::Unrestricted => Ok(()),
        Flavor::DeBruijn => Err(StructuralError::RequiresUnrestricted),
    }
}

fn recheck(sig: &Signature, j: Judgement) -> Result<(Judgement, Arc<Derivation>), StructuralError> {
    let d = Checker::new(sig).judgement(&j).map_err(StructuralError::Recheck)?;
    Ok((j, d))
}

/// From `J (Γ, Θ)` and `B type (Γ)` with `y ∉ V(Γ, Θ)`, derives `J (Γ, y:B, Θ)`.
/// `at` is the length of `Γ`.
pub fn weaken(
    sig: &Signature,
    j: &Judgement,
    at: usize,
    y: Var,
    b: crate::syntax::Type,
) -> Result<(Judgement, Arc<Derivation>), StructuralError> {
    require_unrestricted(sig)?;
    let ctx = j.context();
    if at > ctx.len() {
        return Err(StructuralError::Position { position: at, len: ctx.len() });
    }
    let checker = Checker::new(sig);
    checker.judgement(j).map_err(StructuralError::Input)?;
    checker.type_of(&ctx.prefix(at), &b).map_err(StructuralError::Input)?;
    if ctx.free_vars().contains(&y) || j.subject_vars().contains(&y) {
        return Err(StructuralError::SideCondition(format!("{y} already occurs in the context")));
    }
    let mut entries = ctx.entries().to_vec();
    entries.insert(at, (y, b));
    recheck(sig, j.with_context(Context::from_entries(entries)))
}

/// From `J (Γ, y:B, Θ)` with `y ∉ V(Θ, J)`, derives `J (Γ, Θ)`. `at` is the
/// 0-based position of `y:B`.
pub fn strengthen(sig: &Signature, j: &Judgement, at: usize) -> Result<(Judgement, Arc<Derivation>), StructuralError> {
    require_unrestricted(sig)?;
    let ctx = j.context();
    if at >= ctx.len() {
        return Err(StructuralError::Position { position: at, len: ctx.len() });
    }
    Checker::new(sig).judgement(j).map_err(StructuralError::Input)?;
    let y = &ctx.entries()[at].0;
    let later = ctx.entries()[at + 1..].iter().any(|(_, ty)| ty.mentions(y));
    if later || j.subject_vars().contains(y) {
        return Err(StructuralError::SideCondition(format!("{y} is used after its declaration")));
    }
    let mut entries = ctx.entries().to_vec();
    entries.remove(at);
    recheck(sig, j.with_context(Context::from_entries(entries)))
}

/// From `J (Γ, x:A, y:B, Θ)` with `x ∉ V(B)`, derives `J (Γ, y:B, x:A, Θ)`.
/// `at` is the 0-based position of `x:A`.
pub fn interchange(sig: &Signature, j: &Judgement, at: usize) -> Result<(Judgement, Arc<Derivation>), StructuralError> {
    require_unrestricted(sig)?;
    let ctx = j.context();
    if at + 1 >= ctx.len() {
        return Err(StructuralError::Position { position: at, len: ctx.len() });
    }
    Checker::new(sig).judgement(j).map_err(StructuralError::Input)?;
    let (x, _) = &ctx.entries()[at];
    let (_, b) = &ctx.entries()[at + 1];
    if b.mentions(x) {
        return Err(StructuralError::SideCondition(format!("the type {b} depends on {x}")));
    }
    let mut entries = ctx.entries().to_vec();
    entries.swap(at, at + 1);
    recheck(sig, j.with_context(Context::from_entries(entries)))
}

/// A finite initial segment `σ(0), …, σ(n-1)` of a fresh sequence: each
/// entry is provided fresh for the entries before it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreshSequence(Vec<Var>);

impl FreshSequence {
    pub fn new(vs: &VariableSystem, vars: Vec<Var>) -> Result<FreshSequence, StructuralError> {
        let mut used = std::collections::BTreeSet::new();
        for v in &vars {
            if !vs.provides(&used, v) {
                return Err(StructuralError::NotFreshSequence { var: v.clone() });
            }
            used.insert(v.clone());
        }
        Ok(FreshSequence(vars))
    }

    /// The sequence `1, 2, …, n`.
    pub fn positional(n: usize) -> FreshSequence {
        FreshSequence((1..=n).map(Var::index).collect())
    }

    /// The standard sequence of the given variable system.
    pub fn standard(vs: &VariableSystem, n: usize) -> FreshSequence {
        FreshSequence(vs.standard_sequence(n))
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }
}

/// A judgement moved to standard variables, with the two mutually inverse
/// context maps relating old and new contexts.
#[derive(Clone, Debug)]
pub struct Standardized {
    pub judgement: Judgement,
    pub derivation: Arc<Derivation>,
    /// `σ(Γ) : Γ^σ → Γ`.
    pub from_standard: CheckedMap,
    /// `OV(Γ) : Γ → Γ^σ`.
    pub to_standard: CheckedMap,
}

/// Renames the context of `j` along `seq`, transporting the subject.
pub fn standardize(sig: &Signature, j: &Judgement, seq: &FreshSequence) -> Result<Standardized, StructuralError> {
    let ctx = j.context();
    if seq.vars().len() < ctx.len() {
        return Err(StructuralError::Position { position: seq.vars().len(), len: ctx.len() });
    }
    let checker = Checker::new(sig);
    checker.judgement(j).map_err(StructuralError::Input)?;
    let new_vars = &seq.vars()[..ctx.len()];
    let new_terms: Vec<Term> = new_vars.iter().cloned().map(Term::Var).collect();
    let rename = Subst::for_context(ctx, &new_terms).expect("lengths agree");
    let std_ctx =
        Context::from_entries(ctx.entries().iter().zip(new_vars).map(|((_, ty), v)| (v.clone(), ty.subst(&rename))).collect());
    let judgement = j.transport(std_ctx.clone(), &rename);
    let derivation = checker.judgement(&judgement).map_err(StructuralError::Recheck)?;
    let from_standard =
        checker.context_map(&ContextMap::new(std_ctx.clone(), ctx.clone(), new_terms)).map_err(StructuralError::Recheck)?;
    let to_standard =
        checker.context_map(&ContextMap::new(ctx.clone(), std_ctx, ctx.ov_terms())).map_err(StructuralError::Recheck)?;
    debug_assert_eq!(from_standard.map.compose(&to_standard.map), ContextMap::identity(ctx));
    Ok(Standardized { judgement, derivation, from_standard, to_standard })
}
