use std::fmt;
use std::sync::Arc;

use super::Derivation;
use crate::syntax::{Context, Subst, Term};

/// A precontext map `(Δ, Γ, ā)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ContextMap {
    pub source: Context,
    pub target: Context,
    pub terms: Vec<Term>,
}

impl ContextMap {
    pub fn new(source: Context, target: Context, terms: Vec<Term>) -> ContextMap {
        ContextMap { source, target, terms }
    }

    /// `ι_Γ = (Γ, Γ, OV(Γ))`.
    pub fn identity(ctx: &Context) -> ContextMap {
        ContextMap { source: ctx.clone(), target: ctx.clone(), terms: ctx.ov_terms() }
    }

    /// The substitution `[ā/Γ]`.
    pub fn subst(&self) -> Subst {
        Subst::for_context(&self.target, &self.terms).expect("context map length matches its target")
    }

    /// `self ∘ inner`, where `inner: Θ → Δ` and `self: Δ → Γ`.
    pub fn compose(&self, inner: &ContextMap) -> ContextMap {
        let s = inner.subst();
        ContextMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            terms: self.terms.iter().map(|t| t.subst(&s)).collect(),
        }
    }

    /// The canonical projection `p_Γ(x:A) : ⟨Γ, x:A⟩ → Γ`.
    pub fn projection(extended: &Context) -> ContextMap {
        let (base, _, _) = extended.split_last().expect("projection out of a non-empty context");
        ContextMap { source: extended.clone(), target: base.clone(), terms: base.ov_terms() }
    }
}

impl fmt::Display for ContextMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "({}) : {} → {}", terms.join(","), self.source, self.target)
    }
}

/// A context map together with derivations of its `n + 2` judgements.
#[derive(Clone, Debug)]
pub struct CheckedMap {
    pub map: ContextMap,
    pub source: Arc<Derivation>,
    pub target: Arc<Derivation>,
    pub components: Vec<Arc<Derivation>>,
}

impl CheckedMap {
    /// Height of the tallest component typing, or 0 for an empty map.
    pub fn max_component_height(&self) -> usize {
        self.components.iter().map(|d| d.height).max().unwrap_or(0)
    }
}
