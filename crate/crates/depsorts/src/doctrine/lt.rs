//! The Lindenbaum–Tarski doctrine of a theory: predicates over `Γ` are
//! formulas in context `Γ`, reindexing is capture-avoiding substitution,
//! and `∀_{(Γ,A)}(⟨Γ, x:A⟩, ψ) = (Γ, (∀x:A)ψ)`.
//!
//! The order is derivability, which is not decidable. It is exposed as a
//! certificate check: `φ ≤ ψ` is witnessed by an accepted proof tree
//! concluding `φ ⟹ ψ`. A missing certificate says nothing about the order.

use thiserror::Error;

use crate::checker::ContextMap;
use crate::dfol::{
    check_formula, check_proof, Formula, FormulaError, ProofError, ProofMode, ProofTree, RuleTag, Sequent, Theory,
};
use crate::syntax::{Context, Term, Type, Var, VariableSystem};

/// A formula together with the context it is formed in.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LtPred {
    pub ctx: Context,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LtError {
    #[error("formulas over different contexts: {0} and {1}")]
    ContextMismatch(Context, Context),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("quantifying needs a predicate over an extended context, got {0}")]
    NotExtended(Context),
    #[error("certificate concludes {found}, expected {expected}")]
    WrongConclusion { expected: Sequent, found: Sequent },
    #[error(transparent)]
    Proof(#[from] ProofError),
}

#[derive(Clone, Debug)]
pub struct LtDoctrine {
    theory: Theory,
    vs: VariableSystem,
}

fn same(a: &LtPred, b: &LtPred) -> Result<(), LtError> {
    if a.ctx == b.ctx {
        Ok(())
    } else {
        Err(LtError::ContextMismatch(a.ctx.clone(), b.ctx.clone()))
    }
}

impl LtDoctrine {
    pub fn new(theory: Theory) -> LtDoctrine {
        let vs = theory.signature().var_system();
        LtDoctrine { theory, vs }
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    /// A checked predicate.
    pub fn pred(&self, ctx: &Context, formula: Formula) -> Result<LtPred, LtError> {
        check_formula(self.theory.signature(), ctx, &formula)?;
        Ok(LtPred { ctx: ctx.clone(), formula })
    }

    pub fn top(&self, ctx: &Context) -> LtPred {
        LtPred { ctx: ctx.clone(), formula: Formula::Top }
    }

    pub fn bot(&self, ctx: &Context) -> LtPred {
        LtPred { ctx: ctx.clone(), formula: Formula::Bot }
    }

    fn binary(&self, a: &LtPred, b: &LtPred, build: fn(Formula, Formula) -> Formula) -> Result<LtPred, LtError> {
        same(a, b)?;
        Ok(LtPred { ctx: a.ctx.clone(), formula: build(a.formula.clone(), b.formula.clone()) })
    }

    pub fn and(&self, a: &LtPred, b: &LtPred) -> Result<LtPred, LtError> {
        self.binary(a, b, Formula::and)
    }

    pub fn or(&self, a: &LtPred, b: &LtPred) -> Result<LtPred, LtError> {
        self.binary(a, b, Formula::or)
    }

    pub fn imp(&self, a: &LtPred, b: &LtPred) -> Result<LtPred, LtError> {
        self.binary(a, b, Formula::imp)
    }

    /// `R{(Δ, Γ, ā)}`.
    pub fn reindex(&self, r: &LtPred, map: &ContextMap) -> Result<LtPred, LtError> {
        if map.target != r.ctx {
            return Err(LtError::ContextMismatch(map.target.clone(), r.ctx.clone()));
        }
        Ok(LtPred { ctx: map.source.clone(), formula: r.formula.subst_map(map, &self.vs) })
    }

    fn split(r: &LtPred) -> Result<(Context, Var, Type), LtError> {
        let (base, x, ty) = r.ctx.split_last().ok_or_else(|| LtError::NotExtended(r.ctx.clone()))?;
        Ok((base, x.clone(), ty.clone()))
    }

    pub fn forall(&self, r: &LtPred) -> Result<LtPred, LtError> {
        let (base, x, ty) = Self::split(r)?;
        Ok(LtPred { ctx: base, formula: Formula::forall(x, ty, r.formula.clone()) })
    }

    pub fn exists(&self, r: &LtPred) -> Result<LtPred, LtError> {
        let (base, x, ty) = Self::split(r)?;
        Ok(LtPred { ctx: base, formula: Formula::exists(x, ty, r.formula.clone()) })
    }

    /// The projection `p : ⟨Γ, x:A⟩ → Γ`.
    pub fn p(&self, extended: &Context) -> ContextMap {
        ContextMap::projection(extended)
    }

    /// `f.S : ⟨Δ, y:A[ā]⟩ → ⟨Γ, x:A⟩` with `y = fresh(Δ)`.
    pub fn q(&self, map: &ContextMap, x: &Var, ty: &Type) -> ContextMap {
        let y = map.source.fresh(&self.vs);
        let mut terms = map.terms.clone();
        terms.push(Term::Var(y.clone()));
        ContextMap::new(map.source.extend(y, ty.subst(&map.subst())), map.target.extend(x.clone(), ty.clone()), terms)
    }

    /// Both Beck–Chevalley equations at `R` over `⟨Γ, x:A⟩` and `f : Δ → Γ`,
    /// compared as literal formulas.
    pub fn beck_chevalley(&self, r: &LtPred, map: &ContextMap) -> Result<(bool, bool), LtError> {
        let (_, x, ty) = Self::split(r)?;
        let moved = self.reindex(r, &self.q(map, &x, &ty))?;
        let forall = self.reindex(&self.forall(r)?, map)? == self.forall(&moved)?;
        let exists = self.reindex(&self.exists(r)?, map)? == self.exists(&moved)?;
        Ok((forall, exists))
    }

    /// Checks that `proof` certifies `a ≤ b`.
    pub fn le_certified(&self, a: &LtPred, b: &LtPred, proof: &ProofTree, mode: ProofMode) -> Result<(), LtError> {
        same(a, b)?;
        let expected = Sequent::new(a.ctx.clone(), a.formula.clone(), b.formula.clone());
        if proof.conclusion != expected {
            return Err(LtError::WrongConclusion { expected, found: proof.conclusion.clone() });
        }
        check_proof(&self.theory, proof, mode)?;
        Ok(())
    }

    /// The certificate `a ≤ a`.
    pub fn reflexivity(&self, a: &LtPred) -> ProofTree {
        ProofTree::leaf(RuleTag::Ref, Sequent::new(a.ctx.clone(), a.formula.clone(), a.formula.clone()))
    }

    /// Turns a certificate of `Q{p} ≤ R` into one of `Q ≤ ∀R`.
    pub fn forall_transpose(&self, q: &LtPred, r: &LtPred, proof: ProofTree) -> Result<ProofTree, LtError> {
        let all = self.forall(r)?;
        same(q, &all)?;
        Ok(ProofTree::new(RuleTag::UnivI, Sequent::new(q.ctx.clone(), q.formula.clone(), all.formula), vec![proof]))
    }

    /// Turns a certificate of `Q ≤ ∀R` into one of `Q{p} ≤ R`.
    pub fn forall_untranspose(&self, q: &LtPred, r: &LtPred, proof: ProofTree) -> Result<ProofTree, LtError> {
        let lifted = self.reindex(q, &self.p(&r.ctx))?;
        Ok(ProofTree::new(RuleTag::UnivE, Sequent::new(r.ctx.clone(), lifted.formula, r.formula.clone()), vec![proof]))
    }

    /// Turns a certificate of `R ≤ Q{p}` into one of `∃R ≤ Q`.
    pub fn exists_transpose(&self, q: &LtPred, r: &LtPred, proof: ProofTree) -> Result<ProofTree, LtError> {
        let some = self.exists(r)?;
        same(q, &some)?;
        Ok(ProofTree::new(RuleTag::ExisE, Sequent::new(q.ctx.clone(), some.formula, q.formula.clone()), vec![proof]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Decl, Signature};
    use crate::syntax::Flavor;

    fn a() -> Type {
        Type::new("A", vec![])
    }

    fn theory(flavor: Flavor) -> Theory {
        let x = Context::empty().extend(Var::index(1), a());
        let decls = vec![
            Decl::type_decl("A", Context::empty(), vec![]),
            Decl::pred_decl("R", x.clone(), vec![1]),
            Decl::pred_decl("S", x.extend(Var::index(2), a()), vec![1, 2]),
            Decl::fun_decl("f", x, vec![1], a()),
        ];
        let sig = Signature::replay(flavor, decls).unwrap();
        Theory::new(sig, vec![]).unwrap()
    }

    fn var(i: usize) -> Term {
        Term::Var(Var::index(i))
    }

    #[test]
    fn forall_wraps_with_the_fresh_binder() {
        let lt = LtDoctrine::new(theory(Flavor::DeBruijn));
        let g = Context::empty().extend(Var::index(1), a());
        let ext = g.extend(g.fresh(&lt.vs), a());
        let r = lt.pred(&ext, Formula::atom("S", vec![var(1), var(2)])).unwrap();
        let all = lt.forall(&r).unwrap();
        assert_eq!(all.ctx, g);
        assert_eq!(all.formula, Formula::forall(Var::index(2), a(), Formula::atom("S", vec![var(1), var(2)])));
    }

    #[test]
    fn beck_chevalley_is_literal_equality() {
        let lt = LtDoctrine::new(theory(Flavor::DeBruijn));
        let g = Context::empty().extend(Var::index(1), a());
        let ext = g.extend(Var::index(2), a());
        let inner = Formula::exists(Var::index(3), a(), Formula::atom("S", vec![var(2), var(3)]));
        let r = lt.pred(&ext, Formula::and(Formula::atom("S", vec![var(1), var(2)]), inner)).unwrap();
        let delta = Context::empty().extend(Var::index(1), a()).extend(Var::index(2), a());
        let map = ContextMap::new(delta, g, vec![Term::App("f".into(), vec![var(2)])]);
        assert_eq!(lt.beck_chevalley(&r, &map).unwrap(), (true, true));
    }

    #[test]
    fn reflexivity_certifies_and_adjunctions_transpose() {
        let lt = LtDoctrine::new(theory(Flavor::DeBruijn));
        let g = Context::empty();
        let ext = g.extend(Var::index(1), a());
        let r = lt.pred(&ext, Formula::atom("R", vec![var(1)])).unwrap();
        lt.le_certified(&r, &r, &lt.reflexivity(&r), ProofMode::Dfol).unwrap();
        let all = lt.forall(&r).unwrap();
        let down = lt.forall_untranspose(&all, &r, lt.reflexivity(&all)).unwrap();
        lt.le_certified(&lt.reindex(&all, &lt.p(&ext)).unwrap(), &r, &down, ProofMode::Dfol).unwrap();
        let up = lt.forall_transpose(&all, &r, down).unwrap();
        lt.le_certified(&all, &all, &up, ProofMode::Dfol).unwrap();
        let some = lt.exists(&r).unwrap();
        let lifted = lt.reindex(&some, &lt.p(&ext)).unwrap();
        let intro = ProofTree::new(
            RuleTag::ExisI,
            Sequent::new(ext.clone(), r.formula.clone(), lifted.formula.clone()),
            vec![lt.reflexivity(&some)],
        );
        let back = lt.exists_transpose(&some, &r, intro).unwrap();
        lt.le_certified(&some, &some, &back, ProofMode::Dfol).unwrap();
    }

    #[test]
    fn a_certificate_for_another_sequent_is_rejected() {
        let lt = LtDoctrine::new(theory(Flavor::DeBruijn));
        let g = Context::empty();
        assert!(matches!(
            lt.le_certified(&lt.top(&g), &lt.bot(&g), &lt.reflexivity(&lt.top(&g)), ProofMode::Dfol),
            Err(LtError::WrongConclusion { .. })
        ));
    }
}
