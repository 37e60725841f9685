//! Models of a signature in a cwf, built up one declaration at a time.
//!
//! A model assigns each type symbol `S` over `Γ_S` a type over `F(Γ_S)` and
//! each function symbol `f : U_f (Γ_f)` a term of `σ(Γ_f, U_f)`. Everything
//! else is computed by recursion on derivations:
//!
//! * `F(⟨⟩) = ⊤` and `F(Γ, x:A) = F(Γ).σ(Γ, A)`;
//! * `σ(Δ, S(t̄)) = σ_S{θ̄(Δ, Γ_S, t̄)}`;
//! * `θ(Δ, x_i) = v{p^(n-i)}` and `θ(Δ, f(t̄)) = θ_f{θ̄(Δ, Γ_f, t̄)}`;
//!
//! where `θ̄` tuples the interpretations of the full argument list, hidden
//! arguments included. Variables are interpreted by position, so a context
//! and its standardized renaming have the same interpretation.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use super::{Cwf, FiberMismatch};
use crate::checker::{CheckError, Checker, ContextMap, Derivation, Judgement, Rule};
use crate::signature::{Decl, DeclKind, Signature, SignatureError};
use crate::syntax::{Context, Flavor, Symbol, Term, Type};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Fiber(#[from] FiberMismatch),
    #[error("no value assigned to {0}")]
    Unassigned(Symbol),
    #[error("the value for {symbol} lives over the wrong object")]
    WrongObject { symbol: Symbol },
    #[error("{0} is a {1} declaration; use the matching extension")]
    WrongKind(Symbol, &'static str),
}

/// The interpretation of a judgement.
#[derive(Clone, Debug)]
pub enum Interpretation<C: Cwf> {
    Context(C::Obj),
    Type(C::Ty),
    Elem(C::Tm),
}

impl<C: Cwf> PartialEq for Interpretation<C> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Interpretation::Context(a), Interpretation::Context(b)) => a == b,
            (Interpretation::Type(a), Interpretation::Type(b)) => a == b,
            (Interpretation::Elem(a), Interpretation::Elem(b)) => a == b,
            _ => false,
        }
    }
}

/// A model of a signature's type and function symbols in the cwf `C`.
/// Predicate symbols are carried in the signature and interpreted by a
/// doctrine.
#[derive(Clone, Debug)]
pub struct Model<C: Cwf> {
    cwf: C,
    sig: Signature,
    types: HashMap<Symbol, C::Ty>,
    funs: HashMap<Symbol, C::Tm>,
}

impl<C: Cwf> Model<C> {
    /// The unique model of the empty signature.
    pub fn empty(cwf: C, flavor: Flavor) -> Model<C> {
        Model { cwf, sig: Signature::empty(flavor), types: HashMap::new(), funs: HashMap::new() }
    }

    pub fn cwf(&self) -> &C {
        &self.cwf
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn type_value(&self, name: &str) -> Option<&C::Ty> {
        self.types.get(name)
    }

    pub fn fun_value(&self, name: &str) -> Option<&C::Tm> {
        self.funs.get(name)
    }

    /// `F(Γ_S)` or `σ(Γ_f, U_f)`: where the value of a new declaration must
    /// live. For a type declaration this is the object the assigned type
    /// lives over, returned as the telescope `σ(Γ^{k-1}, A_k)`.
    pub fn declared_telescope(&self, decl: &Decl) -> Result<Vec<C::Ty>, ModelError> {
        let checker = Checker::new(&self.sig);
        self.interp(&checker).telescope(&decl.ctx)
    }

    /// `σ(Γ_f, U_f)` for a function declaration not yet in the signature.
    pub fn declared_result(&self, decl: &Decl) -> Result<C::Ty, ModelError> {
        let DeclKind::Fun { ret } = &decl.kind else {
            return Err(ModelError::WrongKind(decl.name.clone(), decl.kind_name()));
        };
        self.ty(&decl.ctx, ret)
    }

    /// Extends the model by a type symbol interpreted as `value`, which must
    /// be a type over `F(Γ_S)`.
    pub fn extend_by_type(&self, decl: Decl, value: C::Ty) -> Result<Model<C>, ModelError> {
        if decl.kind != DeclKind::Type {
            return Err(ModelError::WrongKind(decl.name.clone(), decl.kind_name()));
        }
        let sig = self.sig.extend(decl.clone())?;
        let over = self.context(&decl.ctx)?;
        if self.cwf.ty_ctx(&value) != over {
            return Err(ModelError::WrongObject { symbol: decl.name });
        }
        let mut next = self.clone();
        next.sig = sig;
        next.types.insert(decl.name, value);
        Ok(next)
    }

    /// Extends the model by a function symbol interpreted as `value`, which
    /// must be a term of `σ(Γ_f, U_f)`.
    pub fn extend_by_fun(&self, decl: Decl, value: C::Tm) -> Result<Model<C>, ModelError> {
        let sig = self.sig.extend(decl.clone())?;
        let expected = self.declared_result(&decl)?;
        if self.cwf.tm_ty(&value) != expected {
            return Err(ModelError::WrongObject { symbol: decl.name });
        }
        let mut next = self.clone();
        next.sig = sig;
        next.funs.insert(decl.name, value);
        Ok(next)
    }

    /// Extends the signature by a predicate declaration, leaving the
    /// interpretation of types and terms untouched.
    pub fn extend_by_pred(&self, decl: Decl) -> Result<Model<C>, ModelError> {
        if decl.kind != DeclKind::Pred {
            return Err(ModelError::WrongKind(decl.name.clone(), decl.kind_name()));
        }
        let mut next = self.clone();
        next.sig = self.sig.extend(decl)?;
        Ok(next)
    }

    /// `F(Γ)`.
    pub fn context(&self, ctx: &Context) -> Result<C::Obj, ModelError> {
        let tele = self.telescope(ctx)?;
        Ok(self.cwf.telescope_objects(&tele).pop().expect("non-empty"))
    }

    /// `σ(Γ^0, A_1), …, σ(Γ^{n-1}, A_n)`.
    pub fn telescope(&self, ctx: &Context) -> Result<Vec<C::Ty>, ModelError> {
        let checker = Checker::new(&self.sig);
        checker.context(ctx)?;
        self.interp(&checker).telescope(ctx)
    }

    /// `σ(Γ, A)`.
    pub fn ty(&self, ctx: &Context, ty: &Type) -> Result<C::Ty, ModelError> {
        let checker = Checker::new(&self.sig);
        let d = checker.type_of(ctx, ty)?;
        self.interp(&checker).derivation_ty(&d)
    }

    /// `θ(Γ, A, a)` where `A` is the inferred type of `a`.
    pub fn term(&self, ctx: &Context, term: &Term) -> Result<C::Tm, ModelError> {
        let checker = Checker::new(&self.sig);
        let (_, d) = checker.infer(ctx, term)?;
        self.interp(&checker).derivation_tm(&d)
    }

    /// `F(Δ, Γ, ā) = θ̄(Δ, Γ, ā)`.
    pub fn map(&self, map: &ContextMap) -> Result<C::Mor, ModelError> {
        let checker = Checker::new(&self.sig);
        let checked = checker.context_map(map)?;
        let mut interp = self.interp(&checker);
        let tele = interp.telescope(&map.target)?;
        let source = interp.object(&map.source)?;
        let comps = checked.components.iter().map(|d| interp.derivation_tm(d)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.cwf.tuple(&source, &tele, &comps)?)
    }

    /// Interprets any judgement.
    pub fn judgement(&self, j: &Judgement) -> Result<Interpretation<C>, ModelError> {
        Ok(match j {
            Judgement::Context(ctx) => Interpretation::Context(self.context(ctx)?),
            Judgement::Type(ctx, ty) => Interpretation::Type(self.ty(ctx, ty)?),
            Judgement::Elem(ctx, t, ty) => {
                let checker = Checker::new(&self.sig);
                let d = checker.check_term(ctx, t, ty)?;
                Interpretation::Elem(self.interp(&checker).derivation_tm(&d)?)
            }
        })
    }

    fn interp<'a>(&'a self, checker: &'a Checker<'a>) -> Interp<'a, C> {
        Interp { model: self, checker, telescopes: HashMap::new(), memo_ty: HashMap::new(), memo_tm: HashMap::new() }
    }
}

struct Interp<'a, C: Cwf> {
    model: &'a Model<C>,
    checker: &'a Checker<'a>,
    telescopes: HashMap<Context, Vec<C::Ty>>,
    memo_ty: HashMap<*const Derivation, C::Ty>,
    memo_tm: HashMap<*const Derivation, C::Tm>,
}

impl<'a, C: Cwf> Interp<'a, C> {
    fn telescope(&mut self, ctx: &Context) -> Result<Vec<C::Ty>, ModelError> {
        if let Some(t) = self.telescopes.get(ctx) {
            return Ok(t.clone());
        }
        let tele = match ctx.split_last() {
            None => Vec::new(),
            Some((prefix, _, last)) => {
                let mut tele = self.telescope(&prefix)?;
                let d = self.checker.type_of(&prefix, last)?;
                tele.push(self.derivation_ty(&d)?);
                tele
            }
        };
        self.telescopes.insert(ctx.clone(), tele.clone());
        Ok(tele)
    }

    fn object(&mut self, ctx: &Context) -> Result<C::Obj, ModelError> {
        let tele = self.telescope(ctx)?;
        Ok(self.model.cwf.telescope_objects(&tele).pop().expect("non-empty"))
    }

    /// `θ̄(Δ, Γ_S, t̄)` from the argument premises of an R4/R5 node.
    fn argument_map(&mut self, d: &Derivation, decl: &Decl) -> Result<C::Mor, ModelError> {
        let n = decl.ctx.len();
        let target = self.telescope(&decl.ctx)?;
        let source = self.object(d.conclusion.context())?;
        let comps = d.premises[2..2 + n].iter().map(|p| self.derivation_tm(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.model.cwf.tuple(&source, &target, &comps)?)
    }

    fn decl(&self, d: &Derivation) -> &'a Decl {
        let name = d.symbol().expect("R4/R5 node names its symbol");
        self.model.sig.get(name).expect("checked symbols are declared")
    }

    fn derivation_ty(&mut self, d: &Arc<Derivation>) -> Result<C::Ty, ModelError> {
        let key = Arc::as_ptr(d);
        if let Some(t) = self.memo_ty.get(&key) {
            return Ok(t.clone());
        }
        debug_assert_eq!(d.rule, Rule::R4);
        let decl = self.decl(d);
        let base = self.model.types.get(&decl.name).ok_or_else(|| ModelError::Unassigned(decl.name.clone()))?;
        let map = self.argument_map(d, decl)?;
        let out = self.model.cwf.ty_subst(base, &map)?;
        self.memo_ty.insert(key, out.clone());
        Ok(out)
    }

    fn derivation_tm(&mut self, d: &Arc<Derivation>) -> Result<C::Tm, ModelError> {
        let key = Arc::as_ptr(d);
        if let Some(t) = self.memo_tm.get(&key) {
            return Ok(t.clone());
        }
        let out = match (&d.rule, &d.conclusion) {
            (Rule::R3, Judgement::Elem(ctx, Term::Var(x), _)) => {
                let (i, _) = ctx.lookup(x).expect("R3 variable is declared");
                let tele = self.telescope(ctx)?;
                self.model.cwf.var_proj(&tele, i + 1)?
            }
            (Rule::R5 | Rule::R5Star, _) => {
                let decl = self.decl(d);
                let base = self.model.funs.get(&decl.name).ok_or_else(|| ModelError::Unassigned(decl.name.clone()))?;
                let map = self.argument_map(d, decl)?;
                self.model.cwf.tm_subst(base, &map)?
            }
            _ => unreachable!("term derivations end in R3, R5 or R5*"),
        };
        self.memo_tm.insert(key, out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwf::finset::{FinSet, FinSetCwf, FinTm, FinTy, Val};
    use crate::syntax::Var;

    fn a() -> Type {
        Type::new("A", vec![])
    }

    fn e(x: &str, y: &str) -> Type {
        Type::new("E", vec![Term::var(x), Term::var(y)])
    }

    fn xy() -> Context {
        Context::from_entries(vec![(Var::new("x"), a()), (Var::new("y"), a())])
    }

    fn nat(v: &Val) -> u32 {
        match v {
            Val::Nat(n) => *n,
            other => panic!("{other}"),
        }
    }

    /// A = {0,1}, m = xor, E = diagonal, and the symmetry proof forced.
    fn xor_model() -> Model<FinSetCwf> {
        let c = FinSetCwf;
        let m0 = Model::empty(c, Flavor::Unrestricted);
        let a_decl = Decl::type_decl("A", Context::empty(), vec![]);
        let m1 = m0.extend_by_type(a_decl, FinTy::new(FinSet::unit(), vec![FinSet::nat(2)]).unwrap()).unwrap();
        let m_decl = Decl::fun_decl("m", xy(), vec![1, 2], a());
        let m_ty = m1.declared_result(&m_decl).unwrap();
        let xor = FinTm::from_fn(&m_ty, |env| {
            let xs = env.env_components().unwrap();
            Val::Nat(nat(&xs[0]) ^ nat(&xs[1]))
        })
        .unwrap();
        let m2 = m1.extend_by_fun(m_decl, xor).unwrap();
        let e_decl = Decl::type_decl("E", xy(), vec![1, 2]);
        let over = m2.context(&e_decl.ctx).unwrap();
        let diag = FinTy::from_fn(&over, |env| {
            let xs = env.env_components().unwrap();
            if xs[0] == xs[1] {
                FinSet::unit()
            } else {
                FinSet::default()
            }
        });
        let m3 = m2.extend_by_type(e_decl, diag).unwrap();
        let sigma = Decl::fun_decl("sigma", xy().extend(Var::new("p"), e("x", "y")), vec![3], e("y", "x"));
        let forced = FinTm::forced(&m3.declared_result(&sigma).unwrap()).unwrap();
        m3.extend_by_fun(sigma, forced).unwrap()
    }

    #[test]
    fn xor_model_interprets_applications() {
        let model = xor_model();
        let ctx = xy();
        let t = model.term(&ctx, &Term::app("m", vec![Term::var("y"), Term::var("x")])).unwrap();
        for (env, v) in t.ty.ctx.elems().iter().zip(t.values()) {
            let xs = env.env_components().unwrap();
            assert_eq!(nat(v), nat(&xs[0]) ^ nat(&xs[1]));
        }
    }

    #[test]
    fn naturality_along_a_context_map() {
        let model = xor_model();
        let c = model.cwf();
        let g = xy().extend(Var::new("p"), e("x", "y"));
        let target = e("y", "x");
        let u = Context::from_entries(vec![(Var::new("u"), a())]);
        let map = ContextMap::new(u.clone(), g.clone(), vec![Term::var("u"), Term::var("u"), Term::app("sigma", vec![])]);
        assert!(model.map(&map).is_err());
        let diag = ContextMap::new(
            Context::from_entries(vec![(Var::new("u"), a()), (Var::new("q"), e("u", "u"))]),
            g.clone(),
            vec![Term::var("u"), Term::var("u"), Term::var("q")],
        );
        let f = model.map(&diag).unwrap();
        let lhs = model.ty(&diag.source, &target.subst(&diag.subst())).unwrap();
        let rhs = c.ty_subst(&model.ty(&g, &target).unwrap(), &f).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_preserves_earlier_values() {
        let model = xor_model();
        let before = model.ty(&xy(), &e("x", "y")).unwrap();
        let extended = model
            .extend_by_type(
                Decl::type_decl("B", Context::empty(), vec![]),
                FinTy::new(FinSet::unit(), vec![FinSet::nat(1)]).unwrap(),
            )
            .unwrap();
        assert_eq!(extended.ty(&xy(), &e("x", "y")).unwrap(), before);
    }

    #[test]
    fn wrong_object_is_rejected() {
        let model = xor_model();
        let bad = FinTy::new(FinSet::nat(2), vec![FinSet::nat(1), FinSet::nat(1)]).unwrap();
        let err = model.extend_by_type(Decl::type_decl("B", Context::empty(), vec![]), bad).unwrap_err();
        assert!(matches!(err, ModelError::WrongObject { .. }));
    }
}
