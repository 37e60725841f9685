//! The syntactic category with families of a signature: contexts, context
//! maps, types in context and typed terms in context.

use super::{Cwf, FiberMismatch};
use crate::checker::ContextMap;
use crate::signature::Signature;
use crate::syntax::{Context, Term, Type, VariableSystem};

/// `A type (Γ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeTy {
    pub ctx: Context,
    pub ty: Type,
}

/// `a : A (Γ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeTm {
    pub ctx: Context,
    pub term: Term,
    pub ty: Type,
}

#[derive(Clone, Debug)]
pub struct FreeCwf {
    vars: VariableSystem,
}

impl FreeCwf {
    pub fn new(sig: &Signature) -> FreeCwf {
        FreeCwf { vars: sig.var_system() }
    }
}

fn expect_ctx(expected: &Context, found: &Context, what: &str) -> Result<(), FiberMismatch> {
    if expected == found {
        Ok(())
    } else {
        Err(FiberMismatch::new(format!("{what}: expected {expected}, found {found}")))
    }
}

impl Cwf for FreeCwf {
    type Obj = Context;
    type Mor = ContextMap;
    type Ty = FreeTy;
    type Tm = FreeTm;

    fn dom(&self, f: &ContextMap) -> Context {
        f.source.clone()
    }

    fn cod(&self, f: &ContextMap) -> Context {
        f.target.clone()
    }

    fn id(&self, ctx: &Context) -> ContextMap {
        ContextMap::identity(ctx)
    }

    fn compose(&self, f: &ContextMap, g: &ContextMap) -> Result<ContextMap, FiberMismatch> {
        expect_ctx(&f.source, &g.target, "composition")?;
        Ok(f.compose(g))
    }

    fn terminal(&self) -> Context {
        Context::empty()
    }

    fn bang(&self, ctx: &Context) -> ContextMap {
        ContextMap::new(ctx.clone(), Context::empty(), Vec::new())
    }

    fn ty_ctx(&self, ty: &FreeTy) -> Context {
        ty.ctx.clone()
    }

    fn tm_ty(&self, tm: &FreeTm) -> FreeTy {
        FreeTy { ctx: tm.ctx.clone(), ty: tm.ty.clone() }
    }

    fn ty_subst(&self, ty: &FreeTy, f: &ContextMap) -> Result<FreeTy, FiberMismatch> {
        expect_ctx(&ty.ctx, &f.target, "type substitution")?;
        Ok(FreeTy { ctx: f.source.clone(), ty: ty.ty.subst(&f.subst()) })
    }

    fn tm_subst(&self, tm: &FreeTm, f: &ContextMap) -> Result<FreeTm, FiberMismatch> {
        expect_ctx(&tm.ctx, &f.target, "term substitution")?;
        let s = f.subst();
        Ok(FreeTm { ctx: f.source.clone(), term: tm.term.subst(&s), ty: tm.ty.subst(&s) })
    }

    fn ext(&self, ty: &FreeTy) -> Context {
        ty.ctx.extend(ty.ctx.fresh(&self.vars), ty.ty.clone())
    }

    fn p(&self, ty: &FreeTy) -> ContextMap {
        ContextMap::new(self.ext(ty), ty.ctx.clone(), ty.ctx.ov_terms())
    }

    fn v(&self, ty: &FreeTy) -> FreeTm {
        let x = ty.ctx.fresh(&self.vars);
        FreeTm { ctx: ty.ctx.extend(x.clone(), ty.ty.clone()), term: Term::Var(x), ty: ty.ty.clone() }
    }

    fn pair(&self, f: &ContextMap, a: &FreeTm, ty: &FreeTy) -> Result<ContextMap, FiberMismatch> {
        expect_ctx(&ty.ctx, &f.target, "pairing")?;
        let expected = self.ty_subst(ty, f)?;
        if a.ctx != expected.ctx || a.ty != expected.ty {
            return Err(FiberMismatch::new(format!(
                "pairing: {} : {} ({}) is not a term of {} ({})",
                a.term, a.ty, a.ctx, expected.ty, expected.ctx
            )));
        }
        let mut terms = f.terms.clone();
        terms.push(a.term.clone());
        Ok(ContextMap::new(f.source.clone(), self.ext(ty), terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Decl;
    use crate::syntax::{Flavor, Var};

    fn sig() -> Signature {
        let a = Type::new("A", vec![]);
        let xy = Context::from_entries(vec![(Var::new("x"), a.clone()), (Var::new("y"), a.clone())]);
        Signature::replay(
            Flavor::Unrestricted,
            vec![
                Decl::type_decl("A", Context::empty(), vec![]),
                Decl::type_decl("E", xy, vec![1, 2]),
                Decl::fun_decl("a", Context::empty(), vec![], a.clone()),
                Decl::fun_decl("b", Context::empty(), vec![], a),
            ],
        )
        .unwrap()
    }

    fn a_ty(ctx: &Context) -> FreeTy {
        FreeTy { ctx: ctx.clone(), ty: Type::new("A", vec![]) }
    }

    fn constant(name: &str) -> FreeTm {
        FreeTm { ctx: Context::empty(), term: Term::constant(name), ty: Type::new("A", vec![]) }
    }

    #[test]
    fn tuple_projects_to_its_components() {
        let c = FreeCwf::new(&sig());
        let tele = vec![a_ty(&Context::empty()), a_ty(&c.ext(&a_ty(&Context::empty())))];
        let ab = c.tuple(&Context::empty(), &tele, &[constant("a"), constant("b")]).unwrap();
        assert_eq!(ab.terms, vec![Term::constant("a"), Term::constant("b")]);
        let x1 = c.var_proj(&tele, 1).unwrap();
        assert_eq!(c.tm_subst(&x1, &ab).unwrap().term, Term::constant("a"));
        let x2 = c.var_proj(&tele, 2).unwrap();
        assert_eq!(c.tm_subst(&x2, &ab).unwrap().term, Term::constant("b"));
    }

    #[test]
    fn pairing_p_with_v_is_the_identity() {
        let c = FreeCwf::new(&sig());
        let base = a_ty(&Context::empty());
        let ext = c.ext(&base);
        let ty = FreeTy { ctx: ext.clone(), ty: Type::new("A", vec![]) };
        let pv = c.pair(&c.p(&ty), &c.v(&ty), &ty).unwrap();
        assert_eq!(pv, c.id(&c.ext(&ty)));
    }

    #[test]
    fn pairing_rejects_ill_typed_components() {
        let c = FreeCwf::new(&sig());
        let e = FreeTy { ctx: Context::empty(), ty: Type::new("E", vec![Term::constant("a"), Term::constant("a")]) };
        let err = c.pair(&c.bang(&Context::empty()), &constant("a"), &e).unwrap_err();
        assert!(err.0.contains("pairing"));
    }
}
