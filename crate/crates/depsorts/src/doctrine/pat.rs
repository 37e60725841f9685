//! Propositions as types over the finite-set cwf.
//!
//! A predicate over `Γ` is a type `A ∈ Ty(Γ)`, and `A ≤ B` holds when
//! `Tm(Γ.A, B{p(A)})` is inhabited. The connectives are the type formers:
//!
//! | logic | type      |
//! |-------|-----------|
//! | `⊤`   | `N₁`      |
//! | `⊥`   | `N₀`      |
//! | `∧`   | `A × B`   |
//! | `∨`   | `A + B`   |
//! | `→`   | `A → B`   |
//! | `∀_S` | `Π(S, R)` |
//! | `∃_S` | `Σ(S, R)` |
//!
//! where `A × B = Σ(A, B{p(A)})` and `A → B = Π(A, B{p(A)})`.

use super::{same_object, DoctrineError, Hyperdoctrine, Inhabitation};
use crate::cwf::finset::{FinMor, FinSet, FinSetCwf, FinTy};
use crate::cwf::Cwf;

#[derive(Clone, Copy, Debug, Default)]
pub struct PatDoctrine;

impl PatDoctrine {
    fn weakened(&self, a: &FinTy, b: &FinTy) -> Result<FinTy, DoctrineError> {
        same_object(&a.ctx, &b.ctx)?;
        Ok(FinSetCwf.ty_subst(b, &FinSetCwf.p(a))?)
    }
}

impl Hyperdoctrine for PatDoctrine {
    type Base = FinSetCwf;
    type Pred = FinTy;

    fn base(&self) -> &FinSetCwf {
        &FinSetCwf
    }

    fn context_of(&self, r: &FinTy) -> FinSet {
        r.ctx.clone()
    }

    fn le(&self, a: &FinTy, b: &FinTy) -> Result<bool, DoctrineError> {
        Ok(FinSetCwf.inhabited(&self.weakened(a, b)?))
    }

    fn top(&self, ctx: &FinSet) -> FinTy {
        FinSetCwf.nat_ty(ctx, 1)
    }

    fn bot(&self, ctx: &FinSet) -> FinTy {
        FinSetCwf.nat_ty(ctx, 0)
    }

    fn and(&self, a: &FinTy, b: &FinTy) -> Result<FinTy, DoctrineError> {
        Ok(FinSetCwf.sigma(a, &self.weakened(a, b)?)?)
    }

    fn or(&self, a: &FinTy, b: &FinTy) -> Result<FinTy, DoctrineError> {
        same_object(&a.ctx, &b.ctx)?;
        Ok(FinSetCwf.sum(a, b)?)
    }

    fn imp(&self, a: &FinTy, b: &FinTy) -> Result<FinTy, DoctrineError> {
        Ok(FinSetCwf.pi(a, &self.weakened(a, b)?)?)
    }

    fn reindex(&self, r: &FinTy, f: &FinMor) -> Result<FinTy, DoctrineError> {
        Ok(FinSetCwf.ty_subst(r, f)?)
    }

    fn forall(&self, s: &FinTy, r: &FinTy) -> Result<FinTy, DoctrineError> {
        Ok(FinSetCwf.pi(s, r)?)
    }

    fn exists(&self, s: &FinTy, r: &FinTy) -> Result<FinTy, DoctrineError> {
        Ok(FinSetCwf.sigma(s, r)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwf::finset::{all_families, objects_up_to};

    #[test]
    fn a_family_with_an_empty_fiber_is_below_everything_there() {
        let d = PatDoctrine;
        let gamma = FinSet::nat(2);
        let empty = d.bot(&gamma);
        for b in all_families(&gamma, 2) {
            assert!(d.le(&empty, &b).unwrap());
        }
    }

    #[test]
    fn currying_at_size_two() {
        let d = PatDoctrine;
        for gamma in objects_up_to(2) {
            let fams = all_families(&gamma, 2);
            for a in &fams {
                for b in &fams {
                    for c in &fams {
                        let lhs = d.le(&d.and(a, b).unwrap(), c).unwrap();
                        let rhs = d.le(a, &d.imp(b, c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn existential_adjunction_at_size_two() {
        let d = PatDoctrine;
        for gamma in objects_up_to(2) {
            for s in all_families(&gamma, 2) {
                let ext = FinSetCwf.ext(&s);
                if ext.len() > 2 {
                    continue;
                }
                let p = FinSetCwf.p(&s);
                for q in all_families(&gamma, 2) {
                    for r in all_families(&ext, 2) {
                        let lhs = d.le(&d.exists(&s, &r).unwrap(), &q).unwrap();
                        let rhs = d.le(&r, &d.reindex(&q, &p).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
