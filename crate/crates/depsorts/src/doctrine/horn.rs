//! The Horn doctrine of a cwf: finite sequences of types, ordered by
//! inhabitation over iterated comprehensions.
//!
//! `⟨A₁,…,Aₙ⟩ ≤ ⟨B₁,…,Bₘ⟩` holds when every `Bₖ{pⁿ}` has a term over
//! `Γ.A₁.A₂{p}…Aₙ{pⁿ⁻¹}`. Meets are concatenation and the top element is
//! the empty sequence. Concatenation is a meet only up to equivalence, so
//! `x ∧ y` and `y ∧ x` are equivalent but usually distinct.

use super::{same_object, DoctrineError, Inhabitation};
use crate::cwf::FiberMismatch;

/// A sequence of types over a common object.
#[derive(Clone, Debug)]
pub struct Conjunction<C: Inhabitation> {
    pub ctx: C::Obj,
    pub types: Vec<C::Ty>,
}

impl<C: Inhabitation> PartialEq for Conjunction<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.types == other.types
    }
}

#[derive(Clone, Debug)]
pub struct HornDoctrine<C: Inhabitation> {
    cwf: C,
}

impl<C: Inhabitation> HornDoctrine<C> {
    pub fn new(cwf: C) -> HornDoctrine<C> {
        HornDoctrine { cwf }
    }

    pub fn cwf(&self) -> &C {
        &self.cwf
    }

    pub fn single(&self, ty: C::Ty) -> Conjunction<C> {
        Conjunction { ctx: self.cwf.ty_ctx(&ty), types: vec![ty] }
    }

    pub fn top(&self, ctx: &C::Obj) -> Conjunction<C> {
        Conjunction { ctx: ctx.clone(), types: Vec::new() }
    }

    pub fn and(&self, a: &Conjunction<C>, b: &Conjunction<C>) -> Result<Conjunction<C>, DoctrineError> {
        same_object(&a.ctx, &b.ctx)?;
        Ok(Conjunction { ctx: a.ctx.clone(), types: a.types.iter().chain(&b.types).cloned().collect() })
    }

    /// The iterated comprehension of `a` together with its projection to `Γ`.
    fn comprehension(&self, a: &Conjunction<C>) -> Result<C::Mor, FiberMismatch> {
        let c = &self.cwf;
        let mut proj = c.id(&a.ctx);
        for ty in &a.types {
            let moved = c.ty_subst(ty, &proj)?;
            proj = c.compose(&proj, &c.p(&moved))?;
        }
        Ok(proj)
    }

    pub fn le(&self, a: &Conjunction<C>, b: &Conjunction<C>) -> Result<bool, DoctrineError> {
        same_object(&a.ctx, &b.ctx)?;
        let proj = self.comprehension(a)?;
        for ty in &b.types {
            if !self.cwf.inhabited(&self.cwf.ty_subst(ty, &proj)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Componentwise reindexing along `f : Δ → Γ`.
    pub fn reindex(&self, a: &Conjunction<C>, f: &C::Mor) -> Result<Conjunction<C>, DoctrineError> {
        same_object(&self.cwf.cod(f), &a.ctx)?;
        let types = a.types.iter().map(|ty| self.cwf.ty_subst(ty, f)).collect::<Result<_, _>>()?;
        Ok(Conjunction { ctx: self.cwf.dom(f), types })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwf::finset::{all_families, all_functions, objects_up_to, FinSetCwf};
    use crate::cwf::laws::LawSuite;

    #[test]
    fn empty_sequence_is_top() {
        let h = HornDoctrine::new(FinSetCwf);
        let gamma = objects_up_to(2).pop().unwrap();
        for a in all_families(&gamma, 2) {
            assert!(h.le(&h.single(a), &h.top(&gamma)).unwrap());
        }
    }

    #[test]
    fn singletons_compare_by_fiberwise_inhabitation() {
        let h = HornDoctrine::new(FinSetCwf);
        for gamma in objects_up_to(3) {
            let fams = all_families(&gamma, 2);
            for a in &fams {
                for b in &fams {
                    let expected = a.fibers().iter().zip(b.fibers()).all(|(x, y)| x.is_empty() || !y.is_empty());
                    assert_eq!(h.le(&h.single(a.clone()), &h.single(b.clone())).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn concatenation_is_a_meet_and_reindexing_is_monotone() {
        let h = HornDoctrine::new(FinSetCwf);
        let mut suite = LawSuite::new();
        for gamma in objects_up_to(2) {
            let singles: Vec<_> = all_families(&gamma, 2).into_iter().map(|a| h.single(a)).collect();
            let maps: Vec<_> = objects_up_to(2).iter().flat_map(|d| all_functions(d, &gamma)).collect();
            for x in &singles {
                for y in &singles {
                    let xy = h.and(x, y).unwrap();
                    suite.record("meet below left", h.le(&xy, x).unwrap(), String::new);
                    suite.record("meet below right", h.le(&xy, y).unwrap(), String::new);
                    for z in &singles {
                        let below = h.le(z, x).unwrap() && h.le(z, y).unwrap();
                        suite.record("meet is greatest", below == h.le(z, &xy).unwrap(), String::new);
                    }
                    for f in &maps {
                        let mono = !h.le(x, y).unwrap() || h.le(&h.reindex(x, f).unwrap(), &h.reindex(y, f).unwrap()).unwrap();
                        suite.record("reindex monotone", mono, String::new);
                    }
                }
            }
        }
        assert!(suite.passed(), "{:?}", suite.reports());
    }
}
