//! The powerset doctrine on finite sets: predicates over `Γ` are subsets
//! of `Γ`, reindexing is preimage, and the quantifiers along `p(S)` ask for
//! every, respectively some, element of the fiber `S(γ)`.

use std::fmt;
use std::sync::Arc;

use super::{same_object, DoctrineError, Hyperdoctrine};
use crate::cwf::finset::{FinMor, FinSet, FinSetCwf, FinTy, Val};
use crate::cwf::Cwf;

/// A subset of `ctx`, as a membership vector over its sorted elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subset {
    pub ctx: FinSet,
    members: Arc<Vec<bool>>,
}

impl Subset {
    pub fn new(ctx: FinSet, members: Vec<bool>) -> Result<Subset, DoctrineError> {
        if members.len() != ctx.len() {
            return Err(DoctrineError::ContextMismatch(format!("{} flags for a set of size {}", members.len(), ctx.len())));
        }
        Ok(Subset { ctx, members: Arc::new(members) })
    }

    pub fn from_fn(ctx: &FinSet, f: impl Fn(&Val) -> bool) -> Subset {
        Subset { ctx: ctx.clone(), members: Arc::new(ctx.elems().iter().map(f).collect()) }
    }

    /// The subset holding exactly the listed elements.
    pub fn of(ctx: &FinSet, elems: &[Val]) -> Subset {
        Subset::from_fn(ctx, |v| elems.contains(v))
    }

    pub fn contains(&self, v: &Val) -> bool {
        self.ctx.index_of(v).is_some_and(|i| self.members[i])
    }

    pub fn members(&self) -> impl Iterator<Item = &Val> {
        self.ctx.elems().iter().zip(self.members.iter()).filter(|(_, m)| **m).map(|(v, _)| v)
    }

    pub fn flags(&self) -> &[bool] {
        &self.members
    }

    /// Every subset of `ctx`.
    pub fn all(ctx: &FinSet) -> Vec<Subset> {
        let n = ctx.len();
        (0..1usize << n)
            .map(|bits| Subset { ctx: ctx.clone(), members: Arc::new((0..n).map(|i| bits >> i & 1 == 1).collect()) })
            .collect()
    }

    fn zip(&self, other: &Subset, op: impl Fn(bool, bool) -> bool) -> Result<Subset, DoctrineError> {
        same_object(&self.ctx, &other.ctx)?;
        let members = self.members.iter().zip(other.members.iter()).map(|(a, b)| op(*a, *b)).collect();
        Ok(Subset { ctx: self.ctx.clone(), members: Arc::new(members) })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.members().map(Val::to_string).collect();
        write!(f, "{{{}}}", shown.join(", "))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SubsetDoctrine;

impl SubsetDoctrine {
    fn quantify(&self, s: &FinTy, r: &Subset, every: bool) -> Result<Subset, DoctrineError> {
        same_object(&FinSetCwf.ext(s), &r.ctx)?;
        Ok(Subset::from_fn(&s.ctx, |gamma| {
            let mut fiber = s.fiber(gamma).expect("in the context").elems().iter();
            let member = |a: &Val| r.contains(&Val::pair(gamma.clone(), a.clone()));
            if every {
                fiber.all(member)
            } else {
                fiber.any(member)
            }
        }))
    }
}

impl Hyperdoctrine for SubsetDoctrine {
    type Base = FinSetCwf;
    type Pred = Subset;

    fn base(&self) -> &FinSetCwf {
        &FinSetCwf
    }

    fn context_of(&self, r: &Subset) -> FinSet {
        r.ctx.clone()
    }

    fn le(&self, a: &Subset, b: &Subset) -> Result<bool, DoctrineError> {
        same_object(&a.ctx, &b.ctx)?;
        Ok(a.members.iter().zip(b.members.iter()).all(|(x, y)| !x || *y))
    }

    fn top(&self, ctx: &FinSet) -> Subset {
        Subset::from_fn(ctx, |_| true)
    }

    fn bot(&self, ctx: &FinSet) -> Subset {
        Subset::from_fn(ctx, |_| false)
    }

    fn and(&self, a: &Subset, b: &Subset) -> Result<Subset, DoctrineError> {
        a.zip(b, |x, y| x && y)
    }

    fn or(&self, a: &Subset, b: &Subset) -> Result<Subset, DoctrineError> {
        a.zip(b, |x, y| x || y)
    }

    fn imp(&self, a: &Subset, b: &Subset) -> Result<Subset, DoctrineError> {
        a.zip(b, |x, y| !x || y)
    }

    fn reindex(&self, r: &Subset, f: &FinMor) -> Result<Subset, DoctrineError> {
        same_object(&f.cod, &r.ctx)?;
        Ok(Subset::from_fn(&f.dom, |x| r.contains(f.apply(x).expect("in the domain"))))
    }

    fn forall(&self, s: &FinTy, r: &Subset) -> Result<Subset, DoctrineError> {
        self.quantify(s, r, true)
    }

    fn exists(&self, s: &FinTy, r: &Subset) -> Result<Subset, DoctrineError> {
        self.quantify(s, r, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::sym;

    fn tok(name: &str) -> Val {
        Val::Tok(sym(name))
    }

    #[test]
    fn quantifiers_over_a_vacuous_fiber() {
        let gamma = FinSet::new(vec![tok("g0"), tok("g1")]);
        let s = FinTy::from_fn(&gamma, |g| if *g == tok("g0") { FinSet::new(vec![tok("a")]) } else { FinSet::new(vec![]) });
        let ext = FinSetCwf.ext(&s);
        let r = Subset::of(&ext, &[Val::pair(tok("g0"), tok("a"))]);
        let d = SubsetDoctrine;
        assert_eq!(d.forall(&s, &r).unwrap(), d.top(&gamma));
        assert_eq!(d.exists(&s, &r).unwrap(), Subset::of(&gamma, &[tok("g0")]));
        assert_eq!(d.forall(&s, &d.top(&ext)).unwrap(), d.top(&gamma));
    }

    #[test]
    fn mixing_objects_is_an_error() {
        let d = SubsetDoctrine;
        assert!(d.and(&d.top(&FinSet::nat(1)), &d.top(&FinSet::nat(2))).is_err());
    }
}
