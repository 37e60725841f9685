//! First-order hyperdoctrines over categories with families.
//!
//! A [`Hyperdoctrine`] attaches to every object `Γ` of its base cwf a Heyting
//! prealgebra of predicates, with reindexing along morphisms and quantifiers
//! along the projections `p(S)`. Predicates carry the object they live over;
//! combining predicates over different objects is an error.
//!
//! Instances: [`SubsetDoctrine`] and [`PatDoctrine`] over the finite-set cwf,
//! the Horn fragment [`HornDoctrine`] over any cwf that can decide
//! inhabitation, and the symbolic [`LtDoctrine`] of formulas in context.
//! Formula evaluation and the soundness harness live in [`eval`].

pub mod eval;
pub mod horn;
pub mod laws;
pub mod lt;
pub mod pat;
pub mod subset;

use std::fmt::Debug;

use thiserror::Error;

use crate::cwf::finset::{FinSetCwf, FinTy};
use crate::cwf::laws::LawSuite;
use crate::cwf::{Cwf, FiberMismatch};

pub use eval::{
    check_sequent_semantic, enumerate_choices, eval_formula, finset_structure, soundness_harness, EvalError, SoundnessReport,
    Structure,
};
pub use horn::{Conjunction, HornDoctrine};
pub use lt::{LtDoctrine, LtPred};
pub use pat::PatDoctrine;
pub use subset::{Subset, SubsetDoctrine};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DoctrineError {
    #[error("predicates over different objects: {0}")]
    ContextMismatch(String),
    #[error(transparent)]
    Fiber(#[from] FiberMismatch),
}

/// Decides whether a type has a global section, that is whether
/// `Tm(Γ, A)` is inhabited.
pub trait Inhabitation: Cwf {
    fn inhabited(&self, ty: &Self::Ty) -> bool;
}

impl Inhabitation for FinSetCwf {
    fn inhabited(&self, ty: &FinTy) -> bool {
        ty.fibers().iter().all(|f| !f.is_empty())
    }
}

/// A first-order hyperdoctrine over the cwf [`Hyperdoctrine::Base`].
pub trait Hyperdoctrine {
    type Base: Cwf;
    type Pred: Clone + PartialEq + Debug;

    fn base(&self) -> &Self::Base;
    /// The object a predicate lives over.
    fn context_of(&self, r: &Self::Pred) -> <Self::Base as Cwf>::Obj;

    fn le(&self, a: &Self::Pred, b: &Self::Pred) -> Result<bool, DoctrineError>;
    fn top(&self, ctx: &<Self::Base as Cwf>::Obj) -> Self::Pred;
    fn bot(&self, ctx: &<Self::Base as Cwf>::Obj) -> Self::Pred;
    fn and(&self, a: &Self::Pred, b: &Self::Pred) -> Result<Self::Pred, DoctrineError>;
    fn or(&self, a: &Self::Pred, b: &Self::Pred) -> Result<Self::Pred, DoctrineError>;
    fn imp(&self, a: &Self::Pred, b: &Self::Pred) -> Result<Self::Pred, DoctrineError>;

    /// `R{f}`.
    fn reindex(&self, r: &Self::Pred, f: &<Self::Base as Cwf>::Mor) -> Result<Self::Pred, DoctrineError>;
    /// `∀_S(R)` for `R` over `Γ.S`.
    fn forall(&self, s: &<Self::Base as Cwf>::Ty, r: &Self::Pred) -> Result<Self::Pred, DoctrineError>;
    /// `∃_S(R)` for `R` over `Γ.S`.
    fn exists(&self, s: &<Self::Base as Cwf>::Ty, r: &Self::Pred) -> Result<Self::Pred, DoctrineError>;

    /// `a ≤ b` and `b ≤ a`.
    fn equiv(&self, a: &Self::Pred, b: &Self::Pred) -> Result<bool, DoctrineError> {
        Ok(self.le(a, b)? && self.le(b, a)?)
    }
}

pub(crate) fn same_object<T: PartialEq + Debug>(a: &T, b: &T) -> Result<(), DoctrineError> {
    if a == b {
        Ok(())
    } else {
        Err(DoctrineError::ContextMismatch(format!("{a:?} vs {b:?}")))
    }
}

fn record(suite: &mut LawSuite, law: &str, outcome: Result<bool, DoctrineError>, detail: impl FnOnce() -> String) {
    let ok = matches!(outcome, Ok(true));
    suite.record(law, ok, || match outcome {
        Err(e) => format!("{}: {e}", detail()),
        _ => detail(),
    });
}

/// The Heyting prealgebra axioms on `x, y, z` over a common object, with
/// reflexivity and transitivity of the order.
pub fn heyting_laws<D: Hyperdoctrine>(d: &D, suite: &mut LawSuite, x: &D::Pred, y: &D::Pred, z: &D::Pred) {
    let show = || format!("x = {x:?}, y = {y:?}, z = {z:?}");
    let ctx = d.context_of(x);
    record(suite, "heyting: refl", d.le(x, x), show);
    record(suite, "heyting: trans", (|| Ok(!(d.le(x, y)? && d.le(y, z)?) || d.le(x, z)?))(), show);
    record(suite, "heyting (a) bot", d.le(&d.bot(&ctx), x), show);
    record(suite, "heyting (a) top", d.le(x, &d.top(&ctx)), show);
    record(suite, "heyting (b) and", (|| Ok(d.le(z, &d.and(x, y)?)? == (d.le(z, x)? && d.le(z, y)?)))(), show);
    record(suite, "heyting (c) or", (|| Ok(d.le(&d.or(x, y)?, z)? == (d.le(x, z)? && d.le(y, z)?)))(), show);
    record(suite, "heyting (d) imp", (|| Ok(d.le(z, &d.imp(x, y)?)? == d.le(&d.and(z, x)?, y)?))(), show);
}

/// Reindexing along `f` is monotone, fixes identities, and is a Heyting
/// homomorphism up to equivalence.
pub fn reindex_laws<D: Hyperdoctrine>(d: &D, suite: &mut LawSuite, x: &D::Pred, y: &D::Pred, f: &<D::Base as Cwf>::Mor) {
    let c = d.base();
    let show = || format!("x = {x:?}, y = {y:?}, f = {f:?}");
    let re = |r: &D::Pred| d.reindex(r, f);
    record(suite, "reindex: monotone", (|| Ok(!d.le(x, y)? || d.le(&re(x)?, &re(y)?)?))(), show);
    record(suite, "reindex: identity", (|| Ok(d.reindex(x, &c.id(&d.context_of(x)))? == *x))(), show);
    let dom = c.dom(f);
    record(suite, "reindex: top", (|| d.equiv(&re(&d.top(&c.cod(f)))?, &d.top(&dom)))(), show);
    record(suite, "reindex: bot", (|| d.equiv(&re(&d.bot(&c.cod(f)))?, &d.bot(&dom)))(), show);
    record(suite, "reindex: and", (|| d.equiv(&re(&d.and(x, y)?)?, &d.and(&re(x)?, &re(y)?)?))(), show);
    record(suite, "reindex: or", (|| d.equiv(&re(&d.or(x, y)?)?, &d.or(&re(x)?, &re(y)?)?))(), show);
    record(suite, "reindex: imp", (|| d.equiv(&re(&d.imp(x, y)?)?, &d.imp(&re(x)?, &re(y)?)?))(), show);
}

/// `x{f ∘ g} = x{f}{g}`.
pub fn reindex_composition<D: Hyperdoctrine>(
    d: &D,
    suite: &mut LawSuite,
    x: &D::Pred,
    f: &<D::Base as Cwf>::Mor,
    g: &<D::Base as Cwf>::Mor,
) {
    let outcome = (|| {
        let fg = d.base().compose(f, g)?;
        Ok(d.reindex(x, &fg)? == d.reindex(&d.reindex(x, f)?, g)?)
    })();
    record(suite, "reindex: composition", outcome, || format!("x = {x:?}, f = {f:?}, g = {g:?}"));
}

/// The adjunctions `∃_S ⊣ (−){p(S)} ⊣ ∀_S` at `Q` over `Γ` and `R` over
/// `Γ.S`, and the Frobenius inequality.
pub fn quantifier_laws<D: Hyperdoctrine>(d: &D, suite: &mut LawSuite, s: &<D::Base as Cwf>::Ty, q: &D::Pred, r: &D::Pred) {
    let p = d.base().p(s);
    let show = || format!("S = {s:?}, Q = {q:?}, R = {r:?}");
    record(suite, "3(a) forall adjunction", (|| Ok(d.le(q, &d.forall(s, r)?)? == d.le(&d.reindex(q, &p)?, r)?))(), show);
    record(suite, "3(b) exists adjunction", (|| Ok(d.le(&d.exists(s, r)?, q)? == d.le(r, &d.reindex(q, &p)?)?))(), show);
    record(
        suite,
        "frobenius",
        (|| {
            let lhs = d.and(q, &d.exists(s, r)?)?;
            let rhs = d.exists(s, &d.and(&d.reindex(q, &p)?, r)?)?;
            d.le(&lhs, &rhs)
        })(),
        show,
    );
}

/// Beck–Chevalley along the q-square of `f : Δ → Γ` and `S ∈ Ty(Γ)`, as
/// equality of predicates.
pub fn beck_chevalley<D: Hyperdoctrine>(
    d: &D,
    suite: &mut LawSuite,
    s: &<D::Base as Cwf>::Ty,
    r: &D::Pred,
    f: &<D::Base as Cwf>::Mor,
) {
    let c = d.base();
    let show = || format!("S = {s:?}, R = {r:?}, f = {f:?}");
    let moved = || -> Result<(<D::Base as Cwf>::Ty, D::Pred), DoctrineError> {
        let sf = c.ty_subst(s, f)?;
        let rq = d.reindex(r, &c.q(f, s)?)?;
        Ok((sf, rq))
    };
    record(
        suite,
        "4(a) forall Beck-Chevalley",
        (|| {
            let (sf, rq) = moved()?;
            Ok(d.reindex(&d.forall(s, r)?, f)? == d.forall(&sf, &rq)?)
        })(),
        show,
    );
    record(
        suite,
        "4(b) exists Beck-Chevalley",
        (|| {
            let (sf, rq) = moved()?;
            Ok(d.reindex(&d.exists(s, r)?, f)? == d.exists(&sf, &rq)?)
        })(),
        show,
    );
}
