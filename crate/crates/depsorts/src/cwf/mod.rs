//! Categories with families.
//!
//! [`Cwf`] is the abstract interface; [`free::FreeCwf`] is the syntactic
//! instance over a signature and [`finset::FinSetCwf`] the tabulated
//! finite-set instance. [`model::Model`] interprets checked syntax into any
//! instance, and [`laws`] holds the executable law suites.

pub mod finset;
pub mod free;
pub mod laws;
pub mod model;

use std::fmt::Debug;

use thiserror::Error;

/// Some operation received arguments living over the wrong objects.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("fiber mismatch: {0}")]
pub struct FiberMismatch(pub String);

impl FiberMismatch {
    pub fn new(msg: impl Into<String>) -> FiberMismatch {
        FiberMismatch(msg.into())
    }
}

/// The data of a category with families. Every operation whose typing
/// depends on its arguments reports a [`FiberMismatch`] instead of
/// producing an ill-typed value.
pub trait Cwf: Clone {
    type Obj: Clone + PartialEq + Debug;
    type Mor: Clone + PartialEq + Debug;
    type Ty: Clone + PartialEq + Debug;
    type Tm: Clone + PartialEq + Debug;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn id(&self, ctx: &Self::Obj) -> Self::Mor;
    /// `f ∘ g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, FiberMismatch>;
    fn terminal(&self) -> Self::Obj;
    /// `ε_Γ : Γ → ⊤`.
    fn bang(&self, ctx: &Self::Obj) -> Self::Mor;

    /// The object a type lives over.
    fn ty_ctx(&self, ty: &Self::Ty) -> Self::Obj;
    /// The type of a term.
    fn tm_ty(&self, tm: &Self::Tm) -> Self::Ty;
    /// `A{f}`.
    fn ty_subst(&self, ty: &Self::Ty, f: &Self::Mor) -> Result<Self::Ty, FiberMismatch>;
    /// `a{f}`.
    fn tm_subst(&self, tm: &Self::Tm, f: &Self::Mor) -> Result<Self::Tm, FiberMismatch>;

    /// `Γ.A`.
    fn ext(&self, ty: &Self::Ty) -> Self::Obj;
    /// `p(A) : Γ.A → Γ`.
    fn p(&self, ty: &Self::Ty) -> Self::Mor;
    /// `v_A ∈ Tm(Γ.A, A{p(A)})`.
    fn v(&self, ty: &Self::Ty) -> Self::Tm;
    /// `⟨f, a⟩_A : Δ → Γ.A` for `f: Δ → Γ` and `a ∈ Tm(Δ, A{f})`.
    fn pair(&self, f: &Self::Mor, a: &Self::Tm, ty: &Self::Ty) -> Result<Self::Mor, FiberMismatch>;

    /// `[a_1, …, a_n]_{Θ; A_1, …, A_n}`, where `A_k ∈ Ty(⊤.A_1.….A_{k-1})`.
    fn tuple(&self, theta: &Self::Obj, telescope: &[Self::Ty], terms: &[Self::Tm]) -> Result<Self::Mor, FiberMismatch> {
        if telescope.len() != terms.len() {
            return Err(FiberMismatch::new(format!("{} components for a telescope of length {}", terms.len(), telescope.len())));
        }
        let mut f = self.bang(theta);
        for (ty, tm) in telescope.iter().zip(terms) {
            f = self.pair(&f, tm, ty)?;
        }
        Ok(f)
    }

    /// The objects `⊤, ⊤.A_1, …, ⊤.A_1.….A_n` of a telescope.
    fn telescope_objects(&self, telescope: &[Self::Ty]) -> Vec<Self::Obj> {
        let mut objs = vec![self.terminal()];
        for ty in telescope {
            objs.push(self.ext(ty));
        }
        objs
    }

    /// `p^(i) : ⊤.A_1.….A_n → ⊤.A_1.….A_{n-i}`.
    fn iterated_p(&self, telescope: &[Self::Ty], i: usize) -> Result<Self::Mor, FiberMismatch> {
        let n = telescope.len();
        if i > n {
            return Err(FiberMismatch::new(format!("p^({i}) out of a telescope of length {n}")));
        }
        let top = self.telescope_objects(telescope).pop().expect("non-empty");
        let mut f = self.id(&top);
        for ty in telescope[n - i..].iter().rev() {
            f = self.compose(&self.p(ty), &f)?;
        }
        Ok(f)
    }

    /// The `i`-th variable `x_i = v_{A_i}{p^(n-i)}` (1-based).
    fn var_proj(&self, telescope: &[Self::Ty], i: usize) -> Result<Self::Tm, FiberMismatch> {
        let n = telescope.len();
        if i == 0 || i > n {
            return Err(FiberMismatch::new(format!("variable {i} out of a telescope of length {n}")));
        }
        let proj = self.iterated_p(telescope, n - i)?;
        self.tm_subst(&self.v(&telescope[i - 1]), &proj)
    }

    /// `q(f, S) = ⟨f ∘ p(S{f}), v_{S{f}}⟩_S : Δ.S{f} → Γ.S`.
    fn q(&self, f: &Self::Mor, ty: &Self::Ty) -> Result<Self::Mor, FiberMismatch> {
        let pulled = self.ty_subst(ty, f)?;
        let fp = self.compose(f, &self.p(&pulled))?;
        self.pair(&fp, &self.v(&pulled), ty)
    }
}
