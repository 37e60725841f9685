//! The category with families of finite sets and finite families of sets.
//!
//! Objects are finite sets of [`Val`]s, morphisms are tabulated functions,
//! a type over `Γ` is a family of finite sets indexed by the elements of
//! `Γ`, and a term is a section of such a family. Comprehension is the
//! disjoint union `Γ.A = {(γ, a) | γ ∈ Γ, a ∈ A(γ)}`.
//!
//! The type formers `N_k`, `Σ`, `Π` and `+` are provided together with their
//! introduction and elimination operations.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use super::{Cwf, FiberMismatch};
use crate::syntax::Symbol;

/// An element of a finite set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Val {
    Unit,
    Nat(u32),
    Tok(Symbol),
    Pair(Arc<Val>, Arc<Val>),
    Inl(Arc<Val>),
    Inr(Arc<Val>),
    /// A finite function, as its graph sorted by argument.
    Fun(Arc<Vec<(Val, Val)>>),
}

impl Val {
    pub fn pair(a: Val, b: Val) -> Val {
        Val::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn inl(a: Val) -> Val {
        Val::Inl(Arc::new(a))
    }

    pub fn inr(b: Val) -> Val {
        Val::Inr(Arc::new(b))
    }

    /// The environment `((((), v1), v2), …)` of a tuple of values.
    pub fn env(values: &[Val]) -> Val {
        values.iter().cloned().fold(Val::Unit, Val::pair)
    }

    /// The components of a nested environment, if `self` is one.
    pub fn env_components(&self) -> Option<Vec<Val>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Val::Unit => break,
                Val::Pair(rest, last) => {
                    out.push((**last).clone());
                    cur = rest;
                }
                _ => return None,
            }
        }
        out.reverse();
        Some(out)
    }

    /// Applies a finite function.
    pub fn apply(&self, arg: &Val) -> Option<&Val> {
        match self {
            Val::Fun(graph) => graph.binary_search_by(|(x, _)| x.cmp(arg)).ok().map(|i| &graph[i].1),
            _ => None,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Unit => f.write_str("*"),
            Val::Nat(n) => write!(f, "{n}"),
            Val::Tok(t) => f.write_str(t),
            Val::Pair(a, b) => write!(f, "({a}, {b})"),
            Val::Inl(a) => write!(f, "inl({a})"),
            Val::Inr(b) => write!(f, "inr({b})"),
            Val::Fun(graph) => {
                f.write_str("{")?;
                for (i, (x, y)) in graph.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x} ↦ {y}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// A finite set, stored sorted and without repetition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FinSet(Arc<Vec<Val>>);

impl FinSet {
    pub fn new(mut elems: Vec<Val>) -> FinSet {
        elems.sort();
        elems.dedup();
        FinSet(Arc::new(elems))
    }

    /// `{0, …, k-1}`.
    pub fn nat(k: u32) -> FinSet {
        FinSet(Arc::new((0..k).map(Val::Nat).collect()))
    }

    pub fn unit() -> FinSet {
        FinSet(Arc::new(vec![Val::Unit]))
    }

    pub fn elems(&self) -> &[Val] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, v: &Val) -> Option<usize> {
        self.0.binary_search(v).ok()
    }

    pub fn contains(&self, v: &Val) -> bool {
        self.index_of(v).is_some()
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(", "))
    }
}

/// A function between finite sets, tabulated along its domain.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinMor {
    pub dom: FinSet,
    pub cod: FinSet,
    table: Arc<Vec<Val>>,
}

impl FinMor {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<Val>) -> Result<FinMor, FiberMismatch> {
        if table.len() != dom.len() {
            return Err(FiberMismatch::new(format!("{} images for a domain of size {}", table.len(), dom.len())));
        }
        if let Some(bad) = table.iter().find(|y| !cod.contains(y)) {
            return Err(FiberMismatch::new(format!("{bad} is not in the codomain {cod}")));
        }
        Ok(FinMor { dom, cod, table: Arc::new(table) })
    }

    pub fn from_fn(dom: &FinSet, cod: &FinSet, f: impl Fn(&Val) -> Val) -> Result<FinMor, FiberMismatch> {
        FinMor::new(dom.clone(), cod.clone(), dom.elems().iter().map(f).collect())
    }

    pub fn table(&self) -> &[Val] {
        &self.table
    }

    pub fn apply(&self, x: &Val) -> Option<&Val> {
        self.dom.index_of(x).map(|i| &self.table[i])
    }
}

/// A family of finite sets indexed by the elements of `ctx`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinTy {
    pub ctx: FinSet,
    fibers: Arc<Vec<FinSet>>,
}

impl FinTy {
    pub fn new(ctx: FinSet, fibers: Vec<FinSet>) -> Result<FinTy, FiberMismatch> {
        if fibers.len() != ctx.len() {
            return Err(FiberMismatch::new(format!("{} fibers over a set of size {}", fibers.len(), ctx.len())));
        }
        Ok(FinTy { ctx, fibers: Arc::new(fibers) })
    }

    pub fn from_fn(ctx: &FinSet, f: impl Fn(&Val) -> FinSet) -> FinTy {
        FinTy { ctx: ctx.clone(), fibers: Arc::new(ctx.elems().iter().map(f).collect()) }
    }

    pub fn fibers(&self) -> &[FinSet] {
        &self.fibers
    }

    pub fn fiber(&self, gamma: &Val) -> Option<&FinSet> {
        self.ctx.index_of(gamma).map(|i| &self.fibers[i])
    }
}

/// A section of a family.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinTm {
    pub ty: FinTy,
    values: Arc<Vec<Val>>,
}

impl FinTm {
    pub fn new(ty: FinTy, values: Vec<Val>) -> Result<FinTm, FiberMismatch> {
        if values.len() != ty.ctx.len() {
            return Err(FiberMismatch::new(format!("{} values over a set of size {}", values.len(), ty.ctx.len())));
        }
        for ((gamma, fiber), value) in ty.ctx.elems().iter().zip(ty.fibers.iter()).zip(&values) {
            if !fiber.contains(value) {
                return Err(FiberMismatch::new(format!("{value} is not in the fiber {fiber} over {gamma}")));
            }
        }
        Ok(FinTm { ty, values: Arc::new(values) })
    }

    pub fn from_fn(ty: &FinTy, f: impl Fn(&Val) -> Val) -> Result<FinTm, FiberMismatch> {
        FinTm::new(ty.clone(), ty.ctx.elems().iter().map(f).collect())
    }

    pub fn values(&self) -> &[Val] {
        &self.values
    }

    pub fn at(&self, gamma: &Val) -> Option<&Val> {
        self.ty.ctx.index_of(gamma).map(|i| &self.values[i])
    }

    /// The unique section of a family of singletons.
    pub fn forced(ty: &FinTy) -> Option<FinTm> {
        let values: Option<Vec<Val>> =
            ty.fibers.iter().map(|f| if f.len() == 1 { Some(f.elems()[0].clone()) } else { None }).collect();
        values.map(|values| FinTm { ty: ty.clone(), values: Arc::new(values) })
    }
}

fn same_ctx(expected: &FinSet, found: &FinSet, what: &str) -> Result<(), FiberMismatch> {
    if expected == found {
        Ok(())
    } else {
        Err(FiberMismatch::new(format!("{what}: expected a family over {expected}, found one over {found}")))
    }
}

fn same_ty(expected: &FinTy, found: &FinTy, what: &str) -> Result<(), FiberMismatch> {
    if expected == found {
        Ok(())
    } else {
        Err(FiberMismatch::new(format!("{what}: the term lives in the wrong family")))
    }
}

fn at<'a>(tm: &'a FinTm, gamma: &Val) -> &'a Val {
    tm.at(gamma).expect("index lies in the context of the term")
}

fn pair_fst(v: &Val) -> &Val {
    match v {
        Val::Pair(a, _) => a,
        other => panic!("{other} is not an element of a comprehension"),
    }
}

fn pair_snd(v: &Val) -> &Val {
    match v {
        Val::Pair(_, b) => b,
        other => panic!("{other} is not an element of a comprehension"),
    }
}

/// The finite-set category with families.
#[derive(Clone, Copy, Debug, Default)]
pub struct FinSetCwf;

impl Cwf for FinSetCwf {
    type Obj = FinSet;
    type Mor = FinMor;
    type Ty = FinTy;
    type Tm = FinTm;

    fn dom(&self, f: &FinMor) -> FinSet {
        f.dom.clone()
    }

    fn cod(&self, f: &FinMor) -> FinSet {
        f.cod.clone()
    }

    fn id(&self, ctx: &FinSet) -> FinMor {
        FinMor { dom: ctx.clone(), cod: ctx.clone(), table: ctx.0.clone() }
    }

    fn compose(&self, f: &FinMor, g: &FinMor) -> Result<FinMor, FiberMismatch> {
        if f.dom != g.cod {
            return Err(FiberMismatch::new(format!("cannot compose through {} and {}", g.cod, f.dom)));
        }
        let table = g.table.iter().map(|y| f.apply(y).expect("in the domain").clone()).collect();
        Ok(FinMor { dom: g.dom.clone(), cod: f.cod.clone(), table: Arc::new(table) })
    }

    fn terminal(&self) -> FinSet {
        FinSet::unit()
    }

    fn bang(&self, ctx: &FinSet) -> FinMor {
        FinMor { dom: ctx.clone(), cod: FinSet::unit(), table: Arc::new(vec![Val::Unit; ctx.len()]) }
    }

    fn ty_ctx(&self, ty: &FinTy) -> FinSet {
        ty.ctx.clone()
    }

    fn tm_ty(&self, tm: &FinTm) -> FinTy {
        tm.ty.clone()
    }

    fn ty_subst(&self, ty: &FinTy, f: &FinMor) -> Result<FinTy, FiberMismatch> {
        same_ctx(&ty.ctx, &f.cod, "type substitution")?;
        let fibers = f.table.iter().map(|y| ty.fiber(y).expect("in the context").clone()).collect();
        Ok(FinTy { ctx: f.dom.clone(), fibers: Arc::new(fibers) })
    }

    fn tm_subst(&self, tm: &FinTm, f: &FinMor) -> Result<FinTm, FiberMismatch> {
        let ty = self.ty_subst(&tm.ty, f)?;
        let values = f.table.iter().map(|y| at(tm, y).clone()).collect();
        Ok(FinTm { ty, values: Arc::new(values) })
    }

    fn ext(&self, ty: &FinTy) -> FinSet {
        let mut elems = Vec::new();
        for (gamma, fiber) in ty.ctx.elems().iter().zip(ty.fibers.iter()) {
            elems.extend(fiber.elems().iter().map(|a| Val::pair(gamma.clone(), a.clone())));
        }
        FinSet::new(elems)
    }

    fn p(&self, ty: &FinTy) -> FinMor {
        let dom = self.ext(ty);
        let table = dom.elems().iter().map(|e| pair_fst(e).clone()).collect();
        FinMor { dom, cod: ty.ctx.clone(), table: Arc::new(table) }
    }

    fn v(&self, ty: &FinTy) -> FinTm {
        let p = self.p(ty);
        let over = self.ty_subst(ty, &p).expect("p lands in the context of the type");
        let values = p.dom.elems().iter().map(|e| pair_snd(e).clone()).collect();
        FinTm { ty: over, values: Arc::new(values) }
    }

    fn pair(&self, f: &FinMor, a: &FinTm, ty: &FinTy) -> Result<FinMor, FiberMismatch> {
        same_ty(&self.ty_subst(ty, f)?, &a.ty, "pairing")?;
        let table = f.dom.elems().iter().zip(f.table.iter()).map(|(d, y)| Val::pair(y.clone(), at(a, d).clone())).collect();
        Ok(FinMor { dom: f.dom.clone(), cod: self.ext(ty), table: Arc::new(table) })
    }
}

impl FinSetCwf {
    /// `⟨1_Γ, a⟩_A : Γ → Γ.A`.
    pub fn section(&self, a: &FinTm, ty: &FinTy) -> Result<FinMor, FiberMismatch> {
        self.pair(&self.id(&ty.ctx), a, ty)
    }

    /// `N_k` over `Γ`.
    pub fn nat_ty(&self, ctx: &FinSet, k: u32) -> FinTy {
        FinTy::from_fn(ctx, |_| FinSet::nat(k))
    }

    /// `i_k ∈ Tm(Γ, N_k)`.
    pub fn nat_elem(&self, ctx: &FinSet, k: u32, i: u32) -> Result<FinTm, FiberMismatch> {
        FinTm::from_fn(&self.nat_ty(ctx, k), |_| Val::Nat(i))
    }

    /// `R_{k,Γ,C}(P, M_0, …, M_{k-1}) ∈ Tm(Γ, C{⟨1, P⟩})`.
    pub fn nat_rec(&self, c: &FinTy, p: &FinTm, branches: &[FinTm]) -> Result<FinTm, FiberMismatch> {
        let ctx = p.ty.ctx.clone();
        let k = branches.len() as u32;
        let nk = self.nat_ty(&ctx, k);
        same_ty(&nk, &p.ty, "recursor scrutinee")?;
        same_ctx(&self.ext(&nk), &c.ctx, "recursor motive")?;
        for (i, m) in branches.iter().enumerate() {
            let expected = self.ty_subst(c, &self.section(&self.nat_elem(&ctx, k, i as u32)?, &nk)?)?;
            same_ty(&expected, &m.ty, "recursor branch")?;
        }
        let ty = self.ty_subst(c, &self.section(p, &nk)?)?;
        FinTm::from_fn(&ty, |gamma| match at(p, gamma) {
            Val::Nat(i) => at(&branches[*i as usize], gamma).clone(),
            other => panic!("{other} is not a numeral"),
        })
    }

    /// `Σ(A, B)` for `B ∈ Ty(Γ.A)`.
    pub fn sigma(&self, a: &FinTy, b: &FinTy) -> Result<FinTy, FiberMismatch> {
        same_ctx(&self.ext(a), &b.ctx, "Σ family")?;
        Ok(FinTy::from_fn(&a.ctx, |gamma| {
            let mut elems = Vec::new();
            for x in a.fiber(gamma).expect("in the context").elems() {
                let over = Val::pair(gamma.clone(), x.clone());
                for y in b.fiber(&over).expect("in the comprehension").elems() {
                    elems.push(Val::pair(x.clone(), y.clone()));
                }
            }
            FinSet::new(elems)
        }))
    }

    /// `Pair_{A,B}(M, N)`.
    pub fn sigma_pair(&self, a: &FinTy, b: &FinTy, m: &FinTm, n: &FinTm) -> Result<FinTm, FiberMismatch> {
        same_ty(a, &m.ty, "first component")?;
        same_ty(&self.ty_subst(b, &self.section(m, a)?)?, &n.ty, "second component")?;
        FinTm::from_fn(&self.sigma(a, b)?, |gamma| Val::pair(at(m, gamma).clone(), at(n, gamma).clone()))
    }

    /// `pair_{A,B} : Γ.A.B → Γ.Σ(A, B)`.
    pub fn sigma_pair_mor(&self, a: &FinTy, b: &FinTy) -> Result<FinMor, FiberMismatch> {
        let s = self.sigma(a, b)?;
        FinMor::from_fn(&self.ext(b), &self.ext(&s), |e| {
            let (gx, y) = (pair_fst(e), pair_snd(e));
            Val::pair(pair_fst(gx).clone(), Val::pair(pair_snd(gx).clone(), y.clone()))
        })
    }

    /// `E_{A,B,C}(P, K) ∈ Tm(Γ, C{⟨1, P⟩})` for `K ∈ Tm(Γ.A.B, C{pair})`.
    pub fn sigma_elim(&self, a: &FinTy, b: &FinTy, c: &FinTy, p: &FinTm, k: &FinTm) -> Result<FinTm, FiberMismatch> {
        let s = self.sigma(a, b)?;
        same_ty(&s, &p.ty, "Σ scrutinee")?;
        same_ty(&self.ty_subst(c, &self.sigma_pair_mor(a, b)?)?, &k.ty, "Σ eliminator branch")?;
        let ty = self.ty_subst(c, &self.section(p, &s)?)?;
        FinTm::from_fn(&ty, |gamma| {
            let xy = at(p, gamma);
            let inner = Val::pair(Val::pair(gamma.clone(), pair_fst(xy).clone()), pair_snd(xy).clone());
            at(k, &inner).clone()
        })
    }

    /// `Π(A, B)`: all dependent functions, fiberwise.
    pub fn pi(&self, a: &FinTy, b: &FinTy) -> Result<FinTy, FiberMismatch> {
        same_ctx(&self.ext(a), &b.ctx, "Π family")?;
        Ok(FinTy::from_fn(&a.ctx, |gamma| {
            let dom = a.fiber(gamma).expect("in the context").elems().to_vec();
            let codomains: Vec<Vec<Val>> = dom
                .iter()
                .map(|x| b.fiber(&Val::pair(gamma.clone(), x.clone())).expect("in the comprehension").elems().to_vec())
                .collect();
            let graphs = codomains
                .into_iter()
                .multi_cartesian_product()
                .map(|ys| Val::Fun(Arc::new(dom.iter().cloned().zip(ys).collect())));
            if dom.is_empty() {
                FinSet::new(vec![Val::Fun(Arc::new(Vec::new()))])
            } else {
                FinSet::new(graphs.collect())
            }
        }))
    }

    /// `λ_{A,B}(P)` for `P ∈ Tm(Γ.A, B)`.
    pub fn lambda(&self, a: &FinTy, body: &FinTm) -> Result<FinTm, FiberMismatch> {
        let ty = self.pi(a, &body.ty)?;
        FinTm::from_fn(&ty, |gamma| {
            let graph = a
                .fiber(gamma)
                .expect("in the context")
                .elems()
                .iter()
                .map(|x| (x.clone(), at(body, &Val::pair(gamma.clone(), x.clone())).clone()))
                .collect();
            Val::Fun(Arc::new(graph))
        })
    }

    /// `App_{A,B}(M, N) ∈ Tm(Γ, B{⟨1, N⟩})`.
    pub fn app(&self, a: &FinTy, b: &FinTy, m: &FinTm, n: &FinTm) -> Result<FinTm, FiberMismatch> {
        same_ty(&self.pi(a, b)?, &m.ty, "applied function")?;
        same_ty(a, &n.ty, "argument")?;
        let ty = self.ty_subst(b, &self.section(n, a)?)?;
        FinTm::from_fn(&ty, |gamma| at(m, gamma).apply(at(n, gamma)).expect("total function").clone())
    }

    /// `A + B`.
    pub fn sum(&self, a: &FinTy, b: &FinTy) -> Result<FinTy, FiberMismatch> {
        same_ctx(&a.ctx, &b.ctx, "sum")?;
        Ok(FinTy::from_fn(&a.ctx, |gamma| {
            let left = a.fiber(gamma).expect("in the context").elems().iter().cloned().map(Val::inl);
            let right = b.fiber(gamma).expect("in the context").elems().iter().cloned().map(Val::inr);
            FinSet::new(left.chain(right).collect())
        }))
    }

    /// `inl_{A,B}(M)`.
    pub fn inl(&self, a: &FinTy, b: &FinTy, m: &FinTm) -> Result<FinTm, FiberMismatch> {
        same_ty(a, &m.ty, "left injection")?;
        FinTm::from_fn(&self.sum(a, b)?, |gamma| Val::inl(at(m, gamma).clone()))
    }

    /// `inr_{A,B}(N)`.
    pub fn inr(&self, a: &FinTy, b: &FinTy, n: &FinTm) -> Result<FinTm, FiberMismatch> {
        same_ty(b, &n.ty, "right injection")?;
        FinTm::from_fn(&self.sum(a, b)?, |gamma| Val::inr(at(n, gamma).clone()))
    }

    /// `⟨p(A), inl(v_A)⟩ : Γ.A → Γ.(A+B)`.
    fn inl_mor(&self, a: &FinTy, b: &FinTy) -> Result<FinMor, FiberMismatch> {
        let pa = self.p(a);
        let inj = self.inl(&self.ty_subst(a, &pa)?, &self.ty_subst(b, &pa)?, &self.v(a))?;
        self.pair(&pa, &inj, &self.sum(a, b)?)
    }

    /// `⟨p(B), inr(v_B)⟩ : Γ.B → Γ.(A+B)`.
    fn inr_mor(&self, a: &FinTy, b: &FinTy) -> Result<FinMor, FiberMismatch> {
        let pb = self.p(b);
        let inj = self.inr(&self.ty_subst(a, &pb)?, &self.ty_subst(b, &pb)?, &self.v(b))?;
        self.pair(&pb, &inj, &self.sum(a, b)?)
    }

    /// `D_{A,B,C}(P, K_1, K_2) ∈ Tm(Γ, C{⟨1, P⟩})`.
    pub fn sum_elim(
        &self,
        a: &FinTy,
        b: &FinTy,
        c: &FinTy,
        p: &FinTm,
        left: &FinTm,
        right: &FinTm,
    ) -> Result<FinTm, FiberMismatch> {
        let s = self.sum(a, b)?;
        same_ty(&s, &p.ty, "sum scrutinee")?;
        same_ty(&self.ty_subst(c, &self.inl_mor(a, b)?)?, &left.ty, "left branch")?;
        same_ty(&self.ty_subst(c, &self.inr_mor(a, b)?)?, &right.ty, "right branch")?;
        let ty = self.ty_subst(c, &self.section(p, &s)?)?;
        FinTm::from_fn(&ty, |gamma| match at(p, gamma) {
            Val::Inl(x) => at(left, &Val::pair(gamma.clone(), (**x).clone())).clone(),
            Val::Inr(y) => at(right, &Val::pair(gamma.clone(), (**y).clone())).clone(),
            other => panic!("{other} is not an injection"),
        })
    }
}

/// `{0, …, k-1}` for every `k ≤ n`.
pub fn objects_up_to(n: u32) -> Vec<FinSet> {
    (0..=n).map(FinSet::nat).collect()
}

/// Every function `dom → cod`.
pub fn all_functions(dom: &FinSet, cod: &FinSet) -> Vec<FinMor> {
    if dom.is_empty() {
        return vec![FinMor { dom: dom.clone(), cod: cod.clone(), table: Arc::new(Vec::new()) }];
    }
    std::iter::repeat_n(cod.elems().to_vec(), dom.len())
        .multi_cartesian_product()
        .map(|table| FinMor { dom: dom.clone(), cod: cod.clone(), table: Arc::new(table) })
        .collect()
}

/// Every family over `ctx` whose fibers are initial segments `{0, …, k-1}`
/// with `k ≤ max_fiber`. Up to isomorphism of fibers, these are all
/// families with fibers of at most that size.
pub fn all_families(ctx: &FinSet, max_fiber: u32) -> Vec<FinTy> {
    if ctx.is_empty() {
        return vec![FinTy { ctx: ctx.clone(), fibers: Arc::new(Vec::new()) }];
    }
    std::iter::repeat_n((0..=max_fiber).map(FinSet::nat).collect::<Vec<_>>(), ctx.len())
        .multi_cartesian_product()
        .map(|fibers| FinTy { ctx: ctx.clone(), fibers: Arc::new(fibers) })
        .collect()
}

/// Every section of a family.
pub fn all_sections(ty: &FinTy) -> Vec<FinTm> {
    if ty.ctx.is_empty() {
        return vec![FinTm { ty: ty.clone(), values: Arc::new(Vec::new()) }];
    }
    ty.fibers
        .iter()
        .map(|f| f.elems().to_vec())
        .multi_cartesian_product()
        .map(|values| FinTm { ty: ty.clone(), values: Arc::new(values) })
        .collect()
}
