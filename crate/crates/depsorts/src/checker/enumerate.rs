use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::{Judgement, Mode};
use crate::signature::{Decl, DeclKind, Signature};
use crate::syntax::{Context, Flavor, Subst, Term, Type};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("enumeration is only defined for de Bruijn signatures")]
    RequiresDeBruijn,
    #[error("more than {limit} judgements; raise the budget or lower the height")]
    Budget { limit: usize },
}

/// All judgements derivable with derivations of height at most
/// `max_height`, each recorded with its least height.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub mode: Mode,
    pub max_height: usize,
    heights: HashMap<Judgement, usize>,
    order: Vec<Judgement>,
    contexts: Vec<Context>,
    types: HashMap<Context, Vec<Type>>,
    elems: HashMap<(Context, Type), Vec<Term>>,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn contains(&self, j: &Judgement) -> bool {
        self.heights.contains_key(j)
    }

    pub fn height(&self, j: &Judgement) -> Option<usize> {
        self.heights.get(j).copied()
    }

    /// Judgements in discovery order.
    pub fn judgements(&self) -> impl Iterator<Item = (&Judgement, usize)> {
        self.order.iter().map(|j| (j, self.heights[j]))
    }

    pub fn to_set(&self) -> HashSet<Judgement> {
        self.order.iter().cloned().collect()
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn types_in(&self, ctx: &Context) -> &[Type] {
        self.types.get(ctx).map_or(&[], Vec::as_slice)
    }

    pub fn terms_of(&self, ctx: &Context, ty: &Type) -> &[Term] {
        self.elems.get(&(ctx.clone(), ty.clone())).map_or(&[], Vec::as_slice)
    }

    /// Every context map `ā: Δ → Γ` whose component typings were enumerated.
    pub fn context_maps(&self, source: &Context, target: &Context) -> Vec<Vec<Term>> {
        let mut out = Vec::new();
        let mut partial = Vec::with_capacity(target.len());
        self.maps_into(source, target, &mut partial, &mut |m| out.push(m.to_vec()));
        out
    }

    fn maps_into(&self, source: &Context, target: &Context, partial: &mut Vec<Term>, emit: &mut dyn FnMut(&[Term])) {
        let k = partial.len();
        if k == target.len() {
            emit(partial);
            return;
        }
        let s = Subst::for_context(&target.prefix(k), partial).expect("prefix");
        let expected = target.entries()[k].1.subst(&s);
        for t in self.terms_of(source, &expected).to_vec() {
            partial.push(t);
            self.maps_into(source, target, partial, emit);
            partial.pop();
        }
    }

    fn insert(&mut self, j: Judgement, height: usize) {
        if self.heights.contains_key(&j) {
            return;
        }
        match &j {
            Judgement::Context(c) => self.contexts.push(c.clone()),
            Judgement::Type(c, a) => self.types.entry(c.clone()).or_default().push(a.clone()),
            Judgement::Elem(c, t, a) => self.elems.entry((c.clone(), a.clone())).or_default().push(t.clone()),
        }
        self.heights.insert(j.clone(), height);
        self.order.push(j);
    }
}

/// Forward chaining by height layers. Layer `h` applies every rule to the
/// judgements of height below `h`.
pub fn enumerate(sig: &Signature, mode: Mode, max_height: usize, limit: usize) -> Result<Enumeration, EnumError> {
    if sig.flavor() != Flavor::DeBruijn {
        return Err(EnumError::RequiresDeBruijn);
    }
    let vs = sig.var_system();
    let mut acc = Enumeration {
        mode,
        max_height,
        heights: HashMap::new(),
        order: Vec::new(),
        contexts: Vec::new(),
        types: HashMap::new(),
        elems: HashMap::new(),
    };
    acc.insert(Judgement::Context(Context::empty()), 0);
    for level in 1..=max_height {
        let mut fresh: Vec<Judgement> = Vec::new();
        for ctx in &acc.contexts {
            for ty in acc.types_in(ctx) {
                fresh.push(Judgement::Context(ctx.extend(ctx.fresh(&vs), ty.clone())));
            }
            for (x, ty) in ctx.entries() {
                fresh.push(Judgement::Elem(ctx.clone(), Term::Var(x.clone()), ty.clone()));
            }
            for decl in sig.decls() {
                if decl.kind == DeclKind::Pred || !acc.contains(&Judgement::Context(decl.ctx.clone())) {
                    continue;
                }
                let mut partial = Vec::new();
                acc.maps_into(ctx, &decl.ctx, &mut partial, &mut |args| {
                    if let Some(j) = instance(&acc, decl, ctx, args, mode) {
                        fresh.push(j);
                    }
                });
            }
            if acc.len() + fresh.len() > limit {
                return Err(EnumError::Budget { limit });
            }
        }
        for j in fresh {
            acc.insert(j, level);
        }
    }
    Ok(acc)
}

fn instance(acc: &Enumeration, decl: &Decl, ctx: &Context, args: &[Term], mode: Mode) -> Option<Judgement> {
    let explicit: Vec<Term> = decl.det.iter().map(|&i| args[i - 1].clone()).collect();
    match &decl.kind {
        DeclKind::Type => Some(Judgement::Type(ctx.clone(), Type { head: decl.name.clone(), args: explicit })),
        DeclKind::Fun { ret } => {
            let result = ret.subst(&Subst::for_context(&decl.ctx, args).expect("full map"));
            if mode == Mode::Standard && !acc.contains(&Judgement::Type(ctx.clone(), result.clone())) {
                return None;
            }
            Some(Judgement::Elem(ctx.clone(), Term::App(decl.name.clone(), explicit), result))
        }
        DeclKind::Pred => None,
    }
}
