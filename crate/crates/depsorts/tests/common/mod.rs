//! Helpers shared by the integration test targets: corpus access and
//! random generators for signatures, vocabularies and formulas.

#![allow(dead_code)]

use std::path::PathBuf;

use depsorts::checker::{enumerate, Enumeration, Mode};
use depsorts::dfol::Formula;
use depsorts::folds::RawVocabulary;
use depsorts::signature::{Decl, DeclKind, Signature};
use depsorts::syntax::{Context, Flavor, Term, Type, Var};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus")).join(name)
}

pub fn read_corpus(name: &str) -> String {
    std::fs::read_to_string(corpus_path(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

fn a() -> Type {
    Type::new("A", vec![])
}

/// Terms of type `A` available in `ctx`: its `A`-typed variables and the
/// constant `c`.
fn a_terms(ctx: &Context) -> Vec<Term> {
    let mut out: Vec<Term> = ctx.entries().iter().filter(|(_, t)| *t == a()).map(|(x, _)| Term::Var(x.clone())).collect();
    out.push(Term::constant("c"));
    out
}

/// A random type over `ctx` built from the symbols of `sig` whose
/// declarations only take `A`-typed arguments.
fn random_type(rng: &mut StdRng, sig: &Signature, ctx: &Context) -> Type {
    let heads: Vec<&Decl> =
        sig.decls().filter(|d| d.kind == DeclKind::Type && d.ctx.entries().iter().all(|(_, t)| *t == a())).collect();
    let head = heads.choose(rng).expect("A is always declared");
    let pool = a_terms(ctx);
    let args = (0..head.ctx.len()).map(|_| pool.choose(rng).expect("c is always available").clone()).collect();
    Type::new(&head.name, args)
}

/// A random context of length at most `max_len` with de Bruijn variables.
fn random_context(rng: &mut StdRng, sig: &Signature, max_len: usize) -> Context {
    let mut ctx = Context::empty();
    for i in 1..=rng.gen_range(0..=max_len) {
        let ty = random_type(rng, sig, &ctx);
        ctx = ctx.extend(Var::index(i), ty);
    }
    ctx
}

/// A small random signature with de Bruijn variables. It always declares a
/// type `A`, a constant `c : A` and a unary predicate `R` on `A`; the rest
/// (a family `F(x)`, a relation type `E(x,y)`, a binary predicate `S` and a
/// few function symbols over random contexts) is drawn at random. Function
/// symbols write either every argument or only the top-most ones.
pub fn random_signature(rng: &mut StdRng) -> Signature {
    let x1 = Context::empty().extend(Var::index(1), a());
    let x12 = x1.extend(Var::index(2), a());
    let mut sig = Signature::empty(Flavor::DeBruijn);
    let add = |sig: &mut Signature, d: Decl| {
        if let Ok(next) = sig.extend(d) {
            *sig = next;
        }
    };
    add(&mut sig, Decl::type_decl("A", Context::empty(), vec![]));
    add(&mut sig, Decl::fun_decl("c", Context::empty(), vec![], a()));
    add(&mut sig, Decl::pred_decl("R", x1.clone(), vec![1]));
    if rng.gen_bool(0.6) {
        add(&mut sig, Decl::type_decl("E", x12.clone(), vec![1, 2]));
    }
    if rng.gen_bool(0.5) {
        add(&mut sig, Decl::type_decl("F", x1.clone(), vec![1]));
    }
    if rng.gen_bool(0.5) {
        add(&mut sig, Decl::pred_decl("S", x12, vec![1, 2]));
    }
    for k in 0..rng.gen_range(1..=3) {
        let ctx = random_context(rng, &sig, 3);
        let ret = random_type(rng, &sig, &ctx);
        let det = if rng.gen_bool(0.5) { Decl::full_det(&ctx) } else { ctx.top_positions() };
        add(&mut sig, Decl::fun_decl(&format!("g{k}"), ctx, det, ret));
    }
    sig
}

/// Enumerates to the largest height at most `max_height` that fits in
/// `limit` judgements.
pub fn bounded_enumeration(sig: &Signature, mode: Mode, max_height: usize, limit: usize) -> Enumeration {
    (1..=max_height).rev().find_map(|h| enumerate(sig, mode, h, limit).ok()).expect("height 1 always fits")
}

/// A random formula over `ctx` whose atoms and binder types come from
/// `en`. Binders follow the variable system of `sig`.
pub fn random_formula(rng: &mut StdRng, sig: &Signature, en: &Enumeration, ctx: &Context, depth: usize) -> Formula {
    let atom = |rng: &mut StdRng| {
        let preds: Vec<&Decl> = sig.decls().filter(|d| d.kind == DeclKind::Pred).collect();
        let p = preds.choose(rng).expect("R is always declared");
        let maps = en.context_maps(ctx, &p.ctx);
        match maps.choose(rng) {
            Some(full) => Formula::atom(&p.name, p.det.iter().map(|&i| full[i - 1].clone()).collect()),
            None if rng.gen_bool(0.5) => Formula::Top,
            None => Formula::Bot,
        }
    };
    if depth == 0 {
        return atom(rng);
    }
    match rng.gen_range(0..6) {
        0 => atom(rng),
        1 => Formula::and(random_formula(rng, sig, en, ctx, depth - 1), random_formula(rng, sig, en, ctx, depth - 1)),
        2 => Formula::or(random_formula(rng, sig, en, ctx, depth - 1), random_formula(rng, sig, en, ctx, depth - 1)),
        3 => Formula::imp(random_formula(rng, sig, en, ctx, depth - 1), random_formula(rng, sig, en, ctx, depth - 1)),
        _ => {
            let x = ctx.fresh(&sig.var_system());
            let candidates: Vec<&Type> = en
                .types_in(ctx)
                .iter()
                .filter(|t| en.contains(&depsorts::checker::Judgement::Context(ctx.extend(x.clone(), (*t).clone()))))
                .collect();
            match candidates.choose(rng) {
                Some(&ty) => {
                    let inner = ctx.extend(x.clone(), ty.clone());
                    let body = random_formula(rng, sig, en, &inner, depth - 1);
                    if rng.gen_bool(0.5) {
                        Formula::forall(x, ty.clone(), body)
                    } else {
                        Formula::exists(x, ty.clone(), body)
                    }
                }
                None => atom(rng),
            }
        }
    }
}

/// A random finite category presented as a FOLDS vocabulary: objects are
/// levels `L0 < L1 < …`, every arrow goes to a strictly lower level, and
/// composites are closed off by adding the missing arrows.
pub fn random_vocabulary(rng: &mut StdRng, max_objects: usize, max_arrows: usize) -> RawVocabulary {
    let n = rng.gen_range(1..=max_objects);
    let objects: Vec<String> = (0..n).map(|i| format!("L{i}")).collect();
    // arrows[k] = (dom, cod); generators only, composites follow.
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_arrows / 2) {
        if n < 2 {
            break;
        }
        let dom = rng.gen_range(1..n);
        let cod = rng.gen_range(0..dom);
        gens.push((dom, cod));
    }
    // Paths of generators, identified by their (dom, cod, path) and closed
    // under composition; the category is free on the generators.
    let mut paths: Vec<(usize, usize, Vec<usize>)> = gens.iter().enumerate().map(|(i, &(d, c))| (d, c, vec![i])).collect();
    let mut grew = true;
    while grew && paths.len() <= max_arrows {
        grew = false;
        let snapshot = paths.clone();
        for (d1, c1, p1) in &snapshot {
            for (d2, c2, p2) in &snapshot {
                // p2 after p1 when cod(p1) = dom(p2).
                if c1 == d2 {
                    let mut p = p1.clone();
                    p.extend(p2);
                    if !paths.iter().any(|(_, _, q)| *q == p) {
                        paths.push((*d1, *c2, p));
                        grew = true;
                    }
                }
            }
        }
    }
    if paths.len() > max_arrows {
        return random_vocabulary(rng, max_objects, max_arrows);
    }
    let name = |p: &[usize]| p.iter().rev().map(|g| format!("g{g}")).collect::<Vec<_>>().join("_");
    let arrows = paths.iter().map(|(d, c, p)| (name(p), objects[*d].clone(), objects[*c].clone())).collect();
    let mut equations = Vec::new();
    for (_, c1, p1) in &paths {
        for (d2, _, p2) in &paths {
            if c1 == d2 {
                let mut p = p1.clone();
                p.extend(p2);
                equations.push((name(p2), name(p1), name(&p)));
            }
        }
    }
    RawVocabulary { objects, arrows, equations }
}
