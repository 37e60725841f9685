use std::collections::HashSet;

use thiserror::Error;

use super::{Derivation, Judgement, Mode, Rule};
use crate::signature::{DeclKind, Signature};
use crate::syntax::{Context, Subst, Term, Type};

#[derive(Clone, Debug, PartialEq, Error)]
#[error("{rule} node concluding `{conclusion}`: {reason}")]
pub struct VerifyError {
    pub rule: Rule,
    pub conclusion: String,
    pub reason: String,
}

/// Checks every node of a derivation for local validity against its rule,
/// including the recorded heights.
pub fn verify_derivation(sig: &Signature, d: &Derivation, mode: Mode) -> Result<(), VerifyError> {
    let mut seen = HashSet::new();
    walk(sig, d, mode, &mut seen)
}

fn walk(sig: &Signature, d: &Derivation, mode: Mode, seen: &mut HashSet<*const Derivation>) -> Result<(), VerifyError> {
    if !seen.insert(d as *const _) {
        return Ok(());
    }
    node(sig, d, mode).map_err(|reason| VerifyError { rule: d.rule, conclusion: d.conclusion.to_string(), reason })?;
    for p in &d.premises {
        walk(sig, p, mode, seen)?;
    }
    Ok(())
}

fn premise_ctx(d: &Derivation, i: usize) -> Result<&Context, String> {
    match d.premises.get(i).map(|p| &p.conclusion) {
        Some(Judgement::Context(c)) => Ok(c),
        _ => Err(format!("premise {} is not a context judgement", i + 1)),
    }
}

fn node(sig: &Signature, d: &Derivation, mode: Mode) -> Result<(), String> {
    let expected_height = match d.rule {
        Rule::R1 => 0,
        _ => 1 + d.premises.iter().map(|p| p.height).max().unwrap_or(0),
    };
    if d.height != expected_height {
        return Err(format!("recorded height {} but premises give {expected_height}", d.height));
    }
    let vs = sig.var_system();
    match d.rule {
        Rule::R1 => match &d.conclusion {
            Judgement::Context(c) if c.is_empty() && d.premises.is_empty() => Ok(()),
            _ => Err("R1 concludes only the empty context, without premises".into()),
        },
        Rule::R2 => {
            let Judgement::Context(c) = &d.conclusion else { return Err("R2 must conclude a context".into()) };
            let (base, x, ty) = c.split_last().ok_or("R2 cannot conclude the empty context")?;
            if d.premises.len() != 2 || premise_ctx(d, 0)? != &base {
                return Err("first premise must derive the shorter context".into());
            }
            if d.premises[1].conclusion != Judgement::Type(base.clone(), ty.clone()) {
                return Err("second premise must derive the new declaration's type".into());
            }
            if !base.is_fresh(&vs, x) {
                return Err(format!("{x} is not fresh"));
            }
            Ok(())
        }
        Rule::R3 => {
            let Judgement::Elem(c, Term::Var(x), ty) = &d.conclusion else {
                return Err("R3 must type a variable".into());
            };
            if d.premises.len() != 1 || premise_ctx(d, 0)? != c {
                return Err("the single premise must derive the context".into());
            }
            match c.lookup(x) {
                Some((_, declared)) if declared == ty => Ok(()),
                _ => Err(format!("{x} is not declared with type {ty}")),
            }
        }
        Rule::R4 | Rule::R5 | Rule::R5Star => symbol_node(sig, d, mode),
    }
}

fn symbol_node(sig: &Signature, d: &Derivation, mode: Mode) -> Result<(), String> {
    let (ctx, head, explicit) = match (&d.rule, &d.conclusion) {
        (Rule::R4, Judgement::Type(c, a)) => (c, &a.head, &a.args),
        (Rule::R5 | Rule::R5Star, Judgement::Elem(c, Term::App(f, args), _)) => (c, f, args),
        _ => return Err("conclusion does not fit the rule".into()),
    };
    match (d.rule, mode) {
        (Rule::R5, Mode::Star) => return Err("R5 is not a rule of the starred system".into()),
        (Rule::R5Star, Mode::Standard) => return Err("R5* is not a rule of the standard system".into()),
        _ => {}
    }
    let decl = sig.get(head).ok_or_else(|| format!("{head} is undeclared"))?;
    let ret = match (&decl.kind, d.rule) {
        (DeclKind::Type, Rule::R4) => None,
        (DeclKind::Fun { ret }, Rule::R5 | Rule::R5Star) => Some(ret),
        _ => return Err(format!("{head} has the wrong kind for this rule")),
    };
    let n = decl.ctx.len();
    let extra = usize::from(d.rule == Rule::R5);
    if d.premises.len() != n + 2 + extra {
        return Err(format!("expected {} premises, found {}", n + 2 + extra, d.premises.len()));
    }
    if premise_ctx(d, 0)? != ctx {
        return Err("first premise must derive the conclusion's context".into());
    }
    if premise_ctx(d, 1)? != &decl.ctx {
        return Err("second premise must derive the declaration context".into());
    }
    let mut args: Vec<Term> = Vec::with_capacity(n);
    for k in 0..n {
        let Judgement::Elem(c, a_k, b) = &d.premises[2 + k].conclusion else {
            return Err(format!("premise {} is not a typing", k + 3));
        };
        let s = Subst::for_context(&decl.ctx.prefix(k), &args).expect("prefix");
        if c != ctx || b != &decl.ctx.entries()[k].1.subst(&s) {
            return Err(format!("argument premise {} has the wrong context or type", k + 1));
        }
        args.push(a_k.clone());
    }
    let picked: Vec<Term> = decl.det.iter().map(|&i| args[i - 1].clone()).collect();
    if &picked != explicit {
        return Err("explicit arguments disagree with the context map".into());
    }
    if let Some(ret) = ret {
        let expected: Type = ret.subst(&Subst::for_context(&decl.ctx, &args).expect("full"));
        let Judgement::Elem(_, _, found) = &d.conclusion else { unreachable!() };
        if found != &expected {
            return Err(format!("result type should be {expected}"));
        }
        if extra == 1 && d.premises[n + 2].conclusion != Judgement::Type(ctx.clone(), expected) {
            return Err("last premise must derive the result type".into());
        }
    }
    Ok(())
}
