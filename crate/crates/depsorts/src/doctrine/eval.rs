//! Evaluating formulas in a structure: a model of the signature's types and
//! function symbols together with a doctrine element for every predicate.
//!
//! Evaluation follows the formulas: an atom `R(ā)` over `Γ` is `R*{F(ā)}`
//! where `ā : Γ → Γ_R` carries the reconstructed hidden arguments, the
//! connectives are the doctrine's, and `(Qx:A)φ` uses the doctrine's
//! quantifier at `σ(Γ, A)`. Bound names play no role, so α-equivalent
//! formulas evaluate identically.

use std::collections::HashMap;

use thiserror::Error;

use super::{DoctrineError, Hyperdoctrine, Subset, SubsetDoctrine};
use crate::checker::{CheckError, Checker, ContextMap};
use crate::cwf::finset::{FinSet, FinSetCwf, FinTm, FinTy};
use crate::cwf::model::{Model, ModelError};
use crate::cwf::Cwf;
use crate::dfol::{check_proof, Formula, ProofMode, ProofTree, Sequent, Theory};
use crate::signature::{DeclKind, Signature};
use crate::syntax::{Context, Symbol};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Doctrine(#[from] DoctrineError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("predicate {0} has no interpretation")]
    MissingPredicate(Symbol),
    #[error("{0} is not a predicate symbol of the model's signature")]
    NotPredicate(Symbol),
    #[error("the interpretation of {0} lives over the wrong object")]
    WrongObject(Symbol),
}

/// A model together with an interpretation of every predicate symbol.
pub struct Structure<D: Hyperdoctrine> {
    model: Model<D::Base>,
    preds: HashMap<Symbol, D::Pred>,
}

impl<D: Hyperdoctrine> Clone for Structure<D> {
    fn clone(&self) -> Self {
        Structure { model: self.model.clone(), preds: self.preds.clone() }
    }
}

impl<D: Hyperdoctrine> Structure<D> {
    pub fn new(model: Model<D::Base>) -> Structure<D> {
        Structure { model, preds: HashMap::new() }
    }

    pub fn model(&self) -> &Model<D::Base> {
        &self.model
    }

    pub fn pred_value(&self, name: &str) -> Option<&D::Pred> {
        self.preds.get(name)
    }

    /// Interprets the predicate `name` of the model's signature by `value`,
    /// which must live over `F(Γ_R)`.
    pub fn interpret(&self, d: &D, name: &str, value: D::Pred) -> Result<Structure<D>, EvalError> {
        let decl = self
            .model
            .signature()
            .get(name)
            .filter(|decl| decl.kind == DeclKind::Pred)
            .ok_or_else(|| EvalError::NotPredicate(name.into()))?;
        if d.context_of(&value) != self.model.context(&decl.ctx)? {
            return Err(EvalError::WrongObject(decl.name.clone()));
        }
        let mut next = self.clone();
        next.preds.insert(decl.name.clone(), value);
        Ok(next)
    }
}

/// The value of `φ` over `Γ` in the structure.
pub fn eval_formula<D: Hyperdoctrine>(d: &D, s: &Structure<D>, ctx: &Context, phi: &Formula) -> Result<D::Pred, EvalError> {
    let sig = s.model.signature();
    let checker = Checker::new(sig);
    checker.context(ctx)?;
    let phi = phi.freshen(ctx, &sig.var_system());
    eval_in(d, s, &checker, ctx, &phi)
}

fn eval_in<D: Hyperdoctrine>(
    d: &D,
    s: &Structure<D>,
    checker: &Checker<'_>,
    ctx: &Context,
    phi: &Formula,
) -> Result<D::Pred, EvalError> {
    let go = |psi: &Formula| eval_in(d, s, checker, ctx, psi);
    Ok(match phi {
        Formula::Atom(r, args) => {
            let full = checker.predicate_args(ctx, r, args)?;
            let decl = s.model.signature().get(r).expect("checked predicate");
            let value = s.preds.get(r).ok_or_else(|| EvalError::MissingPredicate(r.clone()))?;
            let map = s.model.map(&ContextMap::new(ctx.clone(), decl.ctx.clone(), full))?;
            d.reindex(value, &map)?
        }
        Formula::Top => d.top(&s.model.context(ctx)?),
        Formula::Bot => d.bot(&s.model.context(ctx)?),
        Formula::And(a, b) => d.and(&go(a)?, &go(b)?)?,
        Formula::Or(a, b) => d.or(&go(a)?, &go(b)?)?,
        Formula::Imp(a, b) => d.imp(&go(a)?, &go(b)?)?,
        Formula::Forall(x, ty, body) | Formula::Exists(x, ty, body) => {
            let over = s.model.ty(ctx, ty)?;
            let inner = eval_in(d, s, checker, &ctx.extend(x.clone(), ty.clone()), body)?;
            if matches!(phi, Formula::Forall(..)) {
                d.forall(&over, &inner)?
            } else {
                d.exists(&over, &inner)?
            }
        }
    })
}

/// Whether `eval(lhs) ≤ eval(rhs)`.
pub fn check_sequent_semantic<D: Hyperdoctrine>(d: &D, s: &Structure<D>, seq: &Sequent) -> Result<bool, EvalError> {
    let lhs = eval_formula(d, s, &seq.ctx, &seq.lhs)?;
    let rhs = eval_formula(d, s, &seq.ctx, &seq.rhs)?;
    Ok(d.le(&lhs, &rhs)?)
}

/// The first axiom of the theory that fails in the structure.
pub fn failing_axiom<D: Hyperdoctrine>(d: &D, s: &Structure<D>, theory: &Theory) -> Result<Option<Symbol>, EvalError> {
    for (name, seq) in theory.axioms() {
        if !check_sequent_semantic(d, s, seq)? {
            return Ok(Some(name.clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SoundnessReport {
    /// Structures in which every axiom holds.
    pub models: usize,
    /// Structures set aside because some axiom fails in them.
    pub rejected_models: usize,
    /// Proofs the kernel accepted.
    pub accepted_proofs: usize,
    /// Sequents checked semantically, one per proof node and model.
    pub checks: usize,
    pub violations: Vec<String>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every node of every kernel-accepted proof is valid in every
/// structure whose axioms hold. Proofs the kernel rejects are ignored.
pub fn soundness_harness<D: Hyperdoctrine>(
    d: &D,
    theory: &Theory,
    proofs: &[ProofTree],
    mode: ProofMode,
    structures: &[Structure<D>],
) -> Result<SoundnessReport, EvalError> {
    let accepted: Vec<&ProofTree> = proofs.iter().filter(|p| check_proof(theory, p, mode).is_ok()).collect();
    let mut report = SoundnessReport { accepted_proofs: accepted.len(), ..SoundnessReport::default() };
    for (i, s) in structures.iter().enumerate() {
        if failing_axiom(d, s, theory)?.is_some() {
            report.rejected_models += 1;
            continue;
        }
        report.models += 1;
        for (j, proof) in accepted.iter().enumerate() {
            for (path, node) in proof.nodes() {
                report.checks += 1;
                if !check_sequent_semantic(d, s, &node.conclusion)? {
                    report.violations.push(format!("proof {j}, node {path:?}, model {i}: {}", node.conclusion));
                }
            }
        }
    }
    Ok(report)
}

/// Builds a finite-set structure for `sig`, asking `choose(k)` for an index
/// below `k` at every decision: fiber sizes of types (at most
/// `max_fiber`), values of function symbols, and membership in predicates.
/// Returns `None` when some function symbol has nowhere to go.
pub fn finset_structure(
    sig: &Signature,
    max_fiber: u32,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<Option<Structure<SubsetDoctrine>>, EvalError> {
    let mut model = Model::empty(FinSetCwf, sig.flavor());
    let mut flags: Vec<(Symbol, Vec<bool>)> = Vec::new();
    for decl in sig.decls() {
        match &decl.kind {
            DeclKind::Type => {
                let over = model.context(&decl.ctx)?;
                let fibers = (0..over.len()).map(|_| FinSet::nat(choose(max_fiber as usize + 1) as u32)).collect();
                let value = FinTy::new(over, fibers).map_err(ModelError::from)?;
                model = model.extend_by_type(decl.clone(), value)?;
            }
            DeclKind::Fun { .. } => {
                let ty = model.declared_result(decl)?;
                if ty.fibers().iter().any(FinSet::is_empty) {
                    return Ok(None);
                }
                let values = ty.fibers().iter().map(|f| f.elems()[choose(f.len())].clone()).collect();
                let value = FinTm::new(ty, values).map_err(ModelError::from)?;
                model = model.extend_by_fun(decl.clone(), value)?;
            }
            DeclKind::Pred => {
                let over = model.context(&decl.ctx)?;
                flags.push((decl.name.clone(), (0..over.len()).map(|_| choose(2) == 1).collect()));
                model = model.extend_by_pred(decl.clone())?;
            }
        }
    }
    let mut s = Structure::new(model);
    for (name, members) in flags {
        let decl = s.model.signature().get(&name).expect("declared above");
        let over = s.model.context(&decl.ctx)?;
        let value = Subset::new(over, members)?;
        s = s.interpret(&SubsetDoctrine, &name, value)?;
    }
    Ok(Some(s))
}

/// Runs `run` once for every sequence of decisions it can make, up to
/// `limit` runs, and returns the number of runs. Each call `choose(k)`
/// inside `run` returns an index below `k`; successive runs walk through
/// all combinations in lexicographic order.
pub fn enumerate_choices(limit: usize, mut run: impl FnMut(&mut dyn FnMut(usize) -> usize)) -> usize {
    let mut prefix: Vec<usize> = Vec::new();
    let mut runs = 0;
    while runs < limit {
        let mut trace: Vec<(usize, usize)> = Vec::new();
        {
            let mut choose = |arity: usize| {
                let pick = prefix.get(trace.len()).copied().unwrap_or(0).min(arity.saturating_sub(1));
                trace.push((pick, arity));
                pick
            };
            run(&mut choose);
        }
        runs += 1;
        while let Some((pick, arity)) = trace.pop() {
            if pick + 1 < arity {
                trace.push((pick + 1, arity));
                break;
            }
        }
        if trace.is_empty() {
            break;
        }
        prefix = trace.into_iter().map(|(pick, _)| pick).collect();
    }
    runs
}

/// The interpretation of a context map, reindexing a predicate value.
pub fn reindex_along<D: Hyperdoctrine>(d: &D, s: &Structure<D>, map: &ContextMap, value: &D::Pred) -> Result<D::Pred, EvalError> {
    let f = s.model.map(map)?;
    debug_assert!(d.base().cod(&f) == d.context_of(value));
    Ok(d.reindex(value, &f)?)
}
