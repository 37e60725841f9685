//! Sequents, proof trees and the proof checker.
//!
//! A [`ProofTree`] records the rule applied at each node together with the
//! sequent it concludes. [`check_proof`] validates every node bottom-up and
//! reports the first failure with the path of premise indices leading to it.
//! The same trees are checked in two modes: strict mode compares formulas
//! literally and uses the capture-avoiding substitution instance, while the
//! starred mode works up to α-equivalence with syntactic substitution and
//! unlifted side formulas in the quantifier rules.

use std::fmt;

use thiserror::Error;

use super::{check_in, Formula, FormulaError, Quantifier};
use crate::checker::{CheckError, Checker, ContextMap};
use crate::signature::Signature;
use crate::syntax::{Context, Subst, Symbol, Term, VariableSystem};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sequent {
    pub ctx: Context,
    pub lhs: Formula,
    pub rhs: Formula,
}

impl Sequent {
    pub fn new(ctx: Context, lhs: Formula, rhs: Formula) -> Sequent {
        Sequent { ctx, lhs, rhs }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⟹ {} in {}", self.lhs, self.rhs, self.ctx)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ProofMode {
    #[default]
    Dfol,
    DfolStar,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RuleTag {
    Axiom(Symbol),
    Ref,
    Cut,
    ConjL1,
    ConjL2,
    ConjI,
    TopI,
    DisjR1,
    DisjR2,
    DisjE,
    BotE,
    ImpI,
    ImpE,
    UnivI,
    UnivE,
    ExisE,
    ExisI,
    /// Substitution along the map whose source is the conclusion context,
    /// whose target is the premise context, and whose components are these.
    Subs(Vec<Term>),
}

impl RuleTag {
    pub fn name(&self) -> &'static str {
        match self {
            RuleTag::Axiom(_) => "axiom",
            RuleTag::Ref => "ref",
            RuleTag::Cut => "cut",
            RuleTag::ConjL1 => "conj-l1",
            RuleTag::ConjL2 => "conj-l2",
            RuleTag::ConjI => "conj-i",
            RuleTag::TopI => "top-i",
            RuleTag::DisjR1 => "disj-r1",
            RuleTag::DisjR2 => "disj-r2",
            RuleTag::DisjE => "disj-e",
            RuleTag::BotE => "bot-e",
            RuleTag::ImpI => "imp-i",
            RuleTag::ImpE => "imp-e",
            RuleTag::UnivI => "univ-i",
            RuleTag::UnivE => "univ-e",
            RuleTag::ExisE => "exis-e",
            RuleTag::ExisI => "exis-i",
            RuleTag::Subs(_) => "subs",
        }
    }

    /// The inverse of [`RuleTag::name`] for rules without parameters.
    pub fn from_name(name: &str) -> Option<RuleTag> {
        Some(match name {
            "ref" => RuleTag::Ref,
            "cut" => RuleTag::Cut,
            "conj-l1" => RuleTag::ConjL1,
            "conj-l2" => RuleTag::ConjL2,
            "conj-i" => RuleTag::ConjI,
            "top-i" => RuleTag::TopI,
            "disj-r1" => RuleTag::DisjR1,
            "disj-r2" => RuleTag::DisjR2,
            "disj-e" => RuleTag::DisjE,
            "bot-e" => RuleTag::BotE,
            "imp-i" => RuleTag::ImpI,
            "imp-e" => RuleTag::ImpE,
            "univ-i" => RuleTag::UnivI,
            "univ-e" => RuleTag::UnivE,
            "exis-e" => RuleTag::ExisE,
            "exis-i" => RuleTag::ExisI,
            _ => return None,
        })
    }

    fn premise_count(&self) -> usize {
        match self {
            RuleTag::Axiom(_) | RuleTag::Ref | RuleTag::ConjL1 | RuleTag::ConjL2 | RuleTag::TopI => 0,
            RuleTag::DisjR1 | RuleTag::DisjR2 | RuleTag::BotE => 0,
            RuleTag::Cut | RuleTag::ConjI | RuleTag::DisjE => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleTag::Axiom(name) => write!(f, "axiom {name}"),
            RuleTag::Subs(terms) => {
                let shown: Vec<String> = terms.iter().map(Term::to_string).collect();
                write!(f, "subs ({})", shown.join(", "))
            }
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofTree {
    pub rule: RuleTag,
    pub conclusion: Sequent,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn new(rule: RuleTag, conclusion: Sequent, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree { rule, conclusion, premises }
    }

    pub fn leaf(rule: RuleTag, conclusion: Sequent) -> ProofTree {
        ProofTree::new(rule, conclusion, Vec::new())
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::node_count).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    /// The node reached by following premise indices from the root.
    pub fn at(&self, path: &[usize]) -> Option<&ProofTree> {
        path.iter().try_fold(self, |node, &i| node.premises.get(i))
    }

    /// Every node with its path, root first.
    pub fn nodes(&self) -> Vec<(Vec<usize>, &ProofTree)> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), self)];
        while let Some((path, node)) = stack.pop() {
            for (i, p) in node.premises.iter().enumerate().rev() {
                let mut child = path.clone();
                child.push(i);
                stack.push((child, p));
            }
            out.push((path, node));
        }
        out
    }
}

#[derive(Clone, PartialEq, Debug, Error)]
pub enum TheoryError {
    #[error("axiom {0} is declared twice")]
    Duplicate(Symbol),
    #[error("axiom {name}: {source}")]
    Ill { name: Symbol, source: FormulaError },
}

/// A signature with named axioms, each a sequent in context.
#[derive(Clone, Debug)]
pub struct Theory {
    sig: Signature,
    axioms: Vec<(Symbol, Sequent)>,
}

impl Theory {
    pub fn new(sig: Signature, axioms: Vec<(Symbol, Sequent)>) -> Result<Theory, TheoryError> {
        let checker = Checker::new(&sig);
        for (i, (name, seq)) in axioms.iter().enumerate() {
            if axioms[..i].iter().any(|(other, _)| other == name) {
                return Err(TheoryError::Duplicate(name.clone()));
            }
            sequent_formed(&checker, seq, ProofMode::Dfol).map_err(|source| TheoryError::Ill { name: name.clone(), source })?;
        }
        Ok(Theory { sig, axioms })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn axioms(&self) -> &[(Symbol, Sequent)] {
        &self.axioms
    }

    pub fn axiom(&self, name: &str) -> Option<&Sequent> {
        self.axioms.iter().find(|(n, _)| &**n == name).map(|(_, s)| s)
    }
}

#[derive(Clone, PartialEq, Debug, Error)]
pub enum ProofErrorKind {
    #[error("unknown axiom {0}")]
    UnknownAxiom(Symbol),
    #[error("ill-formed sequent: {0}")]
    Formula(FormulaError),
    #[error("expected {expected} premises, found {found}")]
    PremiseCount { expected: usize, found: usize },
    #[error("premise {premise} is in context {found}, expected {expected}")]
    ContextMismatch { premise: usize, expected: Context, found: Context },
    #[error("{0}")]
    Shape(String),
    #[error("substitution instance is {computed}, but the proof states {supplied}")]
    SubstMismatch { computed: Formula, supplied: Formula },
    #[error("substitution map: {0}")]
    Map(CheckError),
}

/// A rejected proof: the failing node's path, its rule, and the reason.
#[derive(Clone, PartialEq, Debug)]
pub struct ProofError {
    pub path: Vec<usize>,
    pub rule: String,
    pub kind: ProofErrorKind,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.path.iter().map(usize::to_string).collect();
        write!(f, "{} at node [{}]: {}", self.rule, at.join("."), self.kind)
    }
}

impl std::error::Error for ProofError {}

fn formed(checker: &Checker<'_>, ctx: &Context, phi: &Formula, mode: ProofMode) -> Result<(), FormulaError> {
    match mode {
        ProofMode::Dfol => check_in(checker, ctx, phi),
        ProofMode::DfolStar => check_in(checker, ctx, &phi.freshen(ctx, &checker.signature().var_system())),
    }
}

fn sequent_formed(checker: &Checker<'_>, seq: &Sequent, mode: ProofMode) -> Result<(), FormulaError> {
    checker.context(&seq.ctx).map_err(|source| FormulaError::Check { location: "context".into(), source })?;
    formed(checker, &seq.ctx, &seq.lhs, mode)?;
    formed(checker, &seq.ctx, &seq.rhs, mode)
}

/// Checks a proof tree against a theory. Every node's conclusion must be a
/// well-formed sequent and must follow from its premises by its rule.
pub fn check_proof(theory: &Theory, tree: &ProofTree, mode: ProofMode) -> Result<(), ProofError> {
    let node = NodeChecker { theory, checker: Checker::new(&theory.sig), vs: theory.sig.var_system(), mode };
    let mut path = Vec::new();
    node.walk(tree, &mut path)
}

struct NodeChecker<'t> {
    theory: &'t Theory,
    checker: Checker<'t>,
    vs: VariableSystem,
    mode: ProofMode,
}

type Step = Result<(), ProofErrorKind>;

fn shape(msg: impl Into<String>) -> ProofErrorKind {
    ProofErrorKind::Shape(msg.into())
}

impl NodeChecker<'_> {
    fn walk(&self, tree: &ProofTree, path: &mut Vec<usize>) -> Result<(), ProofError> {
        for (i, premise) in tree.premises.iter().enumerate() {
            path.push(i);
            self.walk(premise, path)?;
            path.pop();
        }
        self.node(tree).map_err(|kind| ProofError { path: path.clone(), rule: tree.rule.to_string(), kind })
    }

    fn same(&self, a: &Formula, b: &Formula) -> bool {
        match self.mode {
            ProofMode::Dfol => a == b,
            ProofMode::DfolStar => a.alpha_eq(b),
        }
    }

    fn expect(&self, what: &str, found: &Formula, expected: &Formula) -> Step {
        if self.same(found, expected) {
            Ok(())
        } else {
            Err(shape(format!("{what} is {found}, expected {expected}")))
        }
    }

    fn same_context(&self, tree: &ProofTree) -> Step {
        for (i, p) in tree.premises.iter().enumerate() {
            if p.conclusion.ctx != tree.conclusion.ctx {
                return Err(ProofErrorKind::ContextMismatch {
                    premise: i,
                    expected: tree.conclusion.ctx.clone(),
                    found: p.conclusion.ctx.clone(),
                });
            }
        }
        Ok(())
    }

    /// `φ{p_Γ(x:A)}` in strict mode and `φ` itself in starred mode.
    fn lift(&self, phi: &Formula, extended: &Context) -> Formula {
        match self.mode {
            ProofMode::Dfol => phi.subst_map(&ContextMap::projection(extended), &self.vs),
            ProofMode::DfolStar => phi.clone(),
        }
    }

    /// Splits the premise context `⟨Γ, y:A⟩` against the quantified formula
    /// `(Qx:A)ψ` over `Γ`, returning `ψ` with `x` renamed to `y`. Strict mode
    /// requires `y = x`.
    fn open_binder(
        &self,
        quantified: &Formula,
        q: Quantifier,
        base: &Context,
        premise_ctx: &Context,
    ) -> Result<Formula, ProofErrorKind> {
        let Some((found_q, x, ty, body)) = quantified.as_quantified().filter(|(fq, ..)| *fq == q) else {
            let sym = if q == Quantifier::Forall { "∀" } else { "∃" };
            return Err(shape(format!("{quantified} is not a {sym}-formula")));
        };
        debug_assert_eq!(found_q, q);
        let mismatch = |expected: Context| ProofErrorKind::ContextMismatch { premise: 0, expected, found: premise_ctx.clone() };
        let Some((prefix, y, y_ty)) = premise_ctx.split_last() else {
            return Err(mismatch(base.extend(x.clone(), ty.clone())));
        };
        let binder_ok = match self.mode {
            ProofMode::Dfol => y == x,
            ProofMode::DfolStar => base.is_fresh(&self.vs, y),
        };
        if prefix != *base || y_ty != ty || !binder_ok {
            return Err(mismatch(base.extend(x.clone(), ty.clone())));
        }
        if y == x {
            return Ok(body.clone());
        }
        let mut s = Subst::default();
        s.insert(x.clone(), Term::Var(y.clone()));
        Ok(body.subst(&s, &self.vs))
    }

    fn node(&self, tree: &ProofTree) -> Step {
        let expected = tree.rule.premise_count();
        if tree.premises.len() != expected {
            return Err(ProofErrorKind::PremiseCount { expected, found: tree.premises.len() });
        }
        sequent_formed(&self.checker, &tree.conclusion, self.mode).map_err(ProofErrorKind::Formula)?;
        let Sequent { ctx, lhs, rhs } = &tree.conclusion;
        let prem = |i: usize| &tree.premises[i].conclusion;
        match &tree.rule {
            RuleTag::Axiom(name) => {
                let axiom = self.theory.axiom(name).ok_or_else(|| ProofErrorKind::UnknownAxiom(name.clone()))?;
                if axiom.ctx != *ctx {
                    return Err(ProofErrorKind::ContextMismatch { premise: 0, expected: axiom.ctx.clone(), found: ctx.clone() });
                }
                self.expect("antecedent", lhs, &axiom.lhs)?;
                self.expect("succedent", rhs, &axiom.rhs)
            }
            RuleTag::Ref => self.expect("succedent", rhs, lhs),
            RuleTag::Cut => {
                self.same_context(tree)?;
                self.expect("first antecedent", &prem(0).lhs, lhs)?;
                self.expect("cut formula", &prem(1).lhs, &prem(0).rhs)?;
                self.expect("second succedent", &prem(1).rhs, rhs)
            }
            RuleTag::ConjL1 | RuleTag::ConjL2 => {
                let Formula::And(a, b) = lhs else {
                    return Err(shape(format!("{lhs} is not a conjunction")));
                };
                let picked = if tree.rule == RuleTag::ConjL1 { a } else { b };
                self.expect("succedent", rhs, picked)
            }
            RuleTag::ConjI => {
                self.same_context(tree)?;
                let Formula::And(a, b) = rhs else {
                    return Err(shape(format!("{rhs} is not a conjunction")));
                };
                for (i, part) in [a, b].into_iter().enumerate() {
                    self.expect("premise antecedent", &prem(i).lhs, lhs)?;
                    self.expect("premise succedent", &prem(i).rhs, part)?;
                }
                Ok(())
            }
            RuleTag::TopI => self.expect("succedent", rhs, &Formula::Top),
            RuleTag::DisjR1 | RuleTag::DisjR2 => {
                let Formula::Or(a, b) = rhs else {
                    return Err(shape(format!("{rhs} is not a disjunction")));
                };
                let picked = if tree.rule == RuleTag::DisjR1 { a } else { b };
                self.expect("antecedent", lhs, picked)
            }
            RuleTag::DisjE => {
                self.same_context(tree)?;
                let Formula::Or(a, b) = lhs else {
                    return Err(shape(format!("{lhs} is not a disjunction")));
                };
                for (i, part) in [a, b].into_iter().enumerate() {
                    self.expect("premise antecedent", &prem(i).lhs, part)?;
                    self.expect("premise succedent", &prem(i).rhs, rhs)?;
                }
                Ok(())
            }
            RuleTag::BotE => self.expect("antecedent", lhs, &Formula::Bot),
            RuleTag::ImpI => {
                self.same_context(tree)?;
                let Formula::Imp(a, b) = rhs else {
                    return Err(shape(format!("{rhs} is not an implication")));
                };
                self.expect("premise antecedent", &prem(0).lhs, &Formula::and(lhs.clone(), (**a).clone()))?;
                self.expect("premise succedent", &prem(0).rhs, b)
            }
            RuleTag::ImpE => {
                self.same_context(tree)?;
                let Formula::And(a, b) = lhs else {
                    return Err(shape(format!("{lhs} is not a conjunction")));
                };
                self.expect("premise antecedent", &prem(0).lhs, a)?;
                self.expect("premise succedent", &prem(0).rhs, &Formula::imp((**b).clone(), rhs.clone()))
            }
            RuleTag::UnivI => {
                let p = prem(0);
                let body = self.open_binder(rhs, Quantifier::Forall, ctx, &p.ctx)?;
                self.expect("premise antecedent", &p.lhs, &self.lift(lhs, &p.ctx))?;
                self.expect("premise succedent", &p.rhs, &body)
            }
            RuleTag::UnivE => {
                let p = prem(0);
                let body = self.open_binder(&p.rhs, Quantifier::Forall, &p.ctx, ctx)?;
                self.expect("antecedent", lhs, &self.lift(&p.lhs, ctx))?;
                self.expect("succedent", rhs, &body)
            }
            RuleTag::ExisE => {
                let p = prem(0);
                let body = self.open_binder(lhs, Quantifier::Exists, ctx, &p.ctx)?;
                self.expect("premise antecedent", &p.lhs, &body)?;
                self.expect("premise succedent", &p.rhs, &self.lift(rhs, &p.ctx))
            }
            RuleTag::ExisI => {
                let p = prem(0);
                let body = self.open_binder(&p.lhs, Quantifier::Exists, &p.ctx, ctx)?;
                self.expect("antecedent", lhs, &body)?;
                self.expect("succedent", rhs, &self.lift(&p.rhs, ctx))
            }
            RuleTag::Subs(terms) => {
                let p = prem(0);
                let map = ContextMap::new(ctx.clone(), p.ctx.clone(), terms.clone());
                self.checker.context_map(&map).map_err(ProofErrorKind::Map)?;
                for (found, original) in [(lhs, &p.lhs), (rhs, &p.rhs)] {
                    let computed = self.instance(original, &map);
                    if !self.same(found, &computed) {
                        return Err(ProofErrorKind::SubstMismatch { computed, supplied: found.clone() });
                    }
                }
                Ok(())
            }
        }
    }

    fn instance(&self, phi: &Formula, map: &ContextMap) -> Formula {
        match self.mode {
            ProofMode::Dfol => phi.subst_map(map, &self.vs),
            ProofMode::DfolStar => phi.subst(&map.subst(), &self.vs),
        }
    }
}

/// Rewrites a strict proof into the starred calculus: quantifier rules drop
/// the lifting of their side formula, and substitution nodes state the
/// syntactic instance. The result checks in [`ProofMode::DfolStar`].
pub fn to_star(tree: &ProofTree, vs: &VariableSystem) -> ProofTree {
    let premises: Vec<ProofTree> = tree.premises.iter().map(|p| to_star(p, vs)).collect();
    let mut conclusion = tree.conclusion.clone();
    match &tree.rule {
        RuleTag::Subs(terms) => {
            let p = &premises[0].conclusion;
            let s = Subst::for_context(&p.ctx, terms).ok();
            if let Some(s) = s {
                conclusion.lhs = p.lhs.subst(&s, vs);
                conclusion.rhs = p.rhs.subst(&s, vs);
            }
        }
        RuleTag::UnivE => {
            conclusion.lhs = premises[0].conclusion.lhs.clone();
        }
        RuleTag::ExisI => {
            conclusion.rhs = premises[0].conclusion.rhs.clone();
        }
        _ => {}
    }
    let premises = premises
        .into_iter()
        .map(|mut p| {
            match &tree.rule {
                RuleTag::UnivI => p.conclusion.lhs = tree.conclusion.lhs.clone(),
                RuleTag::ExisE => p.conclusion.rhs = tree.conclusion.rhs.clone(),
                _ => {}
            }
            p
        })
        .collect();
    ProofTree::new(tree.rule.clone(), conclusion, premises)
}
