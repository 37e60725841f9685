//! Reading and printing the file formats.
//!
//! Every `*_from` function turns an [`SExpr`] into kernel syntax and every
//! `*_to` function goes back; `x_from(&x_to(v)) == v` for all values. The
//! grammar is documented in `docs/formats.md` at the repository root.

use std::collections::HashMap;

use crate::checker::Judgement;
use crate::cwf::finset::{FinSet, FinSetCwf, FinTm, FinTy, Val};
use crate::cwf::model::{Model, ModelError};
use crate::dfol::{Formula, ProofTree, RuleTag, Sequent, Theory, TheoryError};
use crate::doctrine::{EvalError, Structure, Subset, SubsetDoctrine};
use crate::folds::RawVocabulary;
use crate::signature::{Decl, DeclKind, Signature, SignatureError};
use crate::syntax::{is_identifier, sym, Context, Flavor, Symbol, Term, Type, Var};

use super::sexpr::{parse, parse_one, ParseError, Pos, SExpr};

/// Words with a fixed meaning in formula position.
pub const RESERVED: [&str; 7] = ["top", "bot", "and", "or", "imp", "forall", "exists"];

type Parsed<T> = Result<T, ParseError>;

fn name_from(e: &SExpr, what: &str) -> Parsed<String> {
    match e.as_atom() {
        Some(s) if is_identifier(s) => Ok(s.to_string()),
        _ => Err(e.error(format!("expected {what}, found {e}"))),
    }
}

fn symbol_from(e: &SExpr, what: &str) -> Parsed<Symbol> {
    let name = name_from(e, what)?;
    if RESERVED.contains(&name.as_str()) {
        return Err(e.error(format!("{name} is a reserved word")));
    }
    Ok(sym(&name))
}

fn tagged<'a>(e: &'a SExpr, head: &str) -> Parsed<&'a [SExpr]> {
    match e.head() {
        Some((h, rest)) if h == head => Ok(rest),
        _ => Err(e.error(format!("expected ({head} …), found {e}"))),
    }
}

fn arity(e: &SExpr, items: &[SExpr], n: usize) -> Parsed<()> {
    if items.len() == n {
        Ok(())
    } else {
        Err(e.error(format!("expected {n} arguments, found {}", items.len())))
    }
}

pub fn term_from(e: &SExpr) -> Parsed<Term> {
    match e {
        SExpr::Atom(..) => Ok(Term::Var(Var::new(&name_from(e, "a variable")?))),
        SExpr::List(items, _) => {
            let (head, args) = items.split_first().ok_or_else(|| e.error("empty term"))?;
            let f = symbol_from(head, "a function symbol")?;
            Ok(Term::App(f, args.iter().map(term_from).collect::<Parsed<_>>()?))
        }
        SExpr::Str(..) => Err(e.error("strings are not terms")),
    }
}

pub fn term_to(t: &Term) -> SExpr {
    match t {
        Term::Var(v) => SExpr::atom(v.name()),
        Term::App(f, args) => SExpr::tagged(f, args.iter().map(term_to)),
    }
}

pub fn type_from(e: &SExpr) -> Parsed<Type> {
    match e {
        SExpr::Atom(..) => Ok(Type { head: symbol_from(e, "a type symbol")?, args: vec![] }),
        SExpr::List(items, _) => {
            let (head, args) = items.split_first().ok_or_else(|| e.error("empty type"))?;
            Ok(Type { head: symbol_from(head, "a type symbol")?, args: args.iter().map(term_from).collect::<Parsed<_>>()? })
        }
        SExpr::Str(..) => Err(e.error("strings are not types")),
    }
}

pub fn type_to(ty: &Type) -> SExpr {
    if ty.args.is_empty() {
        SExpr::atom(&*ty.head)
    } else {
        SExpr::tagged(&ty.head, ty.args.iter().map(term_to))
    }
}

pub fn context_from(e: &SExpr) -> Parsed<Context> {
    let entries = tagged(e, "ctx")?
        .iter()
        .map(|decl| match decl.as_list() {
            Some([x, ty]) => Ok((Var::new(&name_from(x, "a variable")?), type_from(ty)?)),
            _ => Err(decl.error("expected a declaration (x A)")),
        })
        .collect::<Parsed<_>>()?;
    Ok(Context::from_entries(entries))
}

pub fn context_to(ctx: &Context) -> SExpr {
    SExpr::tagged("ctx", ctx.entries().iter().map(|(x, ty)| SExpr::list(vec![SExpr::atom(x.name()), type_to(ty)])))
}

pub fn formula_from(e: &SExpr) -> Parsed<Formula> {
    match e {
        SExpr::Atom(a, _) if a == "top" => Ok(Formula::Top),
        SExpr::Atom(a, _) if a == "bot" => Ok(Formula::Bot),
        SExpr::List(..) => {
            let (head, rest) = e.head().ok_or_else(|| e.error("expected a formula"))?;
            match head {
                "and" | "or" | "imp" => {
                    arity(e, rest, 2)?;
                    let (a, b) = (formula_from(&rest[0])?, formula_from(&rest[1])?);
                    Ok(match head {
                        "and" => Formula::and(a, b),
                        "or" => Formula::or(a, b),
                        _ => Formula::imp(a, b),
                    })
                }
                "forall" | "exists" => {
                    arity(e, rest, 2)?;
                    let (x, ty) = match rest[0].as_list() {
                        Some([x, ty]) => (Var::new(&name_from(x, "a variable")?), type_from(ty)?),
                        _ => return Err(rest[0].error("expected a binder (x A)")),
                    };
                    let body = formula_from(&rest[1])?;
                    Ok(if head == "forall" { Formula::forall(x, ty, body) } else { Formula::exists(x, ty, body) })
                }
                "top" | "bot" => Err(e.error(format!("{head} takes no arguments"))),
                _ => {
                    let items = e.as_list().expect("a list");
                    let r = symbol_from(&items[0], "a predicate symbol")?;
                    Ok(Formula::Atom(r, rest.iter().map(term_from).collect::<Parsed<_>>()?))
                }
            }
        }
        _ => Err(e.error(format!("expected a formula, found {e}"))),
    }
}

pub fn formula_to(phi: &Formula) -> SExpr {
    match phi {
        Formula::Top => SExpr::atom("top"),
        Formula::Bot => SExpr::atom("bot"),
        Formula::Atom(r, args) => SExpr::tagged(r, args.iter().map(term_to)),
        Formula::And(a, b) => SExpr::tagged("and", [formula_to(a), formula_to(b)]),
        Formula::Or(a, b) => SExpr::tagged("or", [formula_to(a), formula_to(b)]),
        Formula::Imp(a, b) => SExpr::tagged("imp", [formula_to(a), formula_to(b)]),
        Formula::Forall(x, ty, body) | Formula::Exists(x, ty, body) => {
            let q = if matches!(phi, Formula::Forall(..)) { "forall" } else { "exists" };
            SExpr::tagged(q, [SExpr::list(vec![SExpr::atom(x.name()), type_to(ty)]), formula_to(body)])
        }
    }
}

pub fn sequent_from(e: &SExpr) -> Parsed<Sequent> {
    let rest = tagged(e, "seq")?;
    arity(e, rest, 3)?;
    Ok(Sequent::new(context_from(&rest[0])?, formula_from(&rest[1])?, formula_from(&rest[2])?))
}

pub fn sequent_to(s: &Sequent) -> SExpr {
    SExpr::tagged("seq", [context_to(&s.ctx), formula_to(&s.lhs), formula_to(&s.rhs)])
}

pub fn judgement_from(e: &SExpr) -> Parsed<Judgement> {
    let (head, rest) = e.head().ok_or_else(|| e.error("expected a judgement"))?;
    match head {
        "context" => {
            arity(e, rest, 1)?;
            Ok(Judgement::Context(context_from(&rest[0])?))
        }
        "type" => {
            arity(e, rest, 2)?;
            Ok(Judgement::Type(context_from(&rest[0])?, type_from(&rest[1])?))
        }
        "elem" => {
            arity(e, rest, 3)?;
            Ok(Judgement::Elem(context_from(&rest[0])?, term_from(&rest[1])?, type_from(&rest[2])?))
        }
        _ => Err(e.error(format!("unknown judgement form {head}; expected context, type or elem"))),
    }
}

pub fn judgement_to(j: &Judgement) -> SExpr {
    match j {
        Judgement::Context(c) => SExpr::tagged("context", [context_to(c)]),
        Judgement::Type(c, a) => SExpr::tagged("type", [context_to(c), type_to(a)]),
        Judgement::Elem(c, t, a) => SExpr::tagged("elem", [context_to(c), term_to(t), type_to(a)]),
    }
}

fn det_from(e: &SExpr) -> Parsed<Vec<usize>> {
    tagged(e, "det")?
        .iter()
        .map(|i| i.as_atom().and_then(|s| s.parse().ok()).ok_or_else(|| i.error("expected a position")))
        .collect()
}

pub fn decl_from(e: &SExpr) -> Parsed<Decl> {
    let (head, rest) = e.head().ok_or_else(|| e.error("expected a declaration"))?;
    let expected = match head {
        "type" | "pred" => 3,
        "fun" => 4,
        _ => return Err(e.error(format!("unknown declaration {head}"))),
    };
    if rest.len() != expected && rest.len() != expected - 1 {
        return Err(e.error(format!("malformed {head} declaration")));
    }
    let name = symbol_from(&rest[0], "a symbol name")?;
    let ctx = context_from(&rest[1])?;
    let has_det = rest.get(2).and_then(SExpr::head).is_some_and(|(h, _)| h == "det");
    if rest.len() == expected - 1 && has_det {
        return Err(e.error(format!("malformed {head} declaration")));
    }
    let det = if has_det { det_from(&rest[2])? } else { Decl::full_det(&ctx) };
    Ok(match head {
        "type" => Decl::type_decl(&name, ctx, det),
        "pred" => Decl::pred_decl(&name, ctx, det),
        _ => {
            let ret = tagged(rest.last().expect("checked length"), "ret")?;
            arity(rest.last().expect("checked length"), ret, 1)?;
            Decl::fun_decl(&name, ctx, det, type_from(&ret[0])?)
        }
    })
}

pub fn decl_to(d: &Decl) -> SExpr {
    let det = SExpr::tagged("det", d.det.iter().map(|i| SExpr::atom(i.to_string())));
    let mut items = vec![SExpr::atom(&*d.name), context_to(&d.ctx), det];
    let head = match &d.kind {
        DeclKind::Type => "type",
        DeclKind::Pred => "pred",
        DeclKind::Fun { ret } => {
            items.push(SExpr::tagged("ret", [type_to(ret)]));
            "fun"
        }
    };
    SExpr::tagged(head, items)
}

/// A value with the position it was read from. Equality ignores the
/// position.
#[derive(Clone, Debug)]
pub struct Located<T> {
    pub value: T,
    pub pos: Pos,
}

impl<T: PartialEq> PartialEq for Located<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

fn at<T>(value: T, pos: Pos) -> Located<T> {
    Located { value, pos }
}

/// A failure to turn a parsed file into kernel objects, with the position
/// of the offending entry.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{pos}: {msg}")]
pub struct LoadError {
    pub pos: Pos,
    pub msg: String,
}

fn load_error(pos: Pos, e: impl std::fmt::Display) -> LoadError {
    LoadError { pos, msg: e.to_string() }
}

/// A theory document: the variable discipline, declarations and axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoryFile {
    pub flavor: Flavor,
    pub decls: Vec<Located<Decl>>,
    pub axioms: Vec<Located<(Symbol, Sequent)>>,
}

fn flavor_from(e: &SExpr) -> Parsed<Flavor> {
    match e.as_atom() {
        Some("unrestricted") => Ok(Flavor::Unrestricted),
        Some("debruijn") => Ok(Flavor::DeBruijn),
        _ => Err(e.error("expected unrestricted or debruijn")),
    }
}

pub fn parse_theory(text: &str) -> Parsed<TheoryFile> {
    let mut file = TheoryFile { flavor: Flavor::Unrestricted, decls: vec![], axioms: vec![] };
    let mut seen_vars = false;
    for e in parse(text)? {
        let (head, rest) = e.head().ok_or_else(|| e.error("expected a top-level form"))?;
        match head {
            "vars" => {
                if seen_vars || !file.decls.is_empty() || !file.axioms.is_empty() {
                    return Err(e.error("(vars …) must come first and only once"));
                }
                arity(&e, rest, 1)?;
                file.flavor = flavor_from(&rest[0])?;
                seen_vars = true;
            }
            "axiom" => {
                arity(&e, rest, 2)?;
                file.axioms.push(at((symbol_from(&rest[0], "an axiom name")?, sequent_from(&rest[1])?), e.pos()));
            }
            _ => file.decls.push(at(decl_from(&e)?, e.pos())),
        }
    }
    Ok(file)
}

pub fn print_theory(file: &TheoryFile) -> String {
    let mut out = format!("(vars {})\n", file.flavor.keyword());
    for d in &file.decls {
        out.push_str(&decl_to(&d.value).pretty(100));
        out.push('\n');
    }
    for a in &file.axioms {
        let (name, seq) = &a.value;
        out.push_str(&SExpr::tagged("axiom", [SExpr::atom(&**name), sequent_to(seq)]).pretty(100));
        out.push('\n');
    }
    out
}

impl TheoryFile {
    pub fn from_signature(sig: &Signature) -> TheoryFile {
        TheoryFile { flavor: sig.flavor(), decls: sig.decls().map(|d| at(d.clone(), Pos::default())).collect(), axioms: vec![] }
    }

    /// Replays the declarations in file order.
    pub fn signature(&self) -> Result<Signature, LoadError> {
        Signature::replay(self.flavor, self.decls.iter().map(|d| d.value.clone())).map_err(|(i, e): (usize, SignatureError)| {
            load_error(self.decls[i].pos, format!("{}: {e}", self.decls[i].value.name))
        })
    }

    pub fn theory(&self) -> Result<Theory, LoadError> {
        let sig = self.signature()?;
        let axioms = self.axioms.iter().map(|a| a.value.clone()).collect();
        Theory::new(sig, axioms).map_err(|e| {
            let name = match &e {
                TheoryError::Duplicate(n) | TheoryError::Ill { name: n, .. } => n,
            };
            let pos = self.axioms.iter().rev().find(|a| &a.value.0 == name).map_or(Pos::default(), |a| a.pos);
            load_error(pos, e)
        })
    }
}

fn tag_to(tag: &RuleTag) -> Vec<SExpr> {
    match tag {
        RuleTag::Axiom(name) => vec![SExpr::atom("axiom"), SExpr::atom(&**name)],
        RuleTag::Subs(terms) => vec![SExpr::atom("subs"), SExpr::list(terms.iter().map(term_to).collect())],
        other => vec![SExpr::atom(other.name())],
    }
}

/// `(rule [instance] (seq …) premise…)`, where the instance is an axiom name
/// for `axiom` and a list of terms for `subs`.
pub fn proof_from(e: &SExpr) -> Parsed<ProofTree> {
    let (head, rest) = e.head().ok_or_else(|| e.error("expected a proof node"))?;
    let (tag, rest) = match head {
        "axiom" => {
            let name = rest.first().ok_or_else(|| e.error("axiom needs a name"))?;
            (RuleTag::Axiom(symbol_from(name, "an axiom name")?), &rest[1..])
        }
        "subs" => {
            let terms = rest.first().and_then(SExpr::as_list).ok_or_else(|| e.error("subs needs a list of terms"))?;
            (RuleTag::Subs(terms.iter().map(term_from).collect::<Parsed<_>>()?), &rest[1..])
        }
        _ => (RuleTag::from_name(head).ok_or_else(|| e.error(format!("unknown rule {head}")))?, rest),
    };
    let (conclusion, premises) = rest.split_first().ok_or_else(|| e.error("missing conclusion"))?;
    Ok(ProofTree::new(tag, sequent_from(conclusion)?, premises.iter().map(proof_from).collect::<Parsed<_>>()?))
}

pub fn proof_to(tree: &ProofTree) -> SExpr {
    let mut items = tag_to(&tree.rule);
    items.push(sequent_to(&tree.conclusion));
    items.extend(tree.premises.iter().map(proof_to));
    SExpr::list(items)
}

/// A named proof with the expression it was read from.
#[derive(Clone, Debug, PartialEq)]
pub struct ProofEntry {
    pub name: Symbol,
    pub tree: ProofTree,
    pub source: SExpr,
}

impl ProofEntry {
    /// Where the node at `path` starts in the file.
    pub fn node_pos(&self, path: &[usize]) -> Pos {
        let mut node = &self.source;
        for &i in path {
            let items = node.as_list().unwrap_or_default();
            let seq = items.iter().position(|e| e.head().is_some_and(|(h, _)| h == "seq"));
            match seq.and_then(|k| items.get(k + 1 + i)) {
                Some(premise) => node = premise,
                None => break,
            }
        }
        node.pos()
    }
}

/// Named proofs, in file order.
#[derive(Clone, Debug, PartialEq)]
pub struct ProofFile {
    pub proofs: Vec<Located<ProofEntry>>,
}

pub fn parse_proofs(text: &str) -> Parsed<ProofFile> {
    let proofs = parse(text)?
        .iter()
        .map(|e| {
            let rest = tagged(e, "proof")?;
            arity(e, rest, 2)?;
            let entry =
                ProofEntry { name: symbol_from(&rest[0], "a proof name")?, tree: proof_from(&rest[1])?, source: rest[1].clone() };
            Ok(at(entry, e.pos()))
        })
        .collect::<Parsed<_>>()?;
    Ok(ProofFile { proofs })
}

pub fn print_proofs(file: &ProofFile) -> String {
    file.proofs
        .iter()
        .map(|p| SExpr::tagged("proof", [SExpr::atom(&*p.value.name), proof_to(&p.value.tree)]).pretty(100) + "\n")
        .collect()
}

/// The kind of symbol a model entry assigns.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EntryKind {
    Type,
    Fun,
    Pred,
}

impl EntryKind {
    fn keyword(self) -> &'static str {
        match self {
            EntryKind::Type => "type",
            EntryKind::Fun => "fun",
            EntryKind::Pred => "pred",
        }
    }
}

/// `(at (t1 … tn) v…)`: at the context element whose components are the
/// tokens `t1 … tn`, the fiber (for a type), the value (for a function), or
/// membership (for a predicate, with no values).
#[derive(Clone, PartialEq, Debug)]
pub struct Row {
    pub env: Vec<Symbol>,
    pub values: Vec<Symbol>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ModelEntry {
    pub kind: EntryKind,
    pub name: Symbol,
    pub rows: Vec<Located<Row>>,
}

/// A tabulated finite-set model of a theory's symbols.
#[derive(Clone, PartialEq, Debug)]
pub struct ModelFile {
    pub entries: Vec<Located<ModelEntry>>,
}

fn tokens_from(items: &[SExpr]) -> Parsed<Vec<Symbol>> {
    items.iter().map(|t| Ok(sym(&name_from(t, "a token")?))).collect()
}

fn row_from(e: &SExpr) -> Parsed<Row> {
    let rest = tagged(e, "at")?;
    let env = rest.first().and_then(SExpr::as_list).ok_or_else(|| e.error("expected (at (tokens…) values…)"))?;
    Ok(Row { env: tokens_from(env)?, values: tokens_from(&rest[1..])? })
}

pub fn parse_model(text: &str) -> Parsed<ModelFile> {
    let entries = parse(text)?
        .iter()
        .map(|e| {
            let (head, rest) = e.head().ok_or_else(|| e.error("expected a model entry"))?;
            let kind = match head {
                "type" => EntryKind::Type,
                "fun" => EntryKind::Fun,
                "pred" => EntryKind::Pred,
                _ => return Err(e.error(format!("unknown model entry {head}"))),
            };
            let name = symbol_from(rest.first().ok_or_else(|| e.error("missing symbol name"))?, "a symbol name")?;
            let rows = rest[1..].iter().map(|r| Ok(at(row_from(r)?, r.pos()))).collect::<Parsed<_>>()?;
            Ok(at(ModelEntry { kind, name, rows }, e.pos()))
        })
        .collect::<Parsed<_>>()?;
    Ok(ModelFile { entries })
}

fn atoms(tokens: &[Symbol]) -> impl Iterator<Item = SExpr> + '_ {
    tokens.iter().map(|t| SExpr::atom(&**t))
}

pub fn print_model(file: &ModelFile) -> String {
    let mut out = String::new();
    for entry in &file.entries {
        let e = &entry.value;
        let rows = e.rows.iter().map(|r| {
            SExpr::list(
                [SExpr::atom("at"), SExpr::list(atoms(&r.value.env).collect())]
                    .into_iter()
                    .chain(atoms(&r.value.values))
                    .collect(),
            )
        });
        let items = [SExpr::atom(e.kind.keyword()), SExpr::atom(&*e.name)].into_iter().chain(rows).collect();
        out.push_str(&SExpr::list(items).pretty(80));
        out.push('\n');
    }
    out
}

fn token(t: &Symbol) -> Val {
    Val::Tok(t.clone())
}

impl ModelFile {
    /// Interprets the signature in the finite-set cwf, symbol by symbol in
    /// declaration order, with predicates in the subset doctrine.
    pub fn structure(&self, sig: &Signature) -> Result<Structure<SubsetDoctrine>, LoadError> {
        let by_name: HashMap<&str, &Located<ModelEntry>> = self.entries.iter().map(|e| (&*e.value.name, e)).collect();
        for e in &self.entries {
            let decl = sig.get(&e.value.name).ok_or_else(|| load_error(e.pos, format!("{} is not declared", e.value.name)))?;
            let kind = match decl.kind {
                DeclKind::Type => EntryKind::Type,
                DeclKind::Fun { .. } => EntryKind::Fun,
                DeclKind::Pred => EntryKind::Pred,
            };
            if kind != e.value.kind {
                return Err(load_error(e.pos, format!("{} is a {} symbol", decl.name, decl.kind_name())));
            }
        }
        let model_error = |pos: Pos| move |e: ModelError| load_error(pos, e);
        let mut model = Model::empty(FinSetCwf, sig.flavor());
        let mut preds = Vec::new();
        for decl in sig.decls() {
            let entry = by_name.get(&*decl.name).copied();
            let pos = entry.map_or(Pos::default(), |e| e.pos);
            let rows = tabulate(entry, &model.context(&decl.ctx).map_err(model_error(pos))?)?;
            match &decl.kind {
                DeclKind::Type => {
                    let entry = entry.ok_or_else(|| load_error(pos, format!("no value for type symbol {}", decl.name)))?;
                    let over = model.context(&decl.ctx).map_err(model_error(pos))?;
                    let fibers =
                        rows.iter().map(|r| FinSet::new(r.map_or(vec![], |r| r.values.iter().map(token).collect()))).collect();
                    let ty = FinTy::new(over, fibers).map_err(|e| load_error(entry.pos, e))?;
                    model = model.extend_by_type(decl.clone(), ty).map_err(model_error(pos))?;
                }
                DeclKind::Fun { .. } => {
                    let ty = model.declared_result(decl).map_err(model_error(pos))?;
                    let mut values = Vec::new();
                    for (i, row) in rows.iter().enumerate() {
                        let fiber = &ty.fibers()[i];
                        let value = match row {
                            Some(r) => match r.values.as_slice() {
                                [v] => token(v),
                                _ => return Err(load_error(pos, format!("{} needs exactly one value per row", decl.name))),
                            },
                            None if fiber.len() == 1 => fiber.elems()[0].clone(),
                            None => {
                                let env = &ty.ctx.elems()[i];
                                return Err(load_error(pos, format!("no value for {} at {env}", decl.name)));
                            }
                        };
                        values.push(value);
                    }
                    let tm = FinTm::new(ty, values).map_err(|e| load_error(pos, e))?;
                    model = model.extend_by_fun(decl.clone(), tm).map_err(model_error(pos))?;
                }
                DeclKind::Pred => {
                    if let Some(r) = entry.and_then(|e| e.value.rows.iter().find(|r| !r.value.values.is_empty())) {
                        return Err(load_error(r.pos, "predicate rows list no values"));
                    }
                    preds.push((decl.name.clone(), rows.iter().map(Option::is_some).collect::<Vec<_>>(), pos));
                    model = model.extend_by_pred(decl.clone()).map_err(model_error(pos))?;
                }
            }
        }
        let mut s = Structure::new(model);
        for (name, flags, pos) in preds {
            let decl = sig.get(&name).expect("declared");
            let over = s.model().context(&decl.ctx).map_err(model_error(pos))?;
            let value = Subset::new(over, flags).map_err(|e| load_error(pos, e))?;
            s = s.interpret(&SubsetDoctrine, &name, value).map_err(|e: EvalError| load_error(pos, e))?;
        }
        Ok(s)
    }
}

/// Matches the rows of an entry against the elements of the context
/// object, in element order.
fn tabulate<'a>(entry: Option<&'a Located<ModelEntry>>, over: &FinSet) -> Result<Vec<Option<&'a Row>>, LoadError> {
    let mut rows = vec![None; over.len()];
    for row in entry.map_or(&[][..], |e| &e.value.rows[..]) {
        let env = Val::env(&row.value.env.iter().map(token).collect::<Vec<_>>());
        let i = over
            .index_of(&env)
            .ok_or_else(|| load_error(row.pos, format!("({}) is not an element of the context", row.value.env.join(" "))))?;
        if rows[i].replace(&row.value).is_some() {
            return Err(load_error(row.pos, "row given twice"));
        }
    }
    Ok(rows)
}

/// Reads the line format `objects O A …`, `name: A -> B`, `g . f = h`.
pub fn parse_vocab(text: &str) -> Parsed<RawVocabulary> {
    let mut raw = RawVocabulary::default();
    for (i, line) in text.lines().enumerate() {
        let code = line.split(';').next().unwrap_or("");
        let pos = Pos { line: i + 1, col: 1 + code.len() - code.trim_start().len() };
        let words: Vec<&str> = code.split_whitespace().collect();
        let name = |w: &str| -> Parsed<String> {
            if is_identifier(w) && w != "." && w != "=" {
                Ok(w.to_string())
            } else {
                Err(ParseError::new(pos, format!("bad name {w}")))
            }
        };
        match words.as_slice() {
            [] => {}
            ["objects", names @ ..] => {
                for n in names {
                    raw.objects.push(name(n)?);
                }
            }
            [arrow, dom, "->", cod] if arrow.ends_with(':') => {
                raw.arrows.push((name(&arrow[..arrow.len() - 1])?, name(dom)?, name(cod)?));
            }
            [g, ".", f, "=", h] => raw.equations.push((name(g)?, name(f)?, name(h)?)),
            _ => return Err(ParseError::new(pos, format!("cannot read line: {}", code.trim()))),
        }
    }
    Ok(raw)
}

/// Reads a single expression of the given kind from a command-line string.
pub fn read_with<T>(text: &str, read: fn(&SExpr) -> Parsed<T>) -> Parsed<T> {
    read(&parse_one(text)?)
}
