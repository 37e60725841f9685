//! The `depsorts` command line: file formats, commands and reports.
//!
//! Every command produces a [`Report`] with a human-readable text and a JSON
//! value, and an exit status: 0 on success, 1 when a check fails, 2 when an
//! input cannot be read or parsed.

pub mod format;
pub mod sexpr;

use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::checker::{interchange, standardize, strengthen, weaken, Checker, FreshSequence, Judgement, Mode};
use crate::cwf::laws::{finset_cwf_laws, finset_pullbacks, finset_type_former_laws, LawSuite};
use crate::dfol::{check_formula, check_proof, standardize_formula, ProofMode};
use crate::doctrine::eval::failing_axiom;
use crate::doctrine::laws::{pat_doctrine_laws, subset_doctrine_laws};
use crate::doctrine::{check_sequent_semantic, SubsetDoctrine};
use crate::folds::{find_isomorphism, signature_to_vocab, validate_vocabulary, vocab_to_signature};
use crate::signature::{Decl, DeclKind, Signature};
use crate::syntax::{Context, Term, Type};

use format::{
    context_from, context_to, formula_from, formula_to, judgement_from, judgement_to, parse_model, parse_proofs, parse_theory,
    parse_vocab, read_with, sequent_from, term_from, type_from, type_to, LoadError, TheoryFile,
};
use sexpr::{ParseError, SExpr};

#[derive(Parser, Debug)]
#[command(name = "depsorts", version, about = "Proof checking for first-order logic with dependent sorts")]
pub struct Args {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleMode {
    /// Function rule with the result-type premise.
    R5,
    /// Function rule without it.
    R5star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LogicMode {
    Dfol,
    Dfolstar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cwf,
    Doctrine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Replay the declarations of a theory file and check its axioms.
    CheckSig { file: PathBuf },
    /// Derive a judgement such as `(elem (ctx (x A)) (f x) A)`.
    Check {
        file: PathBuf,
        #[arg(long)]
        judgement: String,
        #[arg(long, value_enum, default_value = "r5")]
        rule: RuleMode,
    },
    /// Infer the type of a term in a context.
    Infer {
        file: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long)]
        ctx: String,
    },
    /// Translate a vocabulary into its FOLDS signature.
    Folds2sig { vocab: PathBuf },
    /// Translate a FOLDS-like signature back into a vocabulary.
    Sig2folds {
        file: PathBuf,
        /// Search for an isomorphism with this vocabulary.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Check every proof in a proof file.
    CheckProof {
        file: PathBuf,
        proofs: PathBuf,
        #[arg(long, value_enum, default_value = "dfol")]
        mode: LogicMode,
    },
    /// Rename a judgement, or a formula in a context, to standard variables.
    #[command(group(ArgGroup::new("subject").required(true).args(["judgement", "formula"])))]
    Standardize {
        file: PathBuf,
        #[arg(long)]
        judgement: Option<String>,
        #[arg(long, requires = "ctx")]
        formula: Option<String>,
        #[arg(long)]
        ctx: Option<String>,
    },
    /// Evaluate a sequent in a tabulated finite model.
    Eval {
        file: PathBuf,
        model: PathBuf,
        #[arg(long)]
        sequent: String,
    },
    /// Apply weakening, strengthening or interchange to a judgement.
    #[command(group(ArgGroup::new("op").required(true).args(["weaken", "strengthen", "interchange"])))]
    Transform {
        file: PathBuf,
        #[arg(long)]
        judgement: String,
        /// 0-based context position the operation acts at.
        #[arg(long)]
        at: usize,
        #[arg(long, requires_all = ["var", "ty"])]
        weaken: bool,
        #[arg(long)]
        strengthen: bool,
        #[arg(long)]
        interchange: bool,
        /// The variable introduced by weakening.
        #[arg(long)]
        var: Option<String>,
        /// Its type.
        #[arg(long = "type")]
        ty: Option<String>,
    },
    /// Run the exhaustive law suites over finite sets.
    Laws {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        size: u32,
    },
}

/// The outcome of a command.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub status: i32,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Report {
        Report { status: 0, text: text.into(), json }
    }

    fn failed(text: impl Into<String>, json: Value) -> Report {
        Report { status: 1, text: text.into(), json }
    }

    /// The output for the chosen format.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("JSON values serialize")
        } else {
            self.text.trim_end().to_string()
        }
    }
}

/// An input that could not be read or parsed.
#[derive(Debug)]
struct InputError(String);

impl InputError {
    fn report(self) -> Report {
        Report { status: 2, text: format!("error: {}", self.0), json: json!({ "ok": false, "error": self.0 }) }
    }
}

type Run = Result<Report, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn parsed<T>(origin: &str, r: Result<T, ParseError>) -> Result<T, InputError> {
    r.map_err(|e| InputError(format!("{origin}:{e}")))
}

fn arg<T>(flag: &str, text: &str, reader: fn(&SExpr) -> Result<T, ParseError>) -> Result<T, InputError> {
    parsed(&format!("--{flag}"), read_with(text, reader))
}

fn load_theory_file(path: &Path) -> Result<TheoryFile, InputError> {
    parsed(&path.display().to_string(), parse_theory(&read(path)?))
}

/// A failed check with a location inside `path`.
fn located(path: &Path, e: &LoadError) -> Report {
    let at = format!("{}:{}", path.display(), e.pos);
    Report::failed(format!("{at}: {}", e.msg), json!({ "ok": false, "location": at, "error": e.msg }))
}

fn signature_of(path: &Path) -> Result<Result<Signature, Report>, InputError> {
    Ok(load_theory_file(path)?.signature().map_err(|e| located(path, &e)))
}

fn check_failure(what: impl Display, extra: Value) -> Report {
    let mut json = json!({ "ok": false, "error": what.to_string() });
    if let (Value::Object(base), Value::Object(more)) = (&mut json, extra) {
        base.extend(more);
    }
    Report::failed(format!("failed: {what}"), json)
}

/// Parses the arguments and runs the command, returning the exit status and
/// the rendered output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Args::try_parse_from(args) {
        Ok(args) => {
            let report = execute(&args.command);
            (report.status, report.render(args.json))
        }
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            (status, e.to_string().trim_end().to_string())
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ! {
    let (status, out) = run(std::env::args_os());
    if status == 2 {
        eprintln!("{out}");
    } else {
        println!("{out}");
    }
    std::process::exit(status)
}

pub fn execute(command: &Command) -> Report {
    let outcome = match command {
        Command::CheckSig { file } => check_sig(file),
        Command::Check { file, judgement, rule } => check(file, judgement, *rule),
        Command::Infer { file, term, ctx } => infer(file, term, ctx),
        Command::Folds2sig { vocab } => folds2sig(vocab),
        Command::Sig2folds { file, compare } => sig2folds(file, compare.as_deref()),
        Command::CheckProof { file, proofs, mode } => check_proofs(file, proofs, *mode),
        Command::Standardize { file, judgement, formula, ctx } => {
            standardize_cmd(file, judgement.as_deref(), formula.as_deref(), ctx.as_deref())
        }
        Command::Eval { file, model, sequent } => eval(file, model, sequent),
        Command::Transform { file, judgement, at, weaken, strengthen, var, ty, .. } => {
            let op = if *weaken {
                Op::Weaken
            } else if *strengthen {
                Op::Strengthen
            } else {
                Op::Interchange
            };
            transform(file, judgement, *at, op, var.as_deref(), ty.as_deref())
        }
        Command::Laws { suite, size } => Ok(laws(*suite, *size)),
    };
    outcome.unwrap_or_else(InputError::report)
}

/// The judgement a declaration introduces: `S(x̄) type`, `f(x̄) : U`, or the
/// context of a predicate.
fn generic_judgement(decl: &Decl) -> Judgement {
    let explicit: Vec<Term> = decl.det.iter().map(|&i| Term::Var(decl.ctx.entries()[i - 1].0.clone())).collect();
    match &decl.kind {
        DeclKind::Type => Judgement::Type(decl.ctx.clone(), Type { head: decl.name.clone(), args: explicit }),
        DeclKind::Fun { ret } => Judgement::Elem(decl.ctx.clone(), Term::App(decl.name.clone(), explicit), ret.clone()),
        DeclKind::Pred => Judgement::Context(decl.ctx.clone()),
    }
}

fn check_sig(path: &Path) -> Run {
    let file = load_theory_file(path)?;
    let theory = match file.theory() {
        Ok(t) => t,
        Err(e) => return Ok(located(path, &e)),
    };
    let sig = theory.signature();
    let checker = Checker::new(sig);
    let mut text = String::new();
    let mut decls = Vec::new();
    for decl in sig.decls() {
        let j = generic_judgement(decl);
        let d = checker.judgement(&j).expect("replayed declarations derive their generic judgement");
        text.push_str(&format!("{decl}    [height {}]\n", d.height));
        decls.push(json!({ "name": &*decl.name, "kind": decl.kind_name(), "judgement": j.to_string(), "height": d.height }));
    }
    let axioms: Vec<&str> = theory.axioms().iter().map(|(n, _)| &**n).collect();
    text.push_str(&format!("ok: {} declarations, {} axioms\n", decls.len(), axioms.len()));
    Ok(Report::ok(text, json!({ "ok": true, "flavor": sig.flavor().keyword(), "declarations": decls, "axioms": axioms })))
}

fn check(path: &Path, judgement: &str, rule: RuleMode) -> Run {
    let sig = match signature_of(path)? {
        Ok(s) => s,
        Err(r) => return Ok(r),
    };
    let j = arg("judgement", judgement, judgement_from)?;
    let mode = match rule {
        RuleMode::R5 => Mode::Standard,
        RuleMode::R5star => Mode::Star,
    };
    Ok(match Checker::new(&sig).with_mode(mode).judgement(&j) {
        Ok(d) => Report::ok(
            format!("derivable: {j}\nheight {}, last rule {}", d.height, d.rule),
            json!({ "ok": true, "judgement": j.to_string(), "height": d.height, "rule": d.rule.to_string(), "nodes": d.node_count() }),
        ),
        Err(e) => check_failure(&e, json!({ "rule": e.rule.to_string(), "path": e.path })),
    })
}

fn infer(path: &Path, term: &str, ctx: &str) -> Run {
    let sig = match signature_of(path)? {
        Ok(s) => s,
        Err(r) => return Ok(r),
    };
    let t = arg("term", term, term_from)?;
    let g = arg("ctx", ctx, context_from)?;
    Ok(match Checker::new(&sig).infer(&g, &t) {
        Ok((ty, d)) => Report::ok(
            format!("{t} : {ty}\n{}", type_to(&ty)),
            json!({ "ok": true, "type": type_to(&ty).to_string(), "display": ty.to_string(), "height": d.height }),
        ),
        Err(e) => check_failure(&e, json!({ "rule": e.rule.to_string(), "path": e.path })),
    })
}

fn folds2sig(path: &Path) -> Run {
    let raw = parsed(&path.display().to_string(), parse_vocab(&read(path)?))?;
    let voc = match validate_vocabulary(&raw) {
        Ok(v) => v,
        Err(e) => return Ok(check_failure(e, json!({}))),
    };
    let fs = match vocab_to_signature(&voc) {
        Ok(fs) => fs,
        Err(e) => return Ok(check_failure(e, json!({}))),
    };
    let mut text = format!("(vars {})\n", fs.signature.flavor().keyword());
    let mut decls = Vec::new();
    for decl in fs.signature.decls() {
        text.push_str(&format!("; {} type {}\n{}\n", decl.name, decl.ctx, format::decl_to(decl)));
        decls.push(json!({ "name": &*decl.name, "context": decl.ctx.to_string() }));
    }
    let order: Vec<&str> = fs.order.iter().map(|&o| voc.objects()[o].as_str()).collect();
    let enumerations: Vec<Value> = fs
        .order
        .iter()
        .map(|&o| json!({ "object": voc.objects()[o], "arrows": fs.enumerations[o].iter().map(|&a| &voc.arrows()[a].name).collect::<Vec<_>>() }))
        .collect();
    Ok(Report::ok(text, json!({ "ok": true, "order": order, "enumerations": enumerations, "declarations": decls })))
}

fn sig2folds(path: &Path, compare: Option<&Path>) -> Run {
    let sig = match signature_of(path)? {
        Ok(s) => s,
        Err(r) => return Ok(r),
    };
    let voc = match signature_to_vocab(&sig) {
        Ok(v) => v,
        Err(e) => return Ok(check_failure(e, json!({}))),
    };
    let mut text = voc.to_string();
    let mut json = json!({ "ok": true, "vocabulary": voc.to_string() });
    if let Some(other) = compare {
        let raw = parsed(&other.display().to_string(), parse_vocab(&read(other)?))?;
        let target = match validate_vocabulary(&raw) {
            Ok(v) => v,
            Err(e) => return Ok(check_failure(e, json!({}))),
        };
        match find_isomorphism(&voc, &target) {
            Some(iso) => {
                let objects: serde_json::Map<String, Value> =
                    voc.objects().iter().zip(&iso.objects).map(|(o, &i)| (o.clone(), json!(target.objects()[i]))).collect();
                let arrows: serde_json::Map<String, Value> = voc
                    .arrows()
                    .iter()
                    .zip(&iso.arrows)
                    .map(|(a, &i)| (a.name.clone(), json!(target.arrows()[i].name)))
                    .collect();
                text.push_str(&format!("isomorphic to {}\n", other.display()));
                for (a, b) in &objects {
                    text.push_str(&format!("  {a} ↦ {}\n", b.as_str().unwrap_or_default()));
                }
                for (a, b) in &arrows {
                    text.push_str(&format!("  {a} ↦ {}\n", b.as_str().unwrap_or_default()));
                }
                json["isomorphism"] = json!({ "objects": objects, "arrows": arrows });
            }
            None => {
                return Ok(Report::failed(
                    format!("{text}not isomorphic to {}", other.display()),
                    json!({ "ok": false, "vocabulary": voc.to_string(), "isomorphism": null }),
                ))
            }
        }
    }
    Ok(Report::ok(text, json))
}

fn check_proofs(path: &Path, proofs_path: &Path, mode: LogicMode) -> Run {
    let file = load_theory_file(path)?;
    let proofs = parsed(&proofs_path.display().to_string(), parse_proofs(&read(proofs_path)?))?;
    let theory = match file.theory() {
        Ok(t) => t,
        Err(e) => return Ok(located(path, &e)),
    };
    let mode = match mode {
        LogicMode::Dfol => ProofMode::Dfol,
        LogicMode::Dfolstar => ProofMode::DfolStar,
    };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut all_ok = true;
    for entry in &proofs.proofs {
        let p = &entry.value;
        match check_proof(&theory, &p.tree, mode) {
            Ok(()) => {
                text.push_str(&format!("{}: accepted (height {}, {} nodes)\n", p.name, p.tree.height(), p.tree.node_count()));
                results
                    .push(json!({ "name": &*p.name, "accepted": true, "height": p.tree.height(), "nodes": p.tree.node_count() }));
            }
            Err(e) => {
                all_ok = false;
                let at = format!("{}:{}", proofs_path.display(), p.node_pos(&e.path));
                text.push_str(&format!("{}: rejected at {at}: {e}\n", p.name));
                results.push(json!({
                    "name": &*p.name, "accepted": false, "path": e.path, "rule": e.rule,
                    "location": at, "error": e.kind.to_string(),
                }));
            }
        }
    }
    let json = json!({ "ok": all_ok, "mode": format!("{mode:?}").to_lowercase(), "proofs": results });
    Ok(if all_ok { Report::ok(text, json) } else { Report::failed(text, json) })
}

fn standardize_cmd(path: &Path, judgement: Option<&str>, formula: Option<&str>, ctx: Option<&str>) -> Run {
    let sig = match signature_of(path)? {
        Ok(s) => s,
        Err(r) => return Ok(r),
    };
    let vs = sig.var_system();
    if let Some(text) = judgement {
        let j = arg("judgement", text, judgement_from)?;
        let seq = FreshSequence::standard(&vs, j.context().len());
        return Ok(match standardize(&sig, &j, &seq) {
            Ok(s) => {
                let out = judgement_to(&s.judgement);
                Report::ok(
                    format!("{}\n{out}", s.judgement),
                    json!({ "ok": true, "judgement": out.to_string(), "height": s.derivation.height }),
                )
            }
            Err(e) => check_failure(e, json!({})),
        });
    }
    let phi = arg("formula", formula.expect("clap requires a subject"), formula_from)?;
    let g: Context = arg("ctx", ctx.expect("clap requires --ctx with --formula"), context_from)?;
    if let Err(e) = check_formula(&sig, &g, &phi) {
        return Ok(check_failure(e, json!({})));
    }
    let seq = FreshSequence::standard(&vs, g.len() + phi.height());
    Ok(match standardize_formula(&g, &phi, &seq, &vs) {
        Some((ctx, psi)) => {
            let (c, f) = (context_to(&ctx), formula_to(&psi));
            Report::ok(format!("{psi} in {ctx}\n{c}\n{f}"), json!({ "ok": true, "ctx": c.to_string(), "formula": f.to_string() }))
        }
        None => check_failure("the fresh sequence is too short", json!({})),
    })
}

fn eval(path: &Path, model_path: &Path, sequent: &str) -> Run {
    let file = load_theory_file(path)?;
    let model = parsed(&model_path.display().to_string(), parse_model(&read(model_path)?))?;
    let seq = arg("sequent", sequent, sequent_from)?;
    let theory = match file.theory() {
        Ok(t) => t,
        Err(e) => return Ok(located(path, &e)),
    };
    let structure = match model.structure(theory.signature()) {
        Ok(s) => s,
        Err(e) => return Ok(located(model_path, &e)),
    };
    for phi in [&seq.lhs, &seq.rhs] {
        if let Err(e) = check_formula(theory.signature(), &seq.ctx, phi) {
            return Ok(check_failure(e, json!({})));
        }
    }
    let d = SubsetDoctrine;
    let outcome =
        check_sequent_semantic(&d, &structure, &seq).and_then(|holds| Ok((holds, failing_axiom(&d, &structure, &theory)?)));
    let (holds, failing) = match outcome {
        Ok(r) => r,
        Err(e) => return Ok(check_failure(e, json!({}))),
    };
    let axioms = match &failing {
        None => "every axiom holds in the model".to_string(),
        Some(name) => format!("axiom {name} fails in the model"),
    };
    let verdict = if holds { "holds" } else { "fails" };
    let json = json!({ "ok": holds, "holds": holds, "axioms_hold": failing.is_none(), "failing_axiom": failing.as_deref() });
    let text = format!("{seq}: {verdict}\n{axioms}");
    Ok(if holds { Report::ok(text, json) } else { Report::failed(text, json) })
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Weaken,
    Strengthen,
    Interchange,
}

fn transform(path: &Path, judgement: &str, at: usize, op: Op, var: Option<&str>, ty: Option<&str>) -> Run {
    let sig = match signature_of(path)? {
        Ok(s) => s,
        Err(r) => return Ok(r),
    };
    let j = arg("judgement", judgement, judgement_from)?;
    let result = match op {
        Op::Weaken => {
            let y = arg("var", var.expect("clap requires --var"), term_from)?;
            let Term::Var(y) = y else {
                return Err(InputError("--var: expected a variable".into()));
            };
            let b = arg("type", ty.expect("clap requires --type"), type_from)?;
            weaken(&sig, &j, at, y, b)
        }
        Op::Strengthen => strengthen(&sig, &j, at),
        Op::Interchange => interchange(&sig, &j, at),
    };
    Ok(match result {
        Ok((out, d)) => {
            let shown = judgement_to(&out);
            Report::ok(
                format!("{out}\n{shown}\nheight {}", d.height),
                json!({ "ok": true, "judgement": shown.to_string(), "height": d.height }),
            )
        }
        Err(e) => check_failure(e, json!({})),
    })
}

fn laws(suite: Suite, size: u32) -> Report {
    let runs: Vec<(&str, fn(u32) -> LawSuite)> = match suite {
        Suite::Cwf => {
            vec![("cwf", finset_cwf_laws), ("pullbacks", |n| finset_pullbacks(n, 2)), ("type formers", finset_type_former_laws)]
        }
        Suite::Doctrine => vec![("subset doctrine", subset_doctrine_laws), ("pat doctrine", pat_doctrine_laws)],
    };
    let suites: Vec<(&str, LawSuite)> = std::thread::scope(|scope| {
        let handles: Vec<_> = runs.iter().map(|(name, go)| (*name, scope.spawn(move || go(size)))).collect();
        handles.into_iter().map(|(name, h)| (name, h.join().expect("law suite panicked"))).collect()
    });
    let mut text = String::new();
    let mut groups = Vec::new();
    let mut all_ok = true;
    for (name, s) in &suites {
        all_ok &= s.passed();
        let mut laws = Vec::new();
        for r in s.reports() {
            let verdict = if r.passed() { "ok" } else { "FAILED" };
            text.push_str(&format!("{name}: {}: {verdict} ({} checks, {} failures)\n", r.law, r.checks, r.failures));
            if let Some(first) = &r.first_failure {
                text.push_str(&format!("    first failure: {first}\n"));
            }
            laws.push(json!({ "law": r.law, "checks": r.checks, "failures": r.failures, "first_failure": r.first_failure }));
        }
        groups.push(json!({ "suite": name, "passed": s.passed(), "laws": laws }));
    }
    let json = json!({ "ok": all_ok, "size": size, "suites": groups });
    if all_ok {
        Report::ok(text, json)
    } else {
        Report::failed(text, json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(name: &str) -> String {
        format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn usage_errors_exit_with_two() {
        let (status, _) = run(["depsorts", "check-sig"]);
        assert_eq!(status, 2);
        let (status, _) = run(["depsorts", "check-sig", "/nonexistent/file.th"]);
        assert_eq!(status, 2);
    }

    #[test]
    fn generic_judgements_of_the_semigroup() {
        let (status, out) = run(["depsorts", "check-sig", &corpus("semigroup.th")]);
        assert_eq!(status, 0, "{out}");
        assert!(out.contains("ax1 : E(m(a,b),m(b,c)) ⟨⟩"), "{out}");
    }
}
