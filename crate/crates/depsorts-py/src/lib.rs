//! Python bindings: theories, vocabularies and the command-line entry point.
//!
//! Everything crosses the boundary as text in the formats of
//! `docs/formats.md`. Input that cannot be read raises `ValueError`; a
//! judgement or proof that fails to check raises `CheckError`.

use std::collections::BTreeMap;

use depsorts::checker::{Checker, Mode};
use depsorts::cli::format::{
    context_from, judgement_from, parse_model, parse_proofs, parse_theory, parse_vocab, print_theory, read_with,
    sequent_from, term_from, TheoryFile,
};
use depsorts::cwf::laws::{finset_cwf_laws, finset_pullbacks, finset_type_former_laws, LawSuite};
use depsorts::dfol::{check_proof, to_star, ProofMode, Theory as KernelTheory};
use depsorts::doctrine::eval::check_sequent_semantic;
use depsorts::doctrine::laws::{pat_doctrine_laws, subset_doctrine_laws};
use depsorts::doctrine::SubsetDoctrine;
use depsorts::folds::{self, find_isomorphism, signature_to_vocab, validate_vocabulary, vocab_to_signature};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(depsorts_py, CheckError, PyException, "A judgement, proof or signature failed to check.");

fn invalid(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> PyErr {
    CheckError::new_err(e.to_string())
}

fn proof_mode(mode: &str) -> PyResult<ProofMode> {
    match mode {
        "dfol" => Ok(ProofMode::Dfol),
        "dfolstar" => Ok(ProofMode::DfolStar),
        other => Err(invalid(format!("unknown proof mode {other}; expected dfol or dfolstar"))),
    }
}

/// A checked theory: a signature replayed from its declarations, with axioms.
#[pyclass(frozen, module = "depsorts_py")]
struct Theory {
    inner: KernelTheory,
}

#[pymethods]
impl Theory {
    /// Parses a theory file and replays its declarations.
    #[new]
    fn new(text: &str) -> PyResult<Theory> {
        let file = parse_theory(text).map_err(invalid)?;
        let inner = file.theory().map_err(failed)?;
        Ok(Theory { inner })
    }

    /// Symbol names in declaration order.
    #[getter]
    fn symbols(&self) -> Vec<String> {
        self.inner.signature().decls().map(|d| d.name.to_string()).collect()
    }

    #[getter]
    fn axioms(&self) -> Vec<String> {
        self.inner.axioms().iter().map(|(name, _)| name.to_string()).collect()
    }

    #[getter]
    fn flavor(&self) -> &'static str {
        self.inner.signature().flavor().keyword()
    }

    /// Derives a judgement such as `(elem (ctx (x A)) (f x) A)` and returns
    /// the height of its derivation. `star` drops the result-type premise of
    /// the function rule.
    #[pyo3(signature = (judgement, star = false))]
    fn derive(&self, judgement: &str, star: bool) -> PyResult<usize> {
        let j = read_with(judgement, judgement_from).map_err(invalid)?;
        let mode = if star { Mode::Star } else { Mode::Standard };
        let d = Checker::new(self.inner.signature()).with_mode(mode).judgement(&j).map_err(failed)?;
        Ok(d.height)
    }

    /// The type of `term` in `ctx`, with hidden arguments filled in.
    fn infer(&self, term: &str, ctx: &str) -> PyResult<String> {
        let term = read_with(term, term_from).map_err(invalid)?;
        let ctx = read_with(ctx, context_from).map_err(invalid)?;
        let (ty, _) = Checker::new(self.inner.signature()).infer(&ctx, &term).map_err(failed)?;
        Ok(ty.to_string())
    }

    /// Checks every proof in a proof file. Returns one `(name, error)` pair
    /// per proof, where `error` is `None` for an accepted proof and otherwise
    /// `(path, message)` with the path of the blamed node.
    #[pyo3(signature = (text, mode = "dfol"))]
    fn check_proofs(&self, text: &str, mode: &str) -> PyResult<Vec<(String, Option<(Vec<usize>, String)>)>> {
        let mode = proof_mode(mode)?;
        let file = parse_proofs(text).map_err(invalid)?;
        Ok(file
            .proofs
            .iter()
            .map(|p| {
                let verdict = check_proof(&self.inner, &p.value.tree, mode).err().map(|e| (e.path.clone(), e.to_string()));
                (p.value.name.to_string(), verdict)
            })
            .collect())
    }

    /// Rewrites every proof of a proof file into the starred calculus and
    /// reports whether each rewritten proof is accepted there.
    fn convert_proofs(&self, text: &str) -> PyResult<Vec<(String, bool)>> {
        let file = parse_proofs(text).map_err(invalid)?;
        let vs = self.inner.signature().var_system();
        Ok(file
            .proofs
            .iter()
            .map(|p| {
                let star = to_star(&p.value.tree, &vs);
                (p.value.name.to_string(), check_proof(&self.inner, &star, ProofMode::DfolStar).is_ok())
            })
            .collect())
    }

    /// Whether a sequent holds in a tabulated finite model.
    fn holds(&self, model: &str, sequent: &str) -> PyResult<bool> {
        let structure = parse_model(model).map_err(invalid)?.structure(self.inner.signature()).map_err(failed)?;
        let seq = read_with(sequent, sequent_from).map_err(invalid)?;
        check_sequent_semantic(&SubsetDoctrine, &structure, &seq).map_err(failed)
    }

    /// The vocabulary of a FOLDS-like signature.
    fn to_vocabulary(&self) -> PyResult<Vocabulary> {
        let inner = signature_to_vocab(self.inner.signature()).map_err(failed)?;
        Ok(Vocabulary { inner })
    }

    /// The theory printed back in the file format, without axioms.
    fn signature_text(&self) -> String {
        print_theory(&TheoryFile::from_signature(self.inner.signature()))
    }

    fn __repr__(&self) -> String {
        format!("<Theory: {} symbols, {} axioms>", self.inner.signature().len(), self.inner.axioms().len())
    }
}

/// A validated FOLDS vocabulary.
#[pyclass(frozen, module = "depsorts_py")]
struct Vocabulary {
    inner: folds::Vocabulary,
}

#[pymethods]
impl Vocabulary {
    #[new]
    fn new(text: &str) -> PyResult<Vocabulary> {
        let raw = parse_vocab(text).map_err(invalid)?;
        let inner = validate_vocabulary(&raw).map_err(failed)?;
        Ok(Vocabulary { inner })
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.objects().to_vec()
    }

    /// `(name, dom, cod)` for every non-identity arrow.
    #[getter]
    fn arrows(&self) -> Vec<(String, String, String)> {
        let objects = self.inner.objects();
        self.inner.arrows().iter().map(|a| (a.name.clone(), objects[a.dom].clone(), objects[a.cod].clone())).collect()
    }

    /// Names of the arrows out of `object` that do not factor through
    /// another object.
    fn irreducible_arrows(&self, object: &str) -> PyResult<Vec<String>> {
        let o = self.inner.object_index(object).ok_or_else(|| invalid(format!("unknown object {object}")))?;
        Ok(self.inner.irreducible_arrows(o).into_iter().map(|a| self.inner.arrows()[a].name.clone()).collect())
    }

    /// The signature of the vocabulary as a theory.
    fn to_theory(&self) -> PyResult<Theory> {
        let sig = vocab_to_signature(&self.inner).map_err(failed)?.signature;
        let inner = KernelTheory::new(sig, vec![]).map_err(failed)?;
        Ok(Theory { inner })
    }

    fn isomorphic(&self, other: &Vocabulary) -> bool {
        find_isomorphism(&self.inner, &other.inner).is_some()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("<Vocabulary: {} objects, {} arrows>", self.inner.objects().len(), self.inner.arrows().len())
    }
}

/// Runs an exhaustive law suite over finite sets of size at most `size`.
/// Returns `{law: (checks, failures)}`.
#[pyfunction]
#[pyo3(signature = (suite, size = 2))]
fn law_suite(py: Python<'_>, suite: &str, size: u32) -> PyResult<BTreeMap<String, (usize, usize)>> {
    let runs: Vec<fn(u32) -> LawSuite> = match suite {
        "cwf" => vec![finset_cwf_laws, |n| finset_pullbacks(n, 2), finset_type_former_laws],
        "doctrine" => vec![subset_doctrine_laws, pat_doctrine_laws],
        other => return Err(invalid(format!("unknown suite {other}; expected cwf or doctrine"))),
    };
    let merged = py.detach(|| {
        let mut merged = LawSuite::new();
        for run in runs {
            merged.merge(run(size));
        }
        merged
    });
    Ok(merged.reports().into_iter().map(|r| (r.law, (r.checks, r.failures))).collect())
}

/// Runs the command-line tool on `args` (without the program name) and
/// returns its exit status and output.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> (i32, String) {
    py.detach(|| depsorts::cli::run(std::iter::once("depsorts".to_string()).chain(args)))
}

#[pymodule]
fn depsorts_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Theory>()?;
    m.add_class::<Vocabulary>()?;
    m.add_function(wrap_pyfunction!(law_suite, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("CheckError", m.py().get_type::<CheckError>())?;
    Ok(())
}
