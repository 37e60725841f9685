//! Declarations with determining sequences and signatures built from them.
//!
//! A [`Signature`] is always indexed and always inductive: it can only be
//! grown through [`Signature::extend`], which checks each new declaration
//! against the signature built so far. Predicate declarations live in the
//! same namespace as type and function declarations, so a `Signature` plays
//! the role of a first-order signature `(Σ, Π)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::checker::{self, CheckError};
use crate::syntax::{Context, Flavor, Symbol, Type, VariableSystem};

/// What a declaration introduces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DeclKind {
    Type,
    Fun { ret: Type },
    Pred,
}

/// A type, function or predicate declaration `(Γ, s, ī[, U])`.
///
/// `det` holds the 1-based positions of the explicit arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decl {
    pub name: Symbol,
    pub ctx: Context,
    pub det: Vec<usize>,
    pub kind: DeclKind,
}

impl Decl {
    pub fn type_decl(name: &str, ctx: Context, det: Vec<usize>) -> Decl {
        Decl { name: Arc::from(name), ctx, det, kind: DeclKind::Type }
    }

    pub fn fun_decl(name: &str, ctx: Context, det: Vec<usize>, ret: Type) -> Decl {
        Decl { name: Arc::from(name), ctx, det, kind: DeclKind::Fun { ret } }
    }

    pub fn pred_decl(name: &str, ctx: Context, det: Vec<usize>) -> Decl {
        Decl { name: Arc::from(name), ctx, det, kind: DeclKind::Pred }
    }

    /// Standard-form variant: every position explicit.
    pub fn full_det(ctx: &Context) -> Vec<usize> {
        (1..=ctx.len()).collect()
    }

    pub fn is_standard(&self) -> bool {
        self.det == Decl::full_det(&self.ctx)
    }

    pub fn arity(&self) -> usize {
        self.det.len()
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            DeclKind::Type => "type",
            DeclKind::Fun { .. } => "function",
            DeclKind::Pred => "predicate",
        }
    }

    pub fn ret(&self) -> Option<&Type> {
        match &self.kind {
            DeclKind::Fun { ret } => Some(ret),
            _ => None,
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let explicit: Vec<String> = self.det.iter().map(|&i| self.ctx.entries()[i - 1].0.to_string()).collect();
        let head = if explicit.is_empty() { self.name.to_string() } else { format!("{}({})", self.name, explicit.join(",")) };
        match &self.kind {
            DeclKind::Type => write!(f, "{head} type {}", self.ctx),
            DeclKind::Fun { ret } => write!(f, "{head} : {ret} {}", self.ctx),
            DeclKind::Pred => write!(f, "{head} form {}", self.ctx),
        }
    }
}

/// Ways a list of positions can fail to be a determining sequence.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error("positions must be strictly increasing, but {0} is followed by {1}")]
    Ordering(usize, usize),
    #[error("position {position} is outside the context of length {len}")]
    OutOfRange { position: usize, len: usize },
    #[error("top variable {var} (position {position}) is not among the explicit arguments")]
    MissingTop { var: String, position: usize },
}

/// Checks that `det` is strictly increasing and covers `TV(Γ)`.
pub fn validate_determining_seq(ctx: &Context, det: &[usize]) -> Result<(), DetError> {
    for w in det.windows(2) {
        if w[0] >= w[1] {
            return Err(DetError::Ordering(w[0], w[1]));
        }
    }
    if let Some(&p) = det.iter().find(|&&p| p == 0 || p > ctx.len()) {
        return Err(DetError::OutOfRange { position: p, len: ctx.len() });
    }
    for p in ctx.top_positions() {
        if !det.contains(&p) {
            return Err(DetError::MissingTop { var: ctx.entries()[p - 1].0.to_string(), position: p });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SignatureError {
    #[error("symbol {0} is already declared")]
    Duplicate(Symbol),
    #[error("bad determining sequence for {symbol}: {source}")]
    Determining { symbol: Symbol, source: DetError },
    #[error("declaration of {symbol} does not check: {source}")]
    Check { symbol: Symbol, source: CheckError },
}

/// An indexed, inductively built signature.
#[derive(Clone, Debug)]
pub struct Signature {
    flavor: Flavor,
    decls: Vec<Arc<Decl>>,
    index: HashMap<Symbol, usize>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.flavor == other.flavor && self.decls == other.decls
    }
}

impl Signature {
    /// The empty signature over the given variable discipline.
    pub fn empty(flavor: Flavor) -> Signature {
        Signature { flavor, decls: Vec::new(), index: HashMap::new() }
    }

    /// Replays declarations in order; on failure reports the index of the
    /// first declaration that does not extend its prefix.
    pub fn replay(flavor: Flavor, decls: impl IntoIterator<Item = Decl>) -> Result<Signature, (usize, SignatureError)> {
        let mut sig = Signature::empty(flavor);
        for (i, d) in decls.into_iter().enumerate() {
            sig = sig.extend(d).map_err(|e| (i, e))?;
        }
        Ok(sig)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// The variable system with every declared symbol reserved.
    pub fn var_system(&self) -> VariableSystem {
        VariableSystem::with_reserved(self.flavor, self.index.keys().cloned().collect())
    }

    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.index.get(name).map(|&i| &*self.decls[i])
    }

    /// Position of a symbol in the build order.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn decls(&self) -> impl Iterator<Item = &Decl> {
        self.decls.iter().map(|d| &**d)
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    /// The signature made of the first `n` declarations.
    pub fn prefix(&self, n: usize) -> Signature {
        let decls: Vec<_> = self.decls[..n].to_vec();
        let index = decls.iter().enumerate().map(|(i, d)| (d.name.clone(), i)).collect();
        Signature { flavor: self.flavor, decls, index }
    }

    /// Whether every declaration is on standard form.
    pub fn is_standard_form(&self) -> bool {
        self.decls.iter().all(|d| d.is_standard())
    }

    /// Only type declarations, as produced from FOLDS vocabularies.
    pub fn is_folds_like(&self) -> bool {
        self.decls.iter().all(|d| d.kind == DeclKind::Type)
    }

    /// The same declarations over another variable discipline, without
    /// rechecking. Moving from de Bruijn to unrestricted variables only
    /// enlarges the set of derivable judgements.
    pub fn with_flavor(&self, flavor: Flavor) -> Signature {
        Signature { flavor, ..self.clone() }
    }

    /// Adds one declaration after checking it against `self`.
    pub fn extend(&self, decl: Decl) -> Result<Signature, SignatureError> {
        if self.index.contains_key(&decl.name) {
            return Err(SignatureError::Duplicate(decl.name.clone()));
        }
        validate_determining_seq(&decl.ctx, &decl.det)
            .map_err(|source| SignatureError::Determining { symbol: decl.name.clone(), source })?;
        let wrap = |source| SignatureError::Check { symbol: decl.name.clone(), source };
        match &decl.kind {
            DeclKind::Type | DeclKind::Pred => {
                checker::check_context(self, &decl.ctx).map_err(wrap)?;
            }
            DeclKind::Fun { ret } => {
                checker::check_type(self, &decl.ctx, ret).map_err(wrap)?;
            }
        }
        Ok(self.push_unchecked(decl))
    }

    fn push_unchecked(&self, decl: Decl) -> Signature {
        let mut next = self.clone();
        next.index.insert(decl.name.clone(), next.decls.len());
        next.decls.push(Arc::new(decl));
        next
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Term, Var};

    fn a() -> Type {
        Type::new("A", vec![])
    }

    fn xy_a() -> Context {
        Context::from_entries(vec![(Var::new("x"), a()), (Var::new("y"), a())])
    }

    #[test]
    fn empty_signature_has_no_declarations() {
        let s = Signature::empty(Flavor::Unrestricted);
        assert!(s.is_empty());
        assert!(s.is_standard_form());
    }

    #[test]
    fn duplicate_declaration_is_rejected() {
        let s = Signature::empty(Flavor::Unrestricted).extend(Decl::type_decl("A", Context::empty(), vec![])).unwrap();
        let err = s.extend(Decl::type_decl("A", Context::empty(), vec![])).unwrap_err();
        assert!(matches!(err, SignatureError::Duplicate(_)));
    }

    #[test]
    fn determining_sequences() {
        let e = Type::new("E", vec![Term::var("x"), Term::var("y")]);
        let ctx = xy_a().extend(Var::new("p"), e);
        assert_eq!(validate_determining_seq(&ctx, &[3]), Ok(()));
        let single = Context::from_entries(vec![(Var::new("x"), a())]);
        assert!(matches!(validate_determining_seq(&single, &[]), Err(DetError::MissingTop { .. })));
        assert!(matches!(validate_determining_seq(&ctx, &[2, 1]), Err(DetError::Ordering(2, 1))));
    }

    #[test]
    fn prefix_keeps_build_order() {
        let s = Signature::empty(Flavor::Unrestricted)
            .extend(Decl::type_decl("A", Context::empty(), vec![]))
            .unwrap()
            .extend(Decl::type_decl("E", xy_a(), vec![1, 2]))
            .unwrap();
        let p = s.prefix(1);
        assert!(p.get("A").is_some());
        assert!(p.get("E").is_none());
        assert_eq!(s.position("E"), Some(1));
    }
}
