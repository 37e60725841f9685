//! Raw syntax over a symbol system: variables and their fresh-variable
//! providers, preterms, pretypes, precontexts and simultaneous substitution.
//!
//! Nothing here consults a signature. Well-formedness relative to
//! declarations is the business of [`crate::checker`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Interned name of a function, type or predicate symbol.
pub type Symbol = Arc<str>;

/// Builds a [`Symbol`] from any string slice.
pub fn sym(name: &str) -> Symbol {
    Arc::from(name)
}

/// A variable identifier.
///
/// Variables are totally ordered: words made only of lowercase ASCII letters
/// come first, then every other identifier; within each class the order is
/// shortlex (shorter first, then bytewise). Decimal numerals therefore
/// compare numerically among themselves, and the least variable outside any
/// finite set always exists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Var {
        Var(Arc::from(name))
    }

    /// The positional variable `n` of the de Bruijn carrier.
    pub fn index(n: usize) -> Var {
        Var::new(&n.to_string())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// The numeric value if this is a positive decimal numeral without
    /// leading zeros.
    pub fn as_index(&self) -> Option<usize> {
        let s = self.name();
        if s.is_empty() || s.starts_with('0') || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }

    fn is_lower_word(&self) -> bool {
        self.0.bytes().all(|b| b.is_ascii_lowercase())
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        let class = |v: &Var| if v.is_lower_word() { 0 } else { 1 };
        class(self)
            .cmp(&class(other))
            .then(self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.as_bytes().cmp(other.0.as_bytes()))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Whether `s` is acceptable as a variable or symbol name in the text formats.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '-' | '*' | '+' | '.' | '='))
}

/// The two variable disciplines the kernel supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Any identifier not already in use is fresh.
    Unrestricted,
    /// Variables are positive naturals and exactly one of them is fresh.
    DeBruijn,
}

impl Flavor {
    pub fn keyword(self) -> &'static str {
        match self {
            Flavor::Unrestricted => "unrestricted",
            Flavor::DeBruijn => "debruijn",
        }
    }
}

/// A variable system with its fresh-variable provider.
///
/// `reserved` lists symbol names that the provider never hands out, so that
/// printed syntax stays unambiguous. Reserved names are still legal
/// variables; they are only skipped by [`VariableSystem::pick`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSystem {
    pub flavor: Flavor,
    reserved: Arc<BTreeSet<Symbol>>,
}

impl VariableSystem {
    pub fn new(flavor: Flavor) -> Self {
        VariableSystem { flavor, reserved: Arc::new(BTreeSet::new()) }
    }

    pub fn with_reserved(flavor: Flavor, reserved: BTreeSet<Symbol>) -> Self {
        VariableSystem { flavor, reserved: Arc::new(reserved) }
    }

    /// Membership in the carrier of the system.
    pub fn in_carrier(&self, v: &Var) -> bool {
        match self.flavor {
            Flavor::DeBruijn => v.as_index().is_some(),
            Flavor::Unrestricted => is_identifier(v.name()),
        }
    }

    /// Whether `candidate` belongs to the provided set for `used`.
    pub fn provides(&self, used: &BTreeSet<Var>, candidate: &Var) -> bool {
        if !self.in_carrier(candidate) || used.contains(candidate) {
            return false;
        }
        match self.flavor {
            Flavor::Unrestricted => true,
            Flavor::DeBruijn => *candidate == self.pick(used),
        }
    }

    /// The chosen fresh variable for `used`.
    pub fn pick(&self, used: &BTreeSet<Var>) -> Var {
        match self.flavor {
            Flavor::DeBruijn => {
                let top = used.iter().filter_map(Var::as_index).max().unwrap_or(0);
                Var::index(top + 1)
            }
            Flavor::Unrestricted => {
                let mut n: u64 = 0;
                loop {
                    let v = Var::new(&lower_word(n));
                    if !used.contains(&v) && !self.reserved.contains(v.name()) {
                        return v;
                    }
                    n += 1;
                }
            }
        }
    }

    /// The first `n` entries of the standard fresh sequence
    /// `v_k = pick({v_0, ..., v_{k-1}})`.
    pub fn standard_sequence(&self, n: usize) -> Vec<Var> {
        let mut used = BTreeSet::new();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let v = self.pick(&used);
            used.insert(v.clone());
            out.push(v);
        }
        out
    }
}

/// The `n`-th lowercase word in shortlex order: a, b, ..., z, aa, ab, ...
fn lower_word(mut n: u64) -> String {
    let mut len = 1;
    let mut block = 26u64;
    while n >= block {
        n -= block;
        len += 1;
        block *= 26;
    }
    let mut bytes = vec![b'a'; len];
    for slot in bytes.iter_mut().rev() {
        *slot = b'a' + (n % 26) as u8;
        n /= 26;
    }
    String::from_utf8(bytes).expect("ascii")
}

/// A preterm: a variable or a function symbol applied to preterms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(Var),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(sym(f), args)
    }

    pub fn constant(f: &str) -> Term {
        Term::App(sym(f), Vec::new())
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn mentions(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.mentions(v)),
        }
    }

    pub fn subst(&self, s: &Subst) -> Term {
        match self {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(s)).collect()),
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(head, args) => write_app(f, head, args),
        }
    }
}

fn write_app(f: &mut fmt::Formatter<'_>, head: &str, args: &[Term]) -> fmt::Result {
    f.write_str(head)?;
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

/// A pretype `S(t1, ..., tk)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Type {
    pub head: Symbol,
    pub args: Vec<Term>,
}

impl Type {
    pub fn new(head: &str, args: Vec<Term>) -> Type {
        Type { head: sym(head), args }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }

    pub fn mentions(&self, v: &Var) -> bool {
        self.args.iter().any(|a| a.mentions(v))
    }

    pub fn subst(&self, s: &Subst) -> Type {
        Type { head: self.head.clone(), args: self.args.iter().map(|a| a.subst(s)).collect() }
    }

    pub fn size(&self) -> usize {
        1 + self.args.iter().map(Term::size).sum::<usize>()
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_app(f, &self.head, &self.args)
    }
}

/// A precontext `⟨x1:A1, ..., xn:An⟩`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Context {
    entries: Vec<(Var, Type)>,
}

impl Context {
    pub fn empty() -> Context {
        Context { entries: Vec::new() }
    }

    pub fn from_entries(entries: Vec<(Var, Type)>) -> Context {
        Context { entries }
    }

    pub fn entries(&self) -> &[(Var, Type)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `⟨Γ, x:A⟩`.
    pub fn extend(&self, x: Var, ty: Type) -> Context {
        let mut entries = self.entries.clone();
        entries.push((x, ty));
        Context { entries }
    }

    /// The first `k` declarations.
    pub fn prefix(&self, k: usize) -> Context {
        Context { entries: self.entries[..k].to_vec() }
    }

    /// The last declaration and the context before it.
    pub fn split_last(&self) -> Option<(Context, &Var, &Type)> {
        let (x, ty) = self.entries.last()?;
        Some((self.prefix(self.len() - 1), x, ty))
    }

    /// The declared variables `V(Γ)`.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.entries.iter().map(|(x, _)| x.clone()).collect()
    }

    /// Every variable occurring anywhere in the precontext.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = self.vars();
        for (_, ty) in &self.entries {
            ty.collect_vars(&mut out);
        }
        out
    }

    /// The ordered variable list `OV(Γ)`.
    pub fn ov(&self) -> Vec<Var> {
        self.entries.iter().map(|(x, _)| x.clone()).collect()
    }

    /// `OV(Γ)` as terms, i.e. the identity context map on `Γ`.
    pub fn ov_terms(&self) -> Vec<Term> {
        self.entries.iter().map(|(x, _)| Term::Var(x.clone())).collect()
    }

    /// Position (0-based) and type of a declared variable.
    pub fn lookup(&self, v: &Var) -> Option<(usize, &Type)> {
        self.entries.iter().position(|(x, _)| x == v).map(|i| (i, &self.entries[i].1))
    }

    /// Top-most variables: those not consumed by any later declaration.
    pub fn top_vars(&self) -> BTreeSet<Var> {
        let mut tv = BTreeSet::new();
        for (x, ty) in &self.entries {
            let used = ty.free_vars();
            tv.retain(|v| !used.contains(v));
            tv.insert(x.clone());
        }
        tv
    }

    /// 1-based positions of the top-most variables, ascending.
    pub fn top_positions(&self) -> Vec<usize> {
        let tv = self.top_vars();
        self.entries.iter().enumerate().filter(|(_, (x, _))| tv.contains(x)).map(|(i, _)| i + 1).collect()
    }

    /// `fresh(Γ) = fr(V(Γ))`.
    pub fn fresh(&self, vs: &VariableSystem) -> Var {
        vs.pick(&self.vars())
    }

    /// Whether `x ∈ Fresh(Γ)`.
    pub fn is_fresh(&self, vs: &VariableSystem, x: &Var) -> bool {
        vs.provides(&self.vars(), x)
    }

    /// Applies a substitution to every declared type, keeping the variables.
    pub fn subst_types(&self, s: &Subst) -> Context {
        Context { entries: self.entries.iter().map(|(x, ty)| (x.clone(), ty.subst(s))).collect() }
    }

    /// Checks the precontext conditions: each variable provided fresh for its
    /// predecessors, and each type mentioning only earlier variables.
    pub fn validate_pre(&self, vs: &VariableSystem) -> Result<(), SyntaxError> {
        let mut seen = BTreeSet::new();
        for (i, (x, ty)) in self.entries.iter().enumerate() {
            for v in ty.free_vars() {
                if !seen.contains(&v) {
                    return Err(SyntaxError::UnboundInContext { var: v, position: i + 1 });
                }
            }
            if !vs.provides(&seen, x) {
                return Err(SyntaxError::NotFresh { var: x.clone(), position: i + 1 });
            }
            seen.insert(x.clone());
        }
        Ok(())
    }

    /// Whether the variables follow the standard fresh sequence of `vs`.
    pub fn is_standard(&self, vs: &VariableSystem) -> bool {
        self.ov() == vs.standard_sequence(self.len())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, (x, ty)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{ty}")?;
        }
        f.write_str("⟩")
    }
}

/// A simultaneous substitution `[t1, ..., tn / x1, ..., xn]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Subst {
    map: BTreeMap<Var, Term>,
}

impl Subst {
    pub fn new(values: &[Term], over: &[Var]) -> Result<Subst, SyntaxError> {
        if values.len() != over.len() {
            return Err(SyntaxError::LengthMismatch { values: values.len(), targets: over.len() });
        }
        let mut map = BTreeMap::new();
        for (x, t) in over.iter().zip(values) {
            if map.insert(x.clone(), t.clone()).is_some() {
                return Err(SyntaxError::DuplicateTarget(x.clone()));
            }
        }
        Ok(Subst { map })
    }

    /// `[ā/Γ]`, i.e. substitution for `OV(Γ)`.
    pub fn for_context(ctx: &Context, values: &[Term]) -> Result<Subst, SyntaxError> {
        Subst::new(values, &ctx.ov())
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.map.get(v)
    }

    pub fn insert(&mut self, v: Var, t: Term) {
        self.map.insert(v, t);
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.map.keys()
    }

    pub fn range(&self) -> impl Iterator<Item = &Term> {
        self.map.values()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("substitution has {values} values for {targets} variables")]
    LengthMismatch { values: usize, targets: usize },
    #[error("variable {0} is substituted for twice")]
    DuplicateTarget(Var),
    #[error("variable {var} at position {position} is not fresh for the preceding declarations")]
    NotFresh { var: Var, position: usize },
    #[error("type at position {position} mentions {var}, which is not declared before it")]
    UnboundInContext { var: Var, position: usize },
}
