//! FOLDS vocabularies and their translation to and from signatures.
//!
//! A vocabulary is a finite category given by an explicit composition table
//! over its non-identity arrows. Identities are implicit.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::signature::{Decl, DeclKind, Signature, SignatureError};
use crate::syntax::{Context, Flavor, Symbol, Term, Type, Var};

/// A morphism: an identity on an object or a non-identity arrow.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Mor {
    Id(usize),
    Arrow(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A vocabulary as written: names only, nothing checked.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RawVocabulary {
    pub objects: Vec<String>,
    /// `(name, dom, cod)`.
    pub arrows: Vec<(String, String, String)>,
    /// `(g, f, h)` for `g ∘ f = h`; `h` may be `id_X`.
    pub equations: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("name {0} is used twice")]
    DuplicateName(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("{g} . {f} is not composable")]
    NotComposable { g: String, f: String },
    #[error("{g} . {f} = {h} has the wrong endpoints")]
    Endpoints { g: String, f: String, h: String },
    #[error("{g} . {f} is given twice")]
    Redefined { g: String, f: String },
    #[error("composite {g} . {f} is missing from the table")]
    Missing { g: String, f: String },
    #[error("associativity fails for {h} . {g} . {f}")]
    Associativity { h: String, g: String, f: String },
    #[error("{0} is a non-identity endomorphism, so the category is not one-way")]
    OneWay(String),
    #[error("{f} and {g} are mutually inverse, so the category is not skeletal")]
    Skeletal { f: String, g: String },
}

/// A validated FOLDS vocabulary: a finite, one-way, skeletal category.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vocabulary {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    table: HashMap<(usize, usize), Mor>,
}

impl Vocabulary {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn dom(&self, m: Mor) -> usize {
        match m {
            Mor::Id(o) => o,
            Mor::Arrow(a) => self.arrows[a].dom,
        }
    }

    pub fn cod(&self, m: Mor) -> usize {
        match m {
            Mor::Id(o) => o,
            Mor::Arrow(a) => self.arrows[a].cod,
        }
    }

    /// `g ∘ f`, or `None` when not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.dom(g) != self.cod(f) {
            return None;
        }
        match (g, f) {
            (Mor::Id(_), f) => Some(f),
            (g, Mor::Id(_)) => Some(g),
            (Mor::Arrow(g), Mor::Arrow(f)) => self.table.get(&(g, f)).copied(),
        }
    }

    pub fn mor_name(&self, m: Mor) -> String {
        match m {
            Mor::Id(o) => format!("id_{}", self.objects[o]),
            Mor::Arrow(a) => self.arrows[a].name.clone(),
        }
    }

    /// Non-identity arrows out of an object, in input order.
    pub fn arrows_from(&self, object: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].dom == object).collect()
    }

    /// `A ≤ B` iff there is a morphism from `B` to `A`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.arrows.iter().any(|x| x.dom == b && x.cod == a)
    }

    /// The canonical linear extension `≤*` of `≤`: a stable topological sort
    /// that places an object after every object it has arrows to, breaking
    /// ties by input order.
    pub fn level_order(&self) -> Vec<usize> {
        let mut placed = vec![false; self.objects.len()];
        let mut order = Vec::with_capacity(self.objects.len());
        while order.len() < self.objects.len() {
            let next = (0..self.objects.len())
                .find(|&o| !placed[o] && self.arrows.iter().all(|x| x.dom != o || x.cod == o || placed[x.cod]))
                .expect("a one-way skeletal category has no cycles");
            placed[next] = true;
            order.push(next);
        }
        order
    }

    /// The enumeration `x^A_1, …, x^A_n(A)`: arrows out of `A` sorted by the
    /// rank of their codomain under `≤*`, then by input order.
    pub fn enumeration(&self, object: usize) -> Vec<usize> {
        let rank = rank_of(&self.level_order());
        let mut out = self.arrows_from(object);
        out.sort_by_key(|&a| (rank[self.arrows[a].cod], a));
        out
    }

    /// Arrows out of `A` that do not factor as `g ∘ h` with both non-identity.
    pub fn irreducible_arrows(&self, object: usize) -> Vec<usize> {
        self.arrows_from(object)
            .into_iter()
            .filter(|&f| !self.table.iter().any(|(&(_, h), &r)| r == Mor::Arrow(f) && self.arrows[h].dom == object))
            .collect()
    }

    pub fn table(&self) -> impl Iterator<Item = ((usize, usize), Mor)> + '_ {
        let mut keys: Vec<_> = self.table.keys().copied().collect();
        keys.sort();
        keys.into_iter().map(|k| (k, self.table[&k]))
    }
}

fn rank_of(order: &[usize]) -> Vec<usize> {
    let mut rank = vec![0; order.len()];
    for (r, &o) in order.iter().enumerate() {
        rank[o] = r;
    }
    rank
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "objects {}", self.objects.join(" "))?;
        for a in &self.arrows {
            writeln!(f, "{}: {} -> {}", a.name, self.objects[a.dom], self.objects[a.cod])?;
        }
        for ((g, h), r) in self.table() {
            writeln!(f, "{} . {} = {}", self.arrows[g].name, self.arrows[h].name, self.mor_name(r))?;
        }
        Ok(())
    }
}

/// Checks the category laws, then one-wayness, then skeletality.
pub fn validate_vocabulary(raw: &RawVocabulary) -> Result<Vocabulary, VocabError> {
    let mut names = BTreeSet::new();
    for n in raw.objects.iter().chain(raw.arrows.iter().map(|a| &a.0)) {
        if !names.insert(n.clone()) {
            return Err(VocabError::DuplicateName(n.clone()));
        }
    }
    let object = |n: &str| raw.objects.iter().position(|o| o == n).ok_or_else(|| VocabError::UnknownObject(n.into()));
    let mut arrows = Vec::new();
    for (name, dom, cod) in &raw.arrows {
        arrows.push(Arrow { name: name.clone(), dom: object(dom)?, cod: object(cod)? });
    }
    let arrow = |n: &str| arrows.iter().position(|a| a.name == n).ok_or_else(|| VocabError::UnknownArrow(n.into()));
    let mut voc = Vocabulary { objects: raw.objects.clone(), arrows: arrows.clone(), table: HashMap::new() };
    for (g, f, h) in &raw.equations {
        let (gi, fi) = (arrow(g)?, arrow(f)?);
        if arrows[gi].dom != arrows[fi].cod {
            return Err(VocabError::NotComposable { g: g.clone(), f: f.clone() });
        }
        let result = match h.strip_prefix("id_") {
            Some(o) if arrow(h).is_err() => Mor::Id(object(o)?),
            _ => Mor::Arrow(arrow(h)?),
        };
        if voc.dom(result) != arrows[fi].dom || voc.cod(result) != arrows[gi].cod {
            return Err(VocabError::Endpoints { g: g.clone(), f: f.clone(), h: h.clone() });
        }
        if voc.table.insert((gi, fi), result).is_some() {
            return Err(VocabError::Redefined { g: g.clone(), f: f.clone() });
        }
    }
    let n = arrows.len();
    for g in 0..n {
        for f in 0..n {
            if arrows[g].dom == arrows[f].cod && !voc.table.contains_key(&(g, f)) {
                return Err(VocabError::Missing { g: arrows[g].name.clone(), f: arrows[f].name.clone() });
            }
        }
    }
    for h in 0..n {
        for g in 0..n {
            if arrows[h].dom != arrows[g].cod {
                continue;
            }
            for f in 0..n {
                if arrows[g].dom != arrows[f].cod {
                    continue;
                }
                let (h, g, f) = (Mor::Arrow(h), Mor::Arrow(g), Mor::Arrow(f));
                let left = voc.compose(h, g).and_then(|hg| voc.compose(hg, f));
                let right = voc.compose(g, f).and_then(|gf| voc.compose(h, gf));
                if left != right {
                    return Err(VocabError::Associativity { h: voc.mor_name(h), g: voc.mor_name(g), f: voc.mor_name(f) });
                }
            }
        }
    }
    if let Some(a) = arrows.iter().find(|a| a.dom == a.cod) {
        return Err(VocabError::OneWay(a.name.clone()));
    }
    for f in 0..n {
        for g in 0..n {
            if arrows[f].dom == arrows[g].cod
                && arrows[f].cod == arrows[g].dom
                && voc.table.get(&(g, f)) == Some(&Mor::Id(arrows[f].dom))
                && voc.table.get(&(f, g)) == Some(&Mor::Id(arrows[g].dom))
            {
                return Err(VocabError::Skeletal { f: arrows[f].name.clone(), g: arrows[g].name.clone() });
            }
        }
    }
    Ok(voc)
}

/// The signature `Σ_K` with the bookkeeping that relates its variables back
/// to arrows.
#[derive(Clone, Debug)]
pub struct FoldsSignature {
    pub signature: Signature,
    /// Objects in `≤*` order, which is also the declaration order.
    pub order: Vec<usize>,
    /// `enumerations[A]` lists `x^A_1, …` as arrow indices.
    pub enumerations: Vec<Vec<usize>>,
}

impl FoldsSignature {
    /// The variable standing for an arrow in the context of its domain.
    pub fn var_of(&self, voc: &Vocabulary, arrow: usize) -> Var {
        let pos = self.enumerations[voc.arrows[arrow].dom].iter().position(|&a| a == arrow).expect("enumerated");
        Var::new(&format!("x{}", pos + 1))
    }
}

/// Builds `Σ_K`, with variables `x1, …, xn` in every declaration.
pub fn vocab_to_signature(voc: &Vocabulary) -> Result<FoldsSignature, SignatureError> {
    let order = voc.level_order();
    let enumerations: Vec<Vec<usize>> = (0..voc.objects.len()).map(|o| voc.enumeration(o)).collect();
    let var = |object: usize, arrow: usize| -> Term {
        let pos = enumerations[object].iter().position(|&a| a == arrow).expect("arrow out of object");
        Term::var(&format!("x{}", pos + 1))
    };
    let mut decls = Vec::new();
    for &object in &order {
        let mut entries = Vec::new();
        for (i, &x) in enumerations[object].iter().enumerate() {
            let c = voc.arrows[x].cod;
            let args = enumerations[c]
                .iter()
                .map(|&u| match voc.compose(Mor::Arrow(u), Mor::Arrow(x)) {
                    Some(Mor::Arrow(ux)) => var(object, ux),
                    other => unreachable!("composite of arrows out of distinct levels is an arrow, got {other:?}"),
                })
                .collect();
            entries.push((Var::new(&format!("x{}", i + 1)), Type::new(&voc.objects[c], args)));
        }
        let ctx = Context::from_entries(entries);
        let det = Decl::full_det(&ctx);
        decls.push(Decl::type_decl(&voc.objects[object], ctx, det));
    }
    let signature = Signature::replay(Flavor::Unrestricted, decls).map_err(|(_, e)| e)?;
    Ok(FoldsSignature { signature, order, enumerations })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FoldsError {
    #[error("{0} is not a type declaration")]
    NotTypeDecl(Symbol),
    #[error("declaration of {0} is not on standard form")]
    NotStandard(Symbol),
    #[error("argument {position} of {symbol}'s declared type is not a context variable")]
    NotVariable { symbol: Symbol, position: usize },
    #[error("the generated category is malformed: {0}")]
    Category(#[from] VocabError),
}

/// Builds `K_Σ`. The arc for variable `x` of `S`'s context is named `S_x`.
pub fn signature_to_vocab(sig: &Signature) -> Result<Vocabulary, FoldsError> {
    let mut raw = RawVocabulary::default();
    let mut arcs: HashMap<(Symbol, Var), String> = HashMap::new();
    for d in sig.decls() {
        if d.kind != DeclKind::Type {
            return Err(FoldsError::NotTypeDecl(d.name.clone()));
        }
        if !d.is_standard() {
            return Err(FoldsError::NotStandard(d.name.clone()));
        }
        raw.objects.push(d.name.to_string());
        for (x, ty) in d.ctx.entries() {
            let name = format!("{}_{}", d.name, x);
            raw.arrows.push((name.clone(), d.name.to_string(), ty.head.to_string()));
            arcs.insert((d.name.clone(), x.clone()), name);
        }
    }
    for d in sig.decls() {
        for (j, (x, ty)) in d.ctx.entries().iter().enumerate() {
            let target = sig.get(&ty.head).expect("declared");
            for (k, arg) in ty.args.iter().enumerate() {
                let y = arg.as_var().ok_or_else(|| FoldsError::NotVariable { symbol: d.name.clone(), position: j + 1 })?;
                let outer = &target.ctx.entries()[k].0;
                raw.equations.push((
                    arcs[&(target.name.clone(), outer.clone())].clone(),
                    arcs[&(d.name.clone(), x.clone())].clone(),
                    arcs[&(d.name.clone(), y.clone())].clone(),
                ));
            }
        }
    }
    Ok(validate_vocabulary(&raw)?)
}

/// An isomorphism of vocabularies: images of objects and of arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

/// Exhaustive search for an isomorphism `K → L`.
pub fn find_isomorphism(k: &Vocabulary, l: &Vocabulary) -> Option<Isomorphism> {
    if k.objects.len() != l.objects.len() || k.arrows.len() != l.arrows.len() {
        return None;
    }
    let mut objects = vec![usize::MAX; k.objects.len()];
    let mut used = vec![false; l.objects.len()];
    search_objects(k, l, 0, &mut objects, &mut used)
}

fn search_objects(
    k: &Vocabulary,
    l: &Vocabulary,
    next: usize,
    objects: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<Isomorphism> {
    if next == objects.len() {
        let mut arrows = vec![usize::MAX; k.arrows.len()];
        let mut taken = vec![false; l.arrows.len()];
        return search_arrows(k, l, 0, objects, &mut arrows, &mut taken)
            .map(|arrows| Isomorphism { objects: objects.clone(), arrows });
    }
    for cand in 0..l.objects.len() {
        if used[cand] {
            continue;
        }
        used[cand] = true;
        objects[next] = cand;
        if let Some(iso) = search_objects(k, l, next + 1, objects, used) {
            return Some(iso);
        }
        used[cand] = false;
    }
    None
}

fn search_arrows(
    k: &Vocabulary,
    l: &Vocabulary,
    next: usize,
    objects: &[usize],
    arrows: &mut Vec<usize>,
    taken: &mut Vec<bool>,
) -> Option<Vec<usize>> {
    if next == arrows.len() {
        let image = |m: Mor| match m {
            Mor::Id(o) => Mor::Id(objects[o]),
            Mor::Arrow(a) => Mor::Arrow(arrows[a]),
        };
        let preserved =
            k.table.iter().all(|(&(g, f), &h)| l.compose(Mor::Arrow(arrows[g]), Mor::Arrow(arrows[f])) == Some(image(h)));
        return preserved.then(|| arrows.clone());
    }
    let a = &k.arrows[next];
    for cand in 0..l.arrows.len() {
        let b = &l.arrows[cand];
        if taken[cand] || b.dom != objects[a.dom] || b.cod != objects[a.cod] {
            continue;
        }
        taken[cand] = true;
        arrows[next] = cand;
        if let Some(found) = search_arrows(k, l, next + 1, objects, arrows, taken) {
            return Some(found);
        }
        taken[cand] = false;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> RawVocabulary {
        let s = |x: &str| x.to_string();
        RawVocabulary {
            objects: vec![s("O"), s("A"), s("T")],
            arrows: [("s", "T", "A"), ("t", "T", "A"), ("c", "A", "O"), ("d", "A", "O"), ("ds", "T", "O"), ("cs", "T", "O")]
                .iter()
                .map(|(n, a, b)| (s(n), s(a), s(b)))
                .collect(),
            equations: [("d", "s", "ds"), ("d", "t", "ds"), ("c", "s", "cs"), ("c", "t", "cs")]
                .iter()
                .map(|(g, f, h)| (s(g), s(f), s(h)))
                .collect(),
        }
    }

    #[test]
    fn k2_contexts_match_the_worked_example() {
        let voc = validate_vocabulary(&k2()).unwrap();
        let fs = vocab_to_signature(&voc).unwrap();
        let sig = &fs.signature;
        assert_eq!(sig.get("O").unwrap().ctx.to_string(), "⟨⟩");
        assert_eq!(sig.get("A").unwrap().ctx.to_string(), "⟨x1:O, x2:O⟩");
        assert_eq!(sig.get("T").unwrap().ctx.to_string(), "⟨x1:O, x2:O, x3:A(x2,x1), x4:A(x2,x1)⟩");
    }

    #[test]
    fn irreducible_arrows_are_top_variables() {
        let voc = validate_vocabulary(&k2()).unwrap();
        let t = voc.object_index("T").unwrap();
        let names: Vec<_> = voc.irreducible_arrows(t).iter().map(|&a| voc.arrows()[a].name.clone()).collect();
        assert_eq!(names, ["s", "t"]);
        let a = voc.object_index("A").unwrap();
        let names: Vec<_> = voc.irreducible_arrows(a).iter().map(|&a| voc.arrows()[a].name.clone()).collect();
        assert_eq!(names, ["c", "d"]);
    }

    #[test]
    fn one_way_and_skeletal_violations() {
        let s = |x: &str| x.to_string();
        let endo = RawVocabulary {
            objects: vec![s("X")],
            arrows: vec![(s("e"), s("X"), s("X"))],
            equations: vec![(s("e"), s("e"), s("e"))],
        };
        assert_eq!(validate_vocabulary(&endo), Err(VocabError::OneWay(s("e"))));
        let iso = RawVocabulary {
            objects: vec![s("X"), s("Y")],
            arrows: vec![(s("f"), s("X"), s("Y")), (s("g"), s("Y"), s("X"))],
            equations: vec![(s("g"), s("f"), s("id_X")), (s("f"), s("g"), s("id_Y"))],
        };
        assert!(matches!(validate_vocabulary(&iso), Err(VocabError::Skeletal { .. })));
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = k2();
        raw.equations.pop();
        assert!(matches!(validate_vocabulary(&raw), Err(VocabError::Missing { .. })));
    }

    #[test]
    fn round_trip_is_isomorphic() {
        let voc = validate_vocabulary(&k2()).unwrap();
        let back = signature_to_vocab(&vocab_to_signature(&voc).unwrap().signature).unwrap();
        assert!(find_isomorphism(&voc, &back).is_some());
    }
}
