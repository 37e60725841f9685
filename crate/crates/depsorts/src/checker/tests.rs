use super::*;
use crate::signature::Decl;
use crate::syntax::Flavor;

fn v(name: &str) -> Term {
    Term::var(name)
}

fn ty(head: &str, args: Vec<Term>) -> Type {
    Type::new(head, args)
}

fn a() -> Type {
    ty("A", vec![])
}

fn e(x: Term, y: Term) -> Type {
    ty("E", vec![x, y])
}

fn ctx(entries: &[(&str, Type)]) -> Context {
    Context::from_entries(entries.iter().map(|(x, t)| (Var::new(x), t.clone())).collect())
}

/// The binary-operation-with-congruence signature plus constants a, b, c.
fn semigroup() -> Signature {
    let xy = ctx(&[("x", a()), ("y", a())]);
    let decls = vec![
        Decl::type_decl("A", Context::empty(), vec![]),
        Decl::fun_decl("m", xy.clone(), vec![1, 2], a()),
        Decl::type_decl("E", xy.clone(), vec![1, 2]),
        Decl::fun_decl("rho", ctx(&[("x", a())]), vec![1], e(v("x"), v("x"))),
        Decl::fun_decl("sigma", xy.extend(Var::new("p"), e(v("x"), v("y"))), vec![3], e(v("y"), v("x"))),
        Decl::fun_decl(
            "tau",
            ctx(&[("x", a()), ("y", a()), ("z", a()), ("p", e(v("x"), v("y"))), ("q", e(v("y"), v("z")))]),
            vec![4, 5],
            e(v("x"), v("z")),
        ),
        Decl::fun_decl("a", Context::empty(), vec![], a()),
        Decl::fun_decl("b", Context::empty(), vec![], a()),
        Decl::fun_decl("c", Context::empty(), vec![], a()),
    ];
    Signature::replay(Flavor::Unrestricted, decls).expect("semigroup signature replays")
}

/// U type, T(x) type (x:U), a:U, b(y):U (y:T(a)).
fn universe() -> Signature {
    let u = ty("U", vec![]);
    let decls = vec![
        Decl::type_decl("U", Context::empty(), vec![]),
        Decl::type_decl("T", ctx(&[("x", u.clone())]), vec![1]),
        Decl::fun_decl("a", Context::empty(), vec![], u.clone()),
        Decl::fun_decl("b", ctx(&[("y", ty("T", vec![Term::constant("a")]))]), vec![1], u),
    ];
    Signature::replay(Flavor::Unrestricted, decls).unwrap()
}

#[test]
fn empty_context_is_r1_of_height_zero() {
    let sig = Signature::empty(Flavor::Unrestricted);
    let d = check_context(&sig, &Context::empty()).unwrap();
    assert_eq!(d.rule, Rule::R1);
    assert_eq!(d.height, 0);
}

#[test]
fn undeclared_type_symbol_is_rejected() {
    let sig = Signature::empty(Flavor::Unrestricted);
    let err = check_type(&sig, &Context::empty(), &ty("S", vec![])).unwrap_err();
    assert!(matches!(err.kind, CheckErrorKind::Undeclared { .. }));
    assert_eq!(err.rule, Rule::R4);
}

#[test]
fn congruence_context_checks() {
    let sig = semigroup();
    let g = ctx(&[("x", a()), ("y", a()), ("p", e(v("x"), v("y")))]);
    let d = check_context(&sig, &g).unwrap();
    assert_eq!(d.rule, Rule::R2);
    verify_derivation(&sig, &d, Mode::Standard).unwrap();
}

#[test]
fn repeated_variable_is_not_fresh() {
    let sig = semigroup();
    let err = check_context(&sig, &ctx(&[("x", a()), ("x", a())])).unwrap_err();
    assert!(matches!(err.kind, CheckErrorKind::NotFresh { .. }));
    assert_eq!(err.path, vec!["declaration 2 (x)".to_string()]);
}

#[test]
fn universe_remark_type_checks() {
    let sig = universe();
    let g = ctx(&[("y", ty("T", vec![Term::constant("a")]))]);
    let target = ty("T", vec![Term::app("b", vec![v("y")])]);
    let d = check_type(&sig, &g, &target).unwrap();
    verify_derivation(&sig, &d, Mode::Standard).unwrap();
}

#[test]
fn arity_is_enforced() {
    let sig = semigroup();
    let err = check_type(&sig, &ctx(&[("x", a())]), &ty("E", vec![v("x")])).unwrap_err();
    assert!(matches!(err.kind, CheckErrorKind::Arity { expected: 2, found: 1, .. }));
}

#[test]
fn inference_on_variables_and_applications() {
    let sig = semigroup();
    let (t, d) = infer_type(&sig, &ctx(&[("x", a())]), &v("x")).unwrap();
    assert_eq!((t, d.rule), (a(), Rule::R3));
    let mab = Term::app("m", vec![Term::constant("a"), Term::constant("b")]);
    let (t, d) = infer_type(&sig, &Context::empty(), &mab).unwrap();
    assert_eq!((t, d.rule), (a(), Rule::R5));
}

#[test]
fn hidden_arguments_are_reconstructed() {
    let sig = semigroup();
    let g = ctx(&[("u", a()), ("v", a()), ("q", e(v("u"), v("v")))]);
    let (t, d) = infer_type(&sig, &g, &Term::app("sigma", vec![v("q")])).unwrap();
    assert_eq!(t, e(v("v"), v("u")));
    assert_eq!(d.full_args().unwrap(), vec![v("u"), v("v"), v("q")]);
}

#[test]
fn inconsistent_hidden_arguments_conflict() {
    let sig = semigroup();
    let g = ctx(&[("x", a()), ("y", a()), ("z", a()), ("p", e(v("x"), v("y"))), ("q", e(v("z"), v("z")))]);
    let err = infer_type(&sig, &g, &Term::app("tau", vec![v("p"), v("q")])).unwrap_err();
    assert!(matches!(err.kind, CheckErrorKind::MatchConflict { position: 4, .. }), "{err}");
}

#[test]
fn type_checking_reports_both_types() {
    let sig = semigroup();
    let g = ctx(&[("x", a())]);
    check_term(&sig, &g, &v("x"), &a()).unwrap();
    let err = check_term(&sig, &g, &v("x"), &ty("B", vec![])).unwrap_err();
    assert!(matches!(err.kind, CheckErrorKind::Mismatch { .. }));
}

#[test]
fn context_maps() {
    let sig = semigroup();
    let xy = ctx(&[("x", a()), ("y", a())]);
    check_ctx_map(&sig, &ContextMap::identity(&xy)).unwrap();
    let ab = ContextMap::new(Context::empty(), xy.clone(), vec![Term::constant("a"), Term::constant("b")]);
    check_ctx_map(&sig, &ab).unwrap();
    let short = ContextMap::new(Context::empty(), xy, vec![Term::constant("a")]);
    let err = check_ctx_map(&sig, &short).unwrap_err();
    assert!(matches!(err.kind, CheckErrorKind::MapLength { expected: 2, found: 1 }));
}

#[test]
fn substitution_into_a_type_derivation() {
    let sig = semigroup();
    let xy = ctx(&[("x", a()), ("y", a())]);
    let d = check_type(&sig, &xy, &e(v("x"), v("y"))).unwrap();
    let ab = check_ctx_map(&sig, &ContextMap::new(Context::empty(), xy.clone(), vec![Term::constant("a"), Term::constant("b")]))
        .unwrap();
    let out = apply_substitution(&d, &ab).unwrap();
    assert_eq!(out.conclusion, Judgement::Type(Context::empty(), e(Term::constant("a"), Term::constant("b"))));
    verify_derivation(&sig, &out, Mode::Standard).unwrap();
    assert!(out.height <= d.height + ab.max_component_height());
    let id = check_ctx_map(&sig, &ContextMap::identity(&xy)).unwrap();
    assert_eq!(apply_substitution(&d, &id).unwrap().conclusion, d.conclusion);
}

#[test]
fn weaken_then_strengthen_round_trips() {
    let sig = semigroup();
    let j = Judgement::Type(ctx(&[("x", a())]), a());
    let (w, _) = weaken(&sig, &j, 1, Var::new("y"), a()).unwrap();
    assert_eq!(w, Judgement::Type(ctx(&[("x", a()), ("y", a())]), a()));
    let (s, _) = strengthen(&sig, &w, 1).unwrap();
    assert_eq!(s, j);
}

#[test]
fn interchange_respects_dependency() {
    let sig = semigroup();
    let j = Judgement::Context(ctx(&[("x", a()), ("p", e(v("x"), v("x")))]));
    assert!(matches!(interchange(&sig, &j, 0), Err(StructuralError::SideCondition(_))));
    let k = Judgement::Type(ctx(&[("x", a()), ("y", a())]), e(v("x"), v("y")));
    let (swapped, _) = interchange(&sig, &k, 0).unwrap();
    assert_eq!(swapped.context(), &ctx(&[("y", a()), ("x", a())]));
}

#[test]
fn standardize_to_positional_variables() {
    let sig = semigroup();
    let j = Judgement::Type(ctx(&[("u", a()), ("w", a())]), e(v("u"), v("w")));
    let out = standardize(&sig, &j, &FreshSequence::positional(2)).unwrap();
    assert_eq!(out.judgement, Judgement::Type(ctx(&[("1", a()), ("2", a())]), e(v("1"), v("2"))));
    assert_eq!(out.from_standard.map.terms, vec![v("1"), v("2")]);
    assert_eq!(out.to_standard.map.terms, vec![v("u"), v("w")]);
    let back = out.to_standard.map.compose(&out.from_standard.map);
    assert_eq!(back, ContextMap::identity(out.judgement.context()));
}

#[test]
fn star_mode_accepts_what_standard_mode_accepts() {
    let sig = semigroup();
    let g = ctx(&[("u", a()), ("v", a()), ("q", e(v("u"), v("v")))]);
    let j = Judgement::Elem(g, Term::app("sigma", vec![v("q")]), e(v("v"), v("u")));
    let std = check_judgement(&sig, &j, Mode::Standard).unwrap();
    let star = check_mode_r5star(&sig, &j).unwrap();
    assert!(star.height <= std.height);
    verify_derivation(&sig, &star, Mode::Star).unwrap();
    assert!(verify_derivation(&sig, &star, Mode::Standard).is_err());
}

#[test]
fn fuel_exhaustion_is_undecided() {
    let sig = semigroup();
    let t = Term::app("m", vec![Term::constant("a"), Term::app("m", vec![Term::constant("b"), Term::constant("c")])]);
    let err = Checker::new(&sig).with_fuel(2).infer(&Context::empty(), &t).unwrap_err();
    assert_eq!(err.kind, CheckErrorKind::Undecided);
}

#[test]
fn rechecking_gives_identical_derivations() {
    let sig = semigroup();
    let g = ctx(&[("x", a()), ("y", a()), ("p", e(v("x"), v("y")))]);
    let t = Term::app("sigma", vec![v("p")]);
    assert_eq!(infer_type(&sig, &g, &t).unwrap(), infer_type(&sig, &g, &t).unwrap());
}
