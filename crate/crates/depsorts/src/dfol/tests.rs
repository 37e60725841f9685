use super::*;
use crate::signature::Decl;
use crate::syntax::Flavor;

fn v(name: &str) -> Term {
    Term::var(name)
}

fn x(name: &str) -> Var {
    Var::new(name)
}

fn a() -> Type {
    Type::new("A", vec![])
}

fn ctx(entries: &[(&str, Type)]) -> Context {
    Context::from_entries(entries.iter().map(|(n, t)| (Var::new(n), t.clone())).collect())
}

fn r(t: Term) -> Formula {
    Formula::atom("R", vec![t])
}

fn s(t: Term, u: Term) -> Formula {
    Formula::atom("S", vec![t, u])
}

/// A type, B(x) type, R unary and S binary predicates on A, c:A, f:A→A.
fn sig() -> Signature {
    let decls = vec![
        Decl::type_decl("A", Context::empty(), vec![]),
        Decl::type_decl("B", ctx(&[("x", a())]), vec![1]),
        Decl::pred_decl("R", ctx(&[("x", a())]), vec![1]),
        Decl::pred_decl("S", ctx(&[("x", a()), ("y", a())]), vec![1, 2]),
        Decl::fun_decl("c", Context::empty(), vec![], a()),
        Decl::fun_decl("f", ctx(&[("x", a())]), vec![1], a()),
    ];
    Signature::replay(Flavor::Unrestricted, decls).unwrap()
}

fn theory() -> Theory {
    let axioms = vec![
        (Symbol::from("sym"), Sequent::new(ctx(&[("x", a()), ("y", a())]), s(v("x"), v("y")), s(v("y"), v("x")))),
        (Symbol::from("rc"), Sequent::new(Context::empty(), Formula::Top, r(Term::constant("c")))),
    ];
    Theory::new(sig(), axioms).unwrap()
}

fn vs() -> VariableSystem {
    sig().var_system()
}

fn seq(c: Context, l: Formula, rr: Formula) -> Sequent {
    Sequent::new(c, l, rr)
}

/// `⊤ ⟹ (∀a:A)(R(a) → R(a))` by univ-i, imp-i and conj-l2.
fn sample() -> ProofTree {
    let bound = Context::empty().fresh(&vs());
    let inner = ctx(&[(bound.name(), a())]);
    let ra = r(Term::Var(bound.clone()));
    let conj = ProofTree::leaf(RuleTag::ConjL2, seq(inner.clone(), Formula::and(Formula::Top, ra.clone()), ra.clone()));
    let imp = ProofTree::new(RuleTag::ImpI, seq(inner, Formula::Top, Formula::imp(ra.clone(), ra.clone())), vec![conj]);
    let goal = Formula::forall(bound, a(), Formula::imp(ra.clone(), ra));
    ProofTree::new(RuleTag::UnivI, seq(Context::empty(), Formula::Top, goal), vec![imp])
}

#[test]
fn formula_formation_and_free_variables() {
    let g = ctx(&[("x", a())]);
    let phi = Formula::forall(x("y"), a(), s(v("x"), v("y")));
    check_formula(&sig(), &g, &phi).unwrap();
    assert_eq!(phi.free_vars(), [x("x")].into_iter().collect());
    assert!(check_formula(&sig(), &Context::empty(), &phi).is_err());
    let dep = Formula::forall(x("y"), Type::new("B", vec![v("x")]), Formula::Top);
    assert_eq!(dep.free_vars(), [x("x")].into_iter().collect());
}

#[test]
fn reusing_a_context_variable_as_binder_is_ill_formed() {
    let g = ctx(&[("x", a())]);
    let phi = Formula::forall(x("x"), a(), r(v("x")));
    assert!(check_formula(&sig(), &g, &phi).is_err());
    check_formula(&sig(), &g, &phi.freshen(&g, &vs())).unwrap();
}

#[test]
fn alpha_equivalence_ignores_bound_names_only() {
    let p = Formula::forall(x("y"), a(), s(v("x"), v("y")));
    let q = Formula::forall(x("z"), a(), s(v("x"), v("z")));
    let other = Formula::forall(x("z"), a(), s(v("w"), v("z")));
    assert!(p.alpha_eq(&q));
    assert!(!p.alpha_eq(&other));
    let swapped = Formula::forall(x("y"), a(), Formula::exists(x("z"), a(), s(v("y"), v("z"))));
    let crossed = Formula::forall(x("z"), a(), Formula::exists(x("y"), a(), s(v("z"), v("y"))));
    let wrong = Formula::forall(x("z"), a(), Formula::exists(x("y"), a(), s(v("y"), v("z"))));
    assert!(swapped.alpha_eq(&crossed));
    assert!(!swapped.alpha_eq(&wrong));
}

#[test]
fn syntactic_substitution_avoids_capture() {
    let phi = Formula::forall(x("y"), a(), s(v("x"), v("y")));
    let mut sub = Subst::default();
    sub.insert(x("x"), v("y"));
    let out = phi.subst(&sub, &vs());
    let Formula::Forall(b, _, body) = &out else { panic!("not a quantifier") };
    assert_ne!(b, &x("y"));
    assert_eq!(**body, s(v("y"), Term::Var(b.clone())));
}

#[test]
fn map_instance_rebinds_to_fresh_source_variable() {
    let target = ctx(&[("x", a())]);
    let source = ctx(&[("y", a())]);
    let map = ContextMap::new(source.clone(), target, vec![Term::app("f", vec![v("y")])]);
    let phi = Formula::forall(x("z"), a(), s(v("x"), v("z")));
    let out = phi.subst_map(&map, &vs());
    let bound = source.fresh(&vs());
    assert_eq!(out, Formula::forall(bound.clone(), a(), s(Term::app("f", vec![v("y")]), Term::Var(bound))));
    check_formula(&sig(), &source, &out).unwrap();
}

#[test]
fn map_instance_agrees_with_syntactic_substitution_up_to_alpha() {
    let target = ctx(&[("x", a()), ("y", a())]);
    let source = ctx(&[("u", a())]);
    let map = ContextMap::new(source, target, vec![v("u"), Term::app("f", vec![v("u")])]);
    let phi = Formula::and(
        Formula::exists(x("z"), Type::new("B", vec![v("x")]), s(v("y"), v("x"))),
        Formula::forall(x("u"), a(), s(v("u"), v("x"))),
    );
    let a1 = phi.subst_map(&map, &vs());
    let a2 = phi.subst(&map.subst(), &vs());
    assert!(a1.alpha_eq(&a2));
}

#[test]
fn standardizing_a_formula_renames_context_and_binders() {
    let g = ctx(&[("u", a())]);
    let phi = Formula::forall(x("w"), a(), s(v("u"), v("w")));
    let seq = FreshSequence::positional(2);
    let (std_ctx, out) = standardize_formula(&g, &phi, &seq, &vs()).unwrap();
    assert_eq!(std_ctx, Context::from_entries(vec![(Var::index(1), a())]));
    assert_eq!(out, Formula::forall(Var::index(2), a(), s(Term::Var(Var::index(1)), Term::Var(Var::index(2)))));
    assert!(standardize_formula(&g, &phi, &FreshSequence::positional(1), &vs()).is_none());
}

#[test]
fn sample_proof_is_accepted_in_both_modes() {
    let th = theory();
    check_proof(&th, &sample(), ProofMode::Dfol).unwrap();
    let star = to_star(&sample(), &vs());
    check_proof(&th, &star, ProofMode::DfolStar).unwrap();
}

#[test]
fn substitution_along_a_map_uses_the_capture_avoiding_instance() {
    let th = theory();
    let g = ctx(&[("x", a()), ("y", a())]);
    let premise = ProofTree::leaf(RuleTag::Axiom("sym".into()), seq(g, s(v("x"), v("y")), s(v("y"), v("x"))));
    let d = ctx(&[("u", a())]);
    let terms = vec![Term::constant("c"), Term::app("f", vec![v("u")])];
    let conclusion =
        seq(d, s(Term::constant("c"), Term::app("f", vec![v("u")])), s(Term::app("f", vec![v("u")]), Term::constant("c")));
    let tree = ProofTree::new(RuleTag::Subs(terms), conclusion, vec![premise]);
    check_proof(&th, &tree, ProofMode::Dfol).unwrap();
    check_proof(&th, &to_star(&tree, &vs()), ProofMode::DfolStar).unwrap();
}

#[test]
fn starred_quantifier_rules_take_unlifted_side_formulas() {
    // ∃-elimination with a side formula that mentions a bound name equal to
    // the opened variable: strict mode needs the lifted copy.
    let th = theory();
    let g = Context::empty();
    let b = g.fresh(&vs());
    let inner = ctx(&[(b.name(), a())]);
    let side = Formula::forall(b.clone(), a(), r(Term::Var(b.clone())));
    let lifted = side.subst_map(&ContextMap::projection(&inner), &vs());
    assert_ne!(lifted, side);
    let bot = Formula::Bot;
    let leaf = |rhs: Formula| ProofTree::leaf(RuleTag::BotE, seq(inner.clone(), bot.clone(), rhs));
    let exists_bot = Formula::exists(b.clone(), a(), bot.clone());
    let strict = ProofTree::new(RuleTag::ExisE, seq(g.clone(), exists_bot.clone(), side.clone()), vec![leaf(lifted)]);
    check_proof(&th, &strict, ProofMode::Dfol).unwrap();
    let star = ProofTree::new(RuleTag::ExisE, seq(g, exists_bot, side.clone()), vec![leaf(side)]);
    check_proof(&th, &star, ProofMode::DfolStar).unwrap();
    assert_eq!(check_proof(&th, &star, ProofMode::Dfol).unwrap_err().path, vec![0]);
}

/// Each fixture is a proof together with the path of the node that must
/// be blamed for its rejection in strict mode.
pub(crate) fn negative_fixtures() -> Vec<(&'static str, ProofTree, Vec<usize>)> {
    let g = ctx(&[("x", a()), ("y", a())]);
    let sym = || ProofTree::leaf(RuleTag::Axiom("sym".into()), seq(g.clone(), s(v("x"), v("y")), s(v("y"), v("x"))));
    let mut out = Vec::new();

    // Substituting y for x under (∀y) must rename the binder.
    let phi = Formula::forall(x("z"), a(), s(v("x"), v("z")));
    let captured = Formula::forall(x("y"), a(), s(v("y"), v("y")));
    let one = ctx(&[("x", a())]);
    let two = ctx(&[("y", a())]);
    let refl = ProofTree::leaf(RuleTag::Ref, seq(one, phi.clone(), phi));
    out.push(("capture", ProofTree::new(RuleTag::Subs(vec![v("y")]), seq(two, captured.clone(), captured), vec![refl]), vec![]));

    let bad_ref = ProofTree::leaf(RuleTag::Ref, seq(Context::empty(), r(v("x")), r(v("x"))));
    out.push(("wrong context", bad_ref, vec![]));

    let wrong_instance = ProofTree::new(
        RuleTag::Subs(vec![Term::constant("c"), Term::constant("c")]),
        seq(
            Context::empty(),
            s(Term::constant("c"), Term::constant("c")),
            s(Term::app("f", vec![Term::constant("c")]), Term::constant("c")),
        ),
        vec![sym()],
    );
    out.push(("wrong substitution instance", wrong_instance, vec![]));

    let unknown = ProofTree::leaf(RuleTag::Axiom("trans".into()), seq(g.clone(), s(v("x"), v("y")), s(v("y"), v("x"))));
    out.push((
        "unknown axiom",
        ProofTree::new(RuleTag::Cut, seq(g.clone(), s(v("x"), v("y")), s(v("x"), v("y"))), vec![sym(), unknown]),
        vec![1],
    ));

    let b = Context::empty().fresh(&vs());
    let inner = ctx(&[(b.name(), a())]);
    let rb = r(Term::Var(b.clone()));
    let shadow = Formula::exists(b.clone(), a(), rb.clone());
    let body = ProofTree::leaf(RuleTag::TopI, seq(inner.clone(), shadow.clone(), Formula::Top));
    let univ =
        ProofTree::new(RuleTag::UnivI, seq(Context::empty(), shadow, Formula::forall(b.clone(), a(), Formula::Top)), vec![body]);
    out.push(("unlifted side formula", univ, vec![0]));

    let conj = ProofTree::leaf(RuleTag::ConjL1, seq(inner.clone(), Formula::and(rb.clone(), Formula::Top), Formula::Top));
    out.push(("wrong conjunct", conj, vec![]));

    let cut = ProofTree::new(
        RuleTag::Cut,
        seq(g.clone(), s(v("x"), v("y")), s(v("x"), v("y"))),
        vec![sym(), ProofTree::leaf(RuleTag::Ref, seq(g.clone(), s(v("x"), v("y")), s(v("x"), v("y"))))],
    );
    out.push(("cut formula mismatch", cut, vec![]));

    let imp_prem = ProofTree::leaf(RuleTag::Ref, seq(inner.clone(), rb.clone(), rb.clone()));
    let imp =
        ProofTree::new(RuleTag::ImpI, seq(inner.clone(), Formula::Top, Formula::imp(rb.clone(), rb.clone())), vec![imp_prem]);
    out.push((
        "implication premise",
        ProofTree::new(
            RuleTag::UnivI,
            seq(Context::empty(), Formula::Top, Formula::forall(b.clone(), a(), Formula::imp(rb.clone(), rb.clone()))),
            vec![imp],
        ),
        vec![0],
    ));

    let exis_prem = ProofTree::leaf(RuleTag::BotE, seq(Context::empty(), Formula::Bot, Formula::Top));
    let exis = ProofTree::new(
        RuleTag::ExisE,
        seq(Context::empty(), Formula::exists(b.clone(), a(), Formula::Bot), Formula::Top),
        vec![exis_prem],
    );
    out.push(("existential premise context", exis, vec![]));

    out.push(("top introduction", ProofTree::leaf(RuleTag::TopI, seq(inner, Formula::Top, rb)), vec![]));
    out
}

#[test]
fn negative_fixtures_are_rejected_at_the_intended_node() {
    let th = theory();
    let fixtures = negative_fixtures();
    assert_eq!(fixtures.len(), 10);
    for (name, tree, path) in fixtures {
        let err = check_proof(&th, &tree, ProofMode::Dfol).expect_err(name);
        assert_eq!(err.path, path, "{name}: {err}");
    }
}
