mod common;

use std::process::Command;

use common::{corpus_path, read_corpus};
use depsorts::cli::format::{parse_model, parse_proofs, parse_theory, parse_vocab, print_model, print_proofs, print_theory};
use depsorts::cli::run;
use depsorts::folds::validate_vocabulary;

fn corpus(name: &str) -> String {
    corpus_path(name).to_str().expect("utf-8 path").to_string()
}

fn depsorts(args: &[&str]) -> (i32, String) {
    run(std::iter::once("depsorts").chain(args.iter().copied()))
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("depsorts-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_depsorts");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check-sig", &corpus("cat.th")]), Some(0));
    assert_eq!(status(&["check-proof", &corpus("fixtures.th"), &corpus("negative.prf")]), Some(1));
    assert_eq!(status(&["check-sig", "/nonexistent/theory.th"]), Some(2));
    assert_eq!(status(&["no-such-command"]), Some(2));
}

#[test]
fn every_corpus_theory_checks() {
    for name in ["semigroup.th", "cat.th", "cetcs.th", "setoid.th", "fixtures.th"] {
        let (status, out) = depsorts(&["check-sig", &corpus(name)]);
        assert_eq!(status, 0, "{name}: {out}");
    }
}

#[test]
fn semigroup_summary_is_golden() {
    let (status, out) = depsorts(&["check-sig", &corpus("semigroup.th")]);
    assert_eq!(status, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[0], "A type ⟨⟩    [height 1]");
    assert_eq!(lines[4], "sigma(p) : E(y,x) ⟨x:A, y:A, p:E(x,y)⟩    [height 10]");
    assert_eq!(lines[11], "ax1 : E(m(a,b),m(b,c)) ⟨⟩    [height 7]");
    assert_eq!(lines[12], "ok: 12 declarations, 0 axioms");
}

#[test]
fn folds2sig_on_k2_is_golden() {
    let (status, out) = depsorts(&["folds2sig", &corpus("k2.voc")]);
    assert_eq!(status, 0);
    let expected = "\
(vars unrestricted)
; O type ⟨⟩
(type O (ctx) (det))
; A type ⟨x1:O, x2:O⟩
(type A (ctx (x1 O) (x2 O)) (det 1 2))
; T type ⟨x1:O, x2:O, x3:A(x2,x1), x4:A(x2,x1)⟩
(type T (ctx (x1 O) (x2 O) (x3 (A x2 x1)) (x4 (A x2 x1))) (det 1 2 3 4))";
    assert_eq!(out, expected);
    let path = scratch("k2.th", &out);
    let (status, out) = depsorts(&["sig2folds", &path, "--compare", &corpus("k2.voc")]);
    assert_eq!(status, 0, "{out}");
}

#[test]
fn infer_reconstructs_hidden_arguments() {
    let (status, out) = depsorts(&["infer", &corpus("semigroup.th"), "--term", "(sigma (ax1))", "--ctx", "(ctx)"]);
    assert_eq!(status, 0);
    assert_eq!(out.lines().next(), Some("sigma(ax1) : E(m(b,c),m(a,b))"));
}

#[test]
fn check_reports_mismatches_with_status_one() {
    let sem = corpus("semigroup.th");
    let ok = depsorts(&["check", &sem, "--judgement", "(elem (ctx (x A)) (m x x) A)"]);
    assert_eq!(ok.0, 0, "{}", ok.1);
    let bad = depsorts(&["check", &sem, "--judgement", "(elem (ctx (x A)) (m x x) (E x x))"]);
    assert_eq!(bad.0, 1, "{}", bad.1);
}

#[test]
fn negative_proofs_point_at_their_source() {
    let (status, out) = depsorts(&["check-proof", &corpus("fixtures.th"), &corpus("negative.prf")]);
    assert_eq!(status, 1);
    let unknown = out.lines().find(|l| l.starts_with("unknown-axiom")).unwrap();
    assert!(unknown.contains("negative.prf:19:5"), "{unknown}");
    assert!(unknown.contains("at node [1]"), "{unknown}");
}

#[test]
fn positive_proofs_are_accepted_in_both_modes() {
    for mode in ["dfol", "dfolstar"] {
        let (status, out) = depsorts(&["check-proof", &corpus("fixtures.th"), &corpus("fixtures.prf"), "--mode", mode]);
        assert_eq!(status, 0, "{mode}: {out}");
    }
    let (status, out) = depsorts(&["check-proof", &corpus("cat.th"), &corpus("refl.prf")]);
    assert_eq!(status, 0, "{out}");
}

#[test]
fn eval_distinguishes_valid_and_invalid_sequents() {
    let th = corpus("fixtures.th");
    let mdl = corpus("fixtures.mdl");
    let holds = depsorts(&["eval", &th, &mdl, "--sequent", "(seq (ctx (x A) (y A)) (S x y) (S y x))"]);
    assert_eq!(holds.0, 0, "{}", holds.1);
    let fails = depsorts(&["eval", &th, &mdl, "--sequent", "(seq (ctx (x A)) top (R x))"]);
    assert_eq!(fails.0, 1, "{}", fails.1);
}

#[test]
fn load_errors_carry_positions() {
    let path = scratch("broken.th", "(vars unrestricted)\n(type A (ctx)\n");
    let (status, out) = depsorts(&["check-sig", &path]);
    assert_eq!(status, 2);
    assert!(out.contains("broken.th:2:1: unclosed '('"), "{out}");
    let path = scratch("misordered.th", "(vars unrestricted)\n(type E (ctx (x A)) (det 1))\n(type A (ctx) (det))\n");
    let (status, out) = depsorts(&["check-sig", &path]);
    assert_eq!(status, 1);
    assert!(out.contains("misordered.th:2:1"), "{out}");
}

#[test]
fn json_reports_are_deterministic() {
    let runs: [&[&str]; 4] = [
        &["--json", "check-sig", &corpus("cetcs.th")],
        &["--json", "check-proof", &corpus("fixtures.th"), &corpus("negative.prf")],
        &["--json", "folds2sig", &corpus("k2.voc")],
        &["--json", "laws", "--suite", "doctrine", "--size", "1"],
    ];
    for args in runs {
        let (s1, first) = depsorts(args);
        let (s2, second) = depsorts(args);
        assert_eq!((s1, &first), (s2, &second), "{args:?}");
        let value: serde_json::Value = serde_json::from_str(&first).expect("valid JSON");
        assert!(value.is_object());
    }
}

#[test]
fn transform_round_trips_weakening() {
    let sem = corpus("semigroup.th");
    let j = "(type (ctx (x A)) (E x x))";
    let (status, out) = depsorts(&["transform", &sem, "--judgement", j, "--at", "1", "--weaken", "--var", "y", "--type", "A"]);
    assert_eq!(status, 0, "{out}");
    assert!(out.starts_with("E(x,x) type ⟨x:A, y:A⟩"), "{out}");
    let (status, out) =
        depsorts(&["transform", &sem, "--judgement", "(type (ctx (x A) (y A)) (E x x))", "--at", "1", "--strengthen"]);
    assert_eq!(status, 0, "{out}");
    assert!(out.starts_with("E(x,x) type ⟨x:A⟩"), "{out}");
}

#[test]
fn theories_round_trip_through_the_printer() {
    for name in ["semigroup.th", "cat.th", "cetcs.th", "setoid.th", "fixtures.th"] {
        let file = parse_theory(&read_corpus(name)).unwrap();
        let printed = print_theory(&file);
        assert_eq!(parse_theory(&printed).unwrap(), file, "{name}");
        assert_eq!(print_theory(&parse_theory(&printed).unwrap()), printed, "{name}");
    }
}

#[test]
fn proofs_round_trip_through_the_printer() {
    for name in ["fixtures.prf", "negative.prf", "refl.prf"] {
        let file = parse_proofs(&read_corpus(name)).unwrap();
        let printed = print_proofs(&file);
        let again = parse_proofs(&printed).unwrap();
        let trees = |f: &depsorts::cli::format::ProofFile| f.proofs.iter().map(|p| p.value.tree.clone()).collect::<Vec<_>>();
        assert_eq!(trees(&again), trees(&file), "{name}");
    }
}

#[test]
fn models_round_trip_through_the_printer() {
    for name in ["semigroup.mdl", "fixtures.mdl"] {
        let file = parse_model(&read_corpus(name)).unwrap();
        let printed = print_model(&file);
        assert_eq!(parse_model(&printed).unwrap(), file, "{name}");
    }
}

#[test]
fn vocabularies_round_trip_through_display() {
    let raw = parse_vocab(&read_corpus("k2.voc")).unwrap();
    let voc = validate_vocabulary(&raw).unwrap();
    let again = validate_vocabulary(&parse_vocab(&voc.to_string()).unwrap()).unwrap();
    assert_eq!(again, voc);
}
