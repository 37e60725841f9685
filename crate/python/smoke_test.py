"""Smoke test for the Python bindings.

Build and install them first:

    pip install -e crates/depsorts-py --no-build-isolation

then run `python python/smoke_test.py` or `pytest python/`.
"""

from pathlib import Path

import depsorts_py as ds

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def read(name):
    return (CORPUS / name).read_text()


def test_semigroup_theory():
    th = ds.Theory(read("semigroup.th"))
    assert th.flavor == "unrestricted"
    assert th.symbols[:3] == ["A", "m", "E"]
    assert th.infer("(sigma (ax1))", "(ctx)") == "E(m(b,c),m(a,b))"
    assert th.derive("(elem (ctx (x A)) (m x x) A)") > 0
    try:
        th.derive("(elem (ctx (x A)) (m x x) (E x x))")
    except ds.CheckError:
        pass
    else:
        raise AssertionError("a mismatched type was accepted")


def test_bad_input_raises_value_error():
    try:
        ds.Theory("(vars unrestricted)\n(type A (ctx)\n")
    except ValueError as e:
        assert "2:1" in str(e)
    else:
        raise AssertionError("an unclosed form was accepted")


def test_proofs():
    th = ds.Theory(read("fixtures.th"))
    results = th.check_proofs(read("fixtures.prf"))
    assert results and all(err is None for _, err in results)
    assert all(ok for _, ok in th.convert_proofs(read("fixtures.prf")))
    negatives = dict(th.check_proofs(read("negative.prf")))
    path, message = negatives["unknown-axiom"]
    assert path == [1], message


def test_models():
    th = ds.Theory(read("fixtures.th"))
    model = read("fixtures.mdl")
    assert th.holds(model, "(seq (ctx (x A) (y A)) (S x y) (S y x))")
    assert not th.holds(model, "(seq (ctx (x A)) top (R x))")


def test_vocabulary_round_trip():
    k2 = ds.Vocabulary(read("k2.voc"))
    assert k2.objects == ["O", "A", "T"]
    assert sorted(k2.irreducible_arrows("T")) == ["s", "t"]
    sig = k2.to_theory()
    assert sig.to_vocabulary().isomorphic(k2)
    assert "(type T" in sig.signature_text()


def test_laws_and_cli():
    laws = ds.law_suite("doctrine", 1)
    assert laws and all(failures == 0 for _, failures in laws.values())
    status, out = ds.run(["check-sig", str(CORPUS / "cat.th")])
    assert status == 0, out


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name}: ok")
