import os
from pathlib import Path

import pytest

import tlsf

FIXTURES = Path(os.environ.get("TLSF_FIXTURE_DIR", Path(__file__).parent.parent / "fixtures"))
ARBITER = (FIXTURES / "arbiter.tlsf").read_text()


def test_elaborate_arbiter():
    spec = tlsf.elaborate(ARBITER)
    assert spec.inputs == ["r@0", "r@1"]
    assert spec.outputs == ["g@0", "g@1"]
    assert spec.semantics == "Mealy"
    assert tlsf.print_basic(spec) == (FIXTURES / "golden" / "arbiter_n2.tlsf").read_text()
    three = tlsf.elaborate(ARBITER, {"n": 3})
    assert str(three) == (FIXTURES / "golden" / "arbiter_n3.tlsf").read_text()


def test_interpret_and_transform():
    f = tlsf.interpret(tlsf.elaborate(ARBITER))
    assert str(f) == "G (!(g@0 && g@1) || !(g@1 && g@0)) && (G (r@0 -> F g@0) && G (r@1 -> F g@1))"
    nnf = f.transform("nnf")
    assert "->" not in str(nnf)
    assert f.atoms == {"r@0", "r@1", "g@0", "g@1"}
    assert "nnf" in tlsf.transforms()
    assert tlsf.parse_formula(f.to_string("classic"), "classic") == f


def test_eval_lasso():
    f = tlsf.parse_formula("G F a && (!b U b)")
    assert tlsf.eval_lasso(f, [[]], [["a", "b"], []])
    assert not tlsf.eval_lasso(f, [["b"]], [[]])
    assert tlsf.eval_lasso(tlsf.parse_formula("X a"), [], [["a"]], position=5)


def test_alternating_arbiter_machine():
    f = tlsf.interpret(tlsf.elaborate(ARBITER))
    inputs, outputs = ["r@0", "r@1"], ["g@0", "g@1"]
    assert tlsf.check_machine_mealy(
        inputs, outputs, 2, lambda q, _: 1 - q, lambda q, _: {f"g@{q}"}, f, 4) is None
    cex = tlsf.check_machine_mealy(
        inputs, outputs, 1, lambda q, _: 0,
        lambda q, i: {s.replace("r", "g") for s in i}, f, 4)
    assert cex is not None


def test_errors():
    with pytest.raises(tlsf.TlsfError) as info:
        tlsf.elaborate((FIXTURES / "errors" / "type_error.tlsf").read_text())
    assert info.value.kind == "type error"
    assert info.value.line == 11
    with pytest.raises(tlsf.TlsfError):
        tlsf.parse_formula("a &&")


def test_cli():
    code, out, err = tlsf.run_cli(["-", "-o", "formula", "-p", "n=1"], ARBITER)
    assert code == 0, err
    assert out.startswith("G true")
    code, _, err = tlsf.run_cli(["--semantics", "sideways"])
    assert code == 2 and "error" in err


def test_retarget():
    spec = tlsf.elaborate(ARBITER)
    moore = spec.convert_target("Moore")
    assert moore.semantics == "Moore"
    assert "X g@0" in str(moore.guarantees[0])
