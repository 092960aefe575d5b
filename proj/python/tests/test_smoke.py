import math

import pytest

import moment_lst as ml


def test_reduce_reducible_example():
    report = ml.reduce("leb", "leb+delta(1)", "lst(z^2-1; z^2-1; (z+1)^2)")
    assert report["classification"] == "from_rm"
    assert report["minimal"]["text"] == "lst(-1 + z; -1 + z; 1 + z)"


def test_classify_wild_and_expect_mismatch():
    args = dict(u="rational((1+z)^2;1)", v="delta(1)", lst="lst(1; 1-z^2; 0)")
    assert ml.classify(**args)["classification"] == "wild"
    code, _ = ml.run("classify", expect="from_rm", **args)
    assert code == 1


def test_arc_moments():
    got = ml.moments("arc", n=5)
    want = [1, -2 / math.pi, 0, 2 / (3 * math.pi), 0, -2 / (5 * math.pi)]
    assert got == pytest.approx(want, abs=1e-15)


def test_decompose_recompose_round_trip():
    steps = ml.decompose("rational((1+z)^2; 1)", "delta(1)", "lst(1; 1-z^2; 0)")["steps"]
    assert [s["kind"] for s in steps] == ["c01", "c01"]
    assert ml.recompose(steps)["verification"]["holds"]


def test_parse_error_carries_code_and_position():
    with pytest.raises(ml.MomentLstError) as info:
        ml.verify_rm("leb", "delta(", "1", "1")
    assert info.value.code == "parse_error"
    assert info.value.details["column"] == 7


def test_normalize_is_stable():
    text = ml.normalize("2*leb + delta(1)")
    assert ml.normalize(text) == text
    with pytest.raises(ValueError):
        ml.normalize("(z + 1")


def test_verbs():
    assert "decompose" in ml.verbs()
