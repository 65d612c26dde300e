from fractions import Fraction
from pathlib import Path

import pytest

import fogus

DATA = Path(__file__).resolve().parents[2] / "data"


def test_twist_and_hom():
    q, q1 = fogus.tate(0), fogus.tate(1)
    assert fogus.twist(q, 1) == q1
    assert fogus.hom(fogus.twist(q, 1), q1) == [[[Fraction(1)]]]
    assert fogus.hom(q, q1) == []
    assert q1.weights == {-2: [[Fraction(1)]]}


def test_bundled_objects():
    w1 = fogus.Object.load(str(DATA / "weight1_p5.json"))
    assert w1.fog_prime
    assert w1.frobenius(5) == [[2, -5], [1, 0]]
    entries = fogus.check_purity(w1)
    assert {"index": 1, "p": 5, "verdict": "pure"} in entries
    uni = fogus.Object.load(str(DATA / "unipotent.json"))
    assert len(fogus.hom(uni, uni)) == 2
    assert fogus.Object.from_json(uni.to_json()) == uni


def test_purity():
    assert fogus.is_pure([5, -2, 1], 5, 1) == "pure"
    assert fogus.is_pure([2, -3, 1], 2, 0) == "impure"
    assert fogus.is_pure(["-1/4", 1], 2, -4) == "pure"
    with pytest.raises(fogus.FogusError):
        fogus.is_pure([1, 2], 2, 0)


def test_ext1_for_q_q1():
    q, q1 = fogus.tate(0), fogus.tate(1)
    deltas = [fogus.delta(q, q1, p, [[1]]) for p in (2, 3, 5, 7)]
    assert fogus.ext1_rank(q, q1, deltas) == 4
    glob = fogus.Cocycle(q, q1, [[3]])
    assert fogus.is_coboundary(glob) == [[Fraction(3)]]
    assert glob.at(5) == [[Fraction(12, 5)]]
    assert fogus.ext1_rank(q, q1, deltas[:1], probe=[2]) == 0


def test_extension_round_trip():
    q, q1 = fogus.tate(0), fogus.tate(1)
    x = fogus.Cocycle(q, q1, [[0]], {2: [[1]], 3: [["1/2"]]})
    e = fogus.build_extension(x)
    assert e.is_exact()
    assert fogus.is_coboundary(fogus.extract_class(e) - x) is not None
    s = fogus.baer_sum(e, e)
    assert fogus.is_coboundary(fogus.extract_class(s) - 2 * x) is not None
    assert fogus.Extension.from_json(e.to_json()).incl == e.incl


def test_errors():
    with pytest.raises(fogus.ParseError):
        fogus.Object.from_json('{"dim": 1, "tail": [0, 1]}')
    with pytest.raises(fogus.WeightViolation):
        fogus.Cocycle(fogus.tate(1), fogus.tate(0), [[1]])
    with pytest.raises(fogus.FogusError):
        fogus.delta(fogus.tate(0), fogus.tate(1), 4, [[1]])


def test_complexes():
    q, q1 = fogus.tate(0), fogus.tate(1)
    m, n = fogus.Complex.concentrated(q), fogus.Complex.concentrated(q1)
    assert fogus.ext_rank(m, n, 1, [2, 3]) == 1
    assert fogus.ext_rank(m, n.shift(1), 0, [2, 3]) == 1
    r = fogus.kill_cocycle(m, n, (DATA / "b_q_q1.json").read_text())
    assert r["quasi_iso"] and r["exact"] and r["identity_hits_b"] and r["b_killed"]
    assert fogus.Complex.from_json(r["complex"].to_json()) == r["complex"]


def test_verify():
    assert "lemma" in fogus.suite_names()
    r = fogus.verify("example-q-q1")
    assert r["passed"]
    assert r["facts"]["delta rank"] == "4"
    assert fogus.verify("lemma", seed=3, trials=2)["passed"]
    with pytest.raises(ValueError):
        fogus.verify("nosuch")
