import dataclasses
from fractions import Fraction as F

import pytest

from rankone import localmodels as lm
from rankone import rootsys

# common pairing value on the decorated nodes, by family
ND = {"a1": 2, "2a1": 4, "a": 1, "b": 1, "2b": 2, "c": 1, "d": 2, "d2": 2, "d3": 2, "1/2d": 1, "1/2d2": 1,
      "1/2d3": 1, "f4": 1, "g2": 1, "2g2": 2, "b3'": 2, "1/2b3'": 1, "ba": 1, "bc": 1}


def test_catalog_is_consistent():
    assert lm.self_test() == []


@pytest.mark.parametrize("e", [e for e in lm.catalog(12) if e.family != "ba0"], ids=lambda e: e.label)
def test_nd_row(e):
    assert e.nd == ND[e.family]
    p = e.pairings()
    assert {p[i] for i in e.decorated} == {F(e.nd)}


def test_fault_injection_names_the_entry():
    d6 = lm.entry("d", 6)
    broken = dataclasses.replace(d6, omega=(F(1),) + d6.omega[1:])
    problems = lm.self_test([lm.entry("a", 3), broken])
    assert problems and all(p.startswith("d6:") for p in problems)


def test_wrong_nd_is_reported():
    bad = dataclasses.replace(lm.entry("b", 4), nd=2)
    assert any("nD" in p and p.startswith("b4") for p in lm.verify_entry(bad))


@pytest.mark.parametrize("family,rank,decorated", [
    ("a", 4, {0, 3}), ("b", 3, {0}), ("c", 4, {1}), ("d", 5, {0}), ("d3", 3, {1}), ("f4", 4, {3}),
    ("g2", 2, {0}), ("b3'", 3, {2}), ("ba", 3, {0}), ("bc", 2, {0}), ("d2", 2, {0, 1}),
])
def test_decorated_sets(family, rank, decorated):
    e = lm.entry(family, rank)
    assert e.decorated == frozenset(decorated)
    if e.homogeneous:
        assert lm.derived_decorated(e) == e.decorated


def test_factors_and_homogeneity():
    assert lm.FACTORS == ("1/2", "1", "2", "i")
    assert lm.normalize_factor("½") == "1/2"
    assert not lm.entry("ba", 2).homogeneous and lm.entry("b", 2).homogeneous
    assert lm.entry("2b", 3).factor == "2" and lm.entry("1/2d", 4).factor == "1/2"
    with pytest.raises(ValueError):
        lm.normalize_factor("3")


def test_illegal_ranks():
    with pytest.raises(ValueError):
        lm.entry("c", 2)
    with pytest.raises(ValueError):
        lm.entry("d", 3)


def test_recognition_on_f4_affine():
    f = rootsys.parse_host("F4~1")
    m = lm.recognize(f, {0, 1, 2}, {1}, "1/2")
    assert m.entry.label == "1/2d3" and m.decorated_nodes == {1}
    m = lm.recognize(f, {2, 3, 4}, {3}, "1")
    assert m.entry.label == "c3"
    assert lm.recognize(f, {2, 3, 4}, {3}, "2") is None
    assert lm.recognize(f, {2, 3, 4}, {2}, "1") is None


def test_recognition_of_two_component_d2():
    h = rootsys.parse_host("A3")
    m = lm.recognize(h, {0, 2}, {0, 2}, "1")
    assert m.entry.label == "d2"


def test_weight_pushforward():
    h = rootsys.parse_host("F4~1")
    m = lm.recognize(h, {2, 3, 4}, {3}, "1")
    w = lm.push_omega(m.entry, m.embedding, h)
    assert w[0] == w[1] == 0
    p = rootsys.pairing_vector(w, h)
    assert p[3] == 1 and p[2] == p[4] == 0
