from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from helpers import primitive_diagrams, spherical_diagrams
from rankone import classify, realize, rootsys
from rankone.classify import DiagramInputError, HostScopeError, PrimitiveDiagram, SphericalDiagram
from rankone.rootsys import parse_host


def _core(v):
    return v.valid, v.failed_condition, v.flags


def _show(d):
    h = d.host
    return tuple(tuple(h.names[i] for i in sorted(s)) for s in (d.sc, d.s1, d.s2)) + (d.c1, d.c2)


F4 = parse_host("F4~1")


def test_f4_half_d3_plus_c3_is_valid():
    assert classify.check_primitive(PrimitiveDiagram(F4, {1}, "1/2", {3}, "1")).valid


@pytest.mark.parametrize("s1,c1,s2,c2,tag", [
    ({2}, "i", {3}, "i", "3c-colabel"),
    ({2}, "i", {3, 4}, "1", None),
    ({0, 2}, "1", {3}, "i", "3b-pairing"),
    ({0, 2}, "1", {3, 4}, "1", "3a-weight-sum"),
])
def test_f4_gluing_candidates(s1, c1, s2, c2, tag):
    assert classify.check_primitive(PrimitiveDiagram(F4, s1, c1, s2, c2)).failed_condition == tag


def test_cover_and_recognition_failures():
    # decorations that leave an undecorated component uncovered
    v = classify.check_primitive(PrimitiveDiagram(parse_host("A1xA1"), {0}, "1"))
    assert v.failed_condition == "closure-cover"
    v = classify.check_primitive(PrimitiveDiagram(parse_host("B3"), {0}, "i"))
    assert v.failed_condition == "local-recognition"


def test_colabel_condition_is_affine_only():
    assert classify.check_primitive(PrimitiveDiagram(parse_host("B2"), {0}, "i", {1}, "i")).valid
    v = classify.check_primitive(PrimitiveDiagram(F4, {2}, "i", {3}, "i"))
    assert v.failed_condition == "3c-colabel"


def test_pure_local_flags():
    v = classify.check_primitive(PrimitiveDiagram(parse_host("A3"), {0, 2}, "1"))
    assert v.valid and "pure-local" in v.flags and "a0-degenerate" in v.flags


def test_input_errors():
    h = parse_host("A4")
    with pytest.raises(DiagramInputError):
        PrimitiveDiagram(h, {0, 1}, "1", {1}, "1")
    with pytest.raises(DiagramInputError):
        PrimitiveDiagram(h, {0, 1, 2}, "1")
    with pytest.raises(DiagramInputError):
        PrimitiveDiagram(h, {7}, "1")
    with pytest.raises(DiagramInputError):
        PrimitiveDiagram(h, {0}, "3")
    with pytest.raises(DiagramInputError):
        SphericalDiagram(h, {0}, {0}, "1")


def test_scope_errors():
    with pytest.raises(HostScopeError):
        classify.check_primitive(PrimitiveDiagram(parse_host("A1~1xA2"), {0}, "1"))
    with pytest.raises(HostScopeError):
        classify.check_spherical(SphericalDiagram(parse_host("A1~1xA1~1"), {0}, {1}, "i"))


@pytest.mark.parametrize("tag,count", [("A1~1", 3), ("A2~2", 2), ("A2~1", 2), ("C2~1", 5), ("C3~1", 4),
                                       ("F4~1", 3), ("A3~1", 7), ("D4~2", 9), ("A1~1xA1~1", 2),
                                       ("A2~2xA2~2", 1)])
def test_primitive_counts(tag, count):
    assert len(classify.enumerate_primitive(parse_host(tag))) == count


def test_a11_primitive_list():
    got = {_show(d) for d in classify.enumerate_primitive(parse_host("A1~1"))}
    assert got == {((), ("0",), ("1",), c, c) for c in ("1", "2", "i")}


def test_spherical_counts():
    assert len(classify.enumerate_spherical(parse_host("A1~1"))) == 7
    assert len(classify.enumerate_spherical(parse_host("A2~1"))) == 11


def test_d7_circled_example():
    d = SphericalDiagram(parse_host("D7"), {2}, {0}, "1")
    sub, core, emb = classify.reduce_to_primitive(d)
    assert emb == (0, 1) and sub.tag == "A2"


def test_enumeration_is_canonical_and_independent_of_jobs():
    h = parse_host("B4~1")
    serial = classify.enumerate_primitive(h)
    assert serial == classify.enumerate_primitive(h, jobs=3)
    keys = [classify.diagram_key(d) for d in serial]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for d in serial:
        assert classify.canonicalize(d) == d and classify.check_primitive(d).valid
    sph = classify.enumerate_spherical(parse_host("A3~1"))
    assert sph == classify.enumerate_spherical(parse_host("A3~1"), jobs=2)


@given(primitive_diagrams())
def test_primitive_equivariance(d):
    v = _core(classify.check_primitive(d))
    for perm in rootsys.automorphisms(d.host):
        assert _core(classify.check_primitive(d.permuted(perm))) == v


@given(primitive_diagrams())
def test_primitive_swap_symmetry(d):
    assert _core(classify.check_primitive(d)) == _core(classify.check_primitive(d.swapped()))


@given(primitive_diagrams())
def test_canonical_form_is_orbit_invariant(d):
    c = classify.canonicalize(d)
    assert classify.canonicalize(c) == c
    assert classify.canonicalize(d.swapped()) == c
    for perm in rootsys.automorphisms(d.host)[:6]:
        assert classify.canonicalize(d.permuted(perm)) == c


@given(spherical_diagrams())
def test_spherical_equivariance_and_swap(d):
    v = _core(classify.check_spherical(d))
    assert _core(classify.check_spherical(d.swapped())) == v
    for perm in rootsys.automorphisms(d.host):
        assert _core(classify.check_spherical(d.permuted(perm))) == v


@given(primitive_diagrams(tuple(rootsys.affine_irreducible_tags(5))))
def test_colabel_weighted_pairings_vanish(d):
    if classify.check_primitive(d).valid:
        k = rootsys.colabels(d.host)
        w = realize.reconstruct_weight(d)
        assert sum(a * b for a, b in zip(k, w.coeffs)) == 0


@given(primitive_diagrams())
def test_decorations_are_exactly_the_nonzero_pairings(d):
    if classify.check_primitive(d).valid:
        w = realize.reconstruct_weight(d)
        assert w.support() == d.s1 | d.s2
        assert all(w[i] > 0 for i in d.s1) and all(w[i] < 0 for i in d.s2)


_SIDE_CONDITIONS = {"integrality", "divisibility", "degenerate", "local-recognition"}


@settings(max_examples=150)
@given(spherical_diagrams())
def test_reduction_consistency(d):
    v = classify.check_spherical(d)
    if not d.sc:
        assert _core(v) == _core(classify.check_primitive(PrimitiveDiagram(d.host, d.s1, d.c1, d.s2, d.c2)))
        return
    if not d.s1 and not d.s2:
        assert v.valid or v.failed_condition in _SIDE_CONDITIONS
        return
    _, core, _ = classify.reduce_to_primitive(d)
    cv = classify.check_primitive(core)
    if v.valid:
        assert cv.valid
    elif cv.valid:
        assert v.failed_condition in _SIDE_CONDITIONS - {"local-recognition"}
    else:
        assert v.failed_condition == cv.failed_condition


def test_a11_and_a22_primitive_weights():
    ds = classify.enumerate_primitive(parse_host("A1~1")) + classify.enumerate_primitive(parse_host("A2~2"))
    grads = [abs(realize.gradient_coordinates(realize.reconstruct_weight(d).coeffs, d.host)[0]) for d in ds]
    assert sorted(grads) == sorted([F(1, 2), F(1), F(2), F(1, 2), F(1)])
