from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from helpers import valid_primitive, valid_spherical
from rankone import classify, realize, rootsys
from rankone.classify import PrimitiveDiagram, SphericalDiagram
from rankone.realize import AlcovePoint, Realization
from rankone.rootsys import parse_host

D42 = parse_host("D4~2")
DD = PrimitiveDiagram(D42, {0, 2}, "1", {1, 3}, "1")

AFFINE_VALID = valid_primitive(tuple(rootsys.affine_irreducible_tags(5) + list(rootsys.AFFINE_PRODUCT_HOSTS)))
FINITE_VALID = valid_primitive(tuple(rootsys.finite_host_tags(4)))
SPHERICAL_VALID = valid_spherical(("A1~1", "A2~1", "C2~1", "G2~1", "A3", "B3"))


def test_d42_dd_segment():
    r = realize.realize_primitive(DD)
    assert r.x1.coords == (0, F(2, 3), 0, F(1, 3))
    assert r.x2.coords == (F(1, 3), 0, F(2, 3), 0)
    assert r.c == F(1, 6)
    assert realize.side_weights(DD) == ((1, 0, 1, 0), (0, 1, 0, 1))
    assert realize.verify_realization(DD, r) == []
    assert realize.solve_segment_scalar(DD)[-1] == F(1, 6)


def test_d42_evaluation_at_alpha0():
    r = realize.realize_primitive(DD.swapped())
    assert realize.evaluate_coroot(r.x1, 0, D42) == F(1, 3)


def test_verify_catches_swapped_endpoints():
    r = realize.realize_primitive(DD)
    bad = Realization(r.x2, r.x1, r.c, r.omega, r.omega_roots)
    assert realize.verify_realization(DD, bad)


def test_verify_catches_perturbation():
    r = realize.realize_primitive(DD)
    x1 = list(r.x1.coords)
    x1[1] += F(1, 1000)
    assert realize.verify_realization(DD, Realization(AlcovePoint(tuple(x1)), r.x2, r.c, r.omega))


def test_a11_bold_a_fills_the_alcove():
    h = parse_host("A1~1")
    r = realize.realize_primitive(PrimitiveDiagram(h, {0}, "i", {1}, "i"))
    assert {r.x1, r.x2} == {realize.vertex(h, 0), realize.vertex(h, 1)}


def test_vertex_and_barycenter_evaluation():
    h = parse_host("F4~1")
    k = rootsys.colabels(h)
    for i in h.nodes:
        p = realize.vertex(h, i)
        assert [realize.evaluate_coroot(p, j, h) for j in h.nodes] == [F(int(i == j), k[i]) for j in h.nodes]
    a = parse_host("A1~1")
    mid = AlcovePoint((F(1, 2), F(1, 2)))
    assert realize.evaluate_coroot(mid, 0, a) == realize.evaluate_coroot(mid, 1, a) == F(1, 2)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_finite_pure_local_b(n):
    h = parse_host(f"B{n}")
    d = PrimitiveDiagram(h, {0}, "1")
    r = realize.realize_primitive(d)
    assert r.x1.coords == (0,) * n and r.c == 1
    assert r.omega_roots == (1,) * n
    assert r.x2.coords == r.omega.coeffs
    assert realize.verify_realization(d, r) == []


def test_invalid_diagram_is_a_contract_error():
    with pytest.raises(realize.ContractError):
        realize.realize_primitive(PrimitiveDiagram(parse_host("F4~1"), {2}, "i", {3}, "i"))


def test_a11_spherical_example():
    h = parse_host("A1~1")
    d = SphericalDiagram(h, {0}, {1}, "i")
    r = realize.realize_spherical(d)
    assert realize.verify_realization(d, r) == []
    assert realize.evaluate_coroot(r.x1, 0, h) > 0 and realize.evaluate_coroot(r.x2, 0, h) > 0
    assert realize.evaluate_coroot(r.x1, 1, h) == 0


def test_a21_spherical_realizations():
    h = parse_host("A2~1")
    for d in classify.enumerate_spherical(h):
        r = realize.realize_spherical(d)
        assert realize.verify_realization(d, r) == [], d
    two = [d for d in classify.enumerate_spherical(h) if d.sc and d.s1 and d.s2]
    assert two


def test_spherical_without_circles_matches_primitive():
    for d in AFFINE_VALID[:40]:
        rs = realize.realize_spherical(d.as_spherical())
        assert realize.verify_realization(d.as_spherical(), rs) == []
        assert rs.omega.coeffs == realize.realize_primitive(d).omega.coeffs


@given(st.sampled_from(AFFINE_VALID + FINITE_VALID))
def test_swap_consistency(d):
    a = realize.realize_primitive(d.swapped())
    b = realize.realize_primitive(d).swapped()
    assert (a.x1, a.x2, a.c, a.omega.coeffs) == (b.x1, b.x2, b.c, b.omega.coeffs)
    if a.omega_roots is not None and b.omega_roots is not None:
        # root coordinates are defined up to the null root on affine factors
        diff = [x - y for x, y in zip(a.omega_roots, b.omega_roots)]
        assert rootsys.pairing_vector(diff, d.host).is_zero()


@given(st.sampled_from(AFFINE_VALID + FINITE_VALID))
def test_automorphism_equivariance(d):
    r = realize.realize_primitive(d)
    for perm in rootsys.automorphisms(d.host)[:8]:
        q = realize.realize_primitive(d.permuted(perm))
        for i in d.host.nodes:
            assert q.x1[perm[i]] == r.x1[i] and q.x2[perm[i]] == r.x2[i]
            assert q.omega[perm[i]] == r.omega[i]


@given(st.sampled_from(FINITE_VALID), st.fractions(min_value=F(1, 10), max_value=10))
def test_finite_scaling(d, s):
    r = realize.realize_primitive(d)
    scaled = Realization(AlcovePoint(tuple(s * x for x in r.x1.coords)),
                         AlcovePoint(tuple(s * x for x in r.x2.coords)), s * r.c, r.omega, r.omega_roots)
    assert realize.verify_realization(d, scaled) == []


@given(st.sampled_from(AFFINE_VALID))
def test_affine_scalar_is_unique(d):
    r = realize.realize_primitive(d)
    sol = realize.solve_segment_scalar(d)
    assert sol is not None and sol[-1] == r.c > 0


@given(st.sampled_from(SPHERICAL_VALID))
def test_spherical_realizations_verify(d):
    assert realize.verify_realization(d, realize.realize_spherical(d)) == []
