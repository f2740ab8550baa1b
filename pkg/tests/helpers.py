"""Shared hypothesis strategies."""
from __future__ import annotations

from functools import lru_cache

from hypothesis import strategies as st

from rankone import classify, rootsys
from rankone.localmodels import FACTORS

AFFINE_SMALL = rootsys.affine_irreducible_tags(5)
FINITE_SMALL = rootsys.finite_host_tags(5)
PRIMITIVE_HOSTS = AFFINE_SMALL + FINITE_SMALL + list(rootsys.AFFINE_PRODUCT_HOSTS)


@lru_cache(maxsize=None)
def valid_primitive(tags: tuple[str, ...]) -> tuple:
    return tuple(d for t in tags for d in classify.enumerate_primitive(rootsys.parse_host(t)))


@lru_cache(maxsize=None)
def valid_spherical(tags: tuple[str, ...]) -> tuple:
    return tuple(d for t in tags for d in classify.enumerate_spherical(rootsys.parse_host(t)))


@st.composite
def random_primitive(draw, hosts=tuple(PRIMITIVE_HOSTS)):
    h = rootsys.parse_host(draw(st.sampled_from(hosts)))
    nodes = list(h.nodes)
    s1 = draw(st.sets(st.sampled_from(nodes), min_size=1, max_size=2))
    rest = [x for x in nodes if x not in s1]
    s2 = draw(st.sets(st.sampled_from(rest), max_size=2)) if rest else set()
    c1 = draw(st.sampled_from(FACTORS))
    c2 = draw(st.sampled_from(FACTORS)) if s2 else "i"
    return classify.PrimitiveDiagram(h, s1, c1, s2, c2)


@st.composite
def random_spherical(draw, hosts=tuple(AFFINE_SMALL[:12] + FINITE_SMALL[:12])):
    h = rootsys.parse_host(draw(st.sampled_from(hosts)))
    nodes = list(h.nodes)
    s1 = draw(st.sets(st.sampled_from(nodes), max_size=2))
    rest = [x for x in nodes if x not in s1]
    s2 = draw(st.sets(st.sampled_from(rest), max_size=2)) if rest else set()
    rest = [x for x in rest if x not in s2]
    sc = draw(st.sets(st.sampled_from(rest), max_size=len(rest))) if rest else set()
    c1 = draw(st.sampled_from(FACTORS)) if s1 else "i"
    c2 = draw(st.sampled_from(FACTORS)) if s2 else "i"
    return classify.SphericalDiagram(h, sc, s1, c1, s2, c2)


def primitive_diagrams(hosts=tuple(PRIMITIVE_HOSTS)):
    """Random diagrams mixed with known valid ones, so both verdicts get exercised."""
    return st.one_of(random_primitive(hosts), st.sampled_from(valid_primitive(tuple(hosts))))


def spherical_diagrams():
    hosts = ("A1~1", "A2~1", "C2~1", "A3~1", "B3~1", "G2~1", "A3", "B3", "D4")
    return st.one_of(random_spherical(), st.sampled_from(valid_spherical(hosts)))
