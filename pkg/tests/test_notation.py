import json

import pytest
from hypothesis import given, strategies as st

from helpers import primitive_diagrams, valid_primitive, valid_spherical
from rankone import notation, realize, rootsys
from rankone.classify import PrimitiveDiagram, SphericalDiagram, Verdict, check_primitive
from rankone.notation import NotationError

RANK6 = tuple(rootsys.affine_irreducible_tags(5) + rootsys.finite_host_tags(6) + list(rootsys.AFFINE_PRODUCT_HOSTS))
SPH = valid_spherical(("A1~1", "A2~1", "C2~1", "B3", "D4", "A3~1"))


def test_parse_examples():
    d = notation.parse_diagram("F4~1 ; S1'={1}:c=1/2 ; S2'={3}:c=1")
    assert d == PrimitiveDiagram(rootsys.parse_host("F4~1"), {1}, "1/2", {3}, "1")
    assert notation.parse_diagram("F4~1;S1'={1}:c=½;S2'={3}") == d
    s = notation.parse_diagram("D7 ; S1'={1}:c=1 ; Sc={3}")
    assert isinstance(s, SphericalDiagram) and s.sc == {2}
    p = notation.parse_diagram("A1~1xA1~1 ; S1'={0,0'}:c=1 ; S2'={1,1'}:c=1")
    assert p.s1 == {0, 2}


@pytest.mark.parametrize("bad", ["F4~1 ; S1'={9}:c=1", "F4~1 ; S3'={1}", "Q4 ; S1'={1}", "F4~1",
                                 "F4~1 ; S1'={1}:c=3", "F4~1 ; S1'={1,2}:c=1 ; S2'={2}:c=1"])
def test_parse_errors(bad):
    with pytest.raises(NotationError):
        notation.parse_diagram(bad)


@given(st.sampled_from(valid_primitive(RANK6) + SPH))
def test_grammar_round_trip(d):
    assert notation.parse_diagram(notation.format_diagram(d)) == d


@given(st.sampled_from(valid_primitive(RANK6) + SPH))
def test_render_round_trip(d):
    assert notation.parse_text(notation.render_text(d)) == d


@given(primitive_diagrams())
def test_json_round_trip(d):
    v = check_primitive(d)
    obj = json.loads(json.dumps(notation.diagram_to_json(d, v)))
    assert notation.diagram_from_json(obj) == d
    assert Verdict.from_json(obj["verdict"]) == v


@given(st.sampled_from(valid_primitive(RANK6)))
def test_realization_json_round_trip(d):
    r = realize.realize_primitive(d)
    obj = json.loads(json.dumps(notation.realization_to_json(r, d.host)))
    assert notation.realization_from_json(obj, d.host) == r


def test_render_a11():
    d = PrimitiveDiagram(rootsys.parse_host("A1~1"), {0}, "i", {1}, "i")
    assert notation.render_text(d) == "host: A1~1 (primitive)\n  *0[1:i] ==== *1[2:i]\n"


def test_render_circled_node_on_d7():
    d = notation.parse_diagram("D7 ; S1'={1}:c=1 ; Sc={3}")
    assert "(o3)" in notation.render_text(d)
    dot = notation.render_dot(d)
    assert 'n2 [label="3", side=0, factor="", circled=true' in dot
    assert dot.startswith('graph "D7" {') and dot.rstrip().endswith("}")


def test_render_is_deterministic():
    d = notation.parse_diagram("E6~1 ; S1'={0}:c=i ; S2'={6}:c=i")
    assert notation.render_text(d) == notation.render_text(d)
    assert notation.render_dot(d) == notation.render_dot(d)
