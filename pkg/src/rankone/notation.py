"""Text, JSON and DOT forms of diagrams and realizations.

Diagram grammar (node names as printed by ``hosts``, e.g. ``0``, ``3``, ``1'``)::

    HOST ; S1'={a,b}:c=F ; S2'={c}:c=F [; Sc={d,e}]

HOST is a host string such as ``F4~1``, ``D7`` or ``A1~1xA1~1`` and F is one
of ``1/2`` (or ``½``), ``1``, ``2``, ``i``.  An omitted ``:c=`` means ``1``
for a nonempty set and ``i`` for an empty one.  An omitted S2' clause means
the empty side ``{}:c=i``.  A diagram with an ``Sc`` clause is spherical,
otherwise primitive.
"""
from __future__ import annotations

import re
from fractions import Fraction

from . import rootsys
from .classify import PrimitiveDiagram, SphericalDiagram, Verdict
from .realize import AlcovePoint, Realization
from .rootsys import DynkinDiagram, RationalFunctional

GRAMMAR = "HOST ; S1'={i,j}:c=<1/2|1|2|i> ; S2'={k}:c=<...> [; Sc={...}]"


class NotationError(ValueError):
    """Malformed diagram or host text."""


_CLAUSE = re.compile(r"^(S1'|S2'|Sc)\s*=\s*\{([^}]*)\}\s*(?::\s*c\s*=\s*(\S+))?$")


def _parse_set(host: DynkinDiagram, body: str) -> frozenset[int]:
    names = [x.strip() for x in body.split(",") if x.strip()]
    try:
        return frozenset(host.node(x) for x in names)
    except KeyError as exc:
        raise NotationError(exc.args[0]) from None


def parse_host(text: str) -> DynkinDiagram:
    try:
        return rootsys.parse_host(text.strip())
    except rootsys.HostError as exc:
        raise NotationError(str(exc)) from None


def parse_diagram(text: str):
    parts = [p.strip() for p in text.split(";")]
    host = parse_host(parts[0])
    sides = {"S1'": (frozenset(), None), "S2'": (frozenset(), None)}
    sc = None
    for part in parts[1:]:
        if not part:
            continue
        m = _CLAUSE.match(part)
        if not m:
            raise NotationError(f"cannot parse clause {part!r}; expected {GRAMMAR}")
        key, body, factor = m.groups()
        nodes = _parse_set(host, body)
        if key == "Sc":
            if factor is not None:
                raise NotationError("Sc takes no factor")
            sc = nodes
        else:
            sides[key] = (nodes, factor)
    if not sides["S1'"][0] and not sides["S2'"][0] and sc is None:
        raise NotationError("a primitive diagram needs at least one decorated node")
    resolved = []
    for key in ("S1'", "S2'"):
        nodes, factor = sides[key]
        resolved.append((nodes, factor if factor is not None else ("1" if nodes else "i")))
    (s1, c1), (s2, c2) = resolved
    try:
        if sc is None:
            return PrimitiveDiagram(host, s1, c1, s2, c2)
        return SphericalDiagram(host, sc, s1, c1, s2, c2)
    except ValueError as exc:
        raise NotationError(str(exc)) from None


def _set_text(host, nodes) -> str:
    return "{" + ",".join(host.names[i] for i in sorted(nodes)) + "}"


def format_diagram(d) -> str:
    h = d.host
    out = f"{h.tag} ; S1'={_set_text(h, d.s1)}:c={d.c1} ; S2'={_set_text(h, d.s2)}:c={d.c2}"
    if isinstance(d, SphericalDiagram):
        out += f" ; Sc={_set_text(h, d.sc)}"
    return out


# ---------------------------------------------------------------------------
# JSON


def diagram_to_json(d, verdict: Verdict | None = None) -> dict:
    h = d.host
    obj = {
        "kind": "spherical" if isinstance(d, SphericalDiagram) else "primitive",
        "host": h.tag,
        "S1'": [h.names[i] for i in sorted(d.s1)],
        "c1": d.c1,
        "S2'": [h.names[i] for i in sorted(d.s2)],
        "c2": d.c2,
    }
    if isinstance(d, SphericalDiagram):
        obj["Sc"] = [h.names[i] for i in sorted(d.sc)]
    if verdict is not None:
        obj["verdict"] = verdict.to_json()
    return obj


def diagram_from_json(obj: dict):
    host = parse_host(obj["host"])
    s1 = frozenset(host.node(x) for x in obj["S1'"])
    s2 = frozenset(host.node(x) for x in obj["S2'"])
    if obj.get("kind") == "spherical":
        return SphericalDiagram(host, frozenset(host.node(x) for x in obj["Sc"]), s1, obj["c1"], s2, obj["c2"])
    return PrimitiveDiagram(host, s1, obj["c1"], s2, obj["c2"])


def _rational_map(host, values, skip_zero: bool) -> dict:
    return {host.names[i]: str(v) for i, v in enumerate(values) if not (skip_zero and v == 0)}


def realization_to_json(r: Realization, host: DynkinDiagram) -> dict:
    obj = {
        "X1": _rational_map(host, r.x1.coords, True),
        "X2": _rational_map(host, r.x2.coords, True),
        "c": str(r.c),
        "omega_pairings": _rational_map(host, r.omega.coeffs, False),
    }
    if r.omega_roots is not None:
        obj["omega_roots"] = _rational_map(host, r.omega_roots, False)
    return obj


def realization_from_json(obj: dict, host: DynkinDiagram) -> Realization:
    def vec(m):
        v = [Fraction(0)] * host.n
        for name, x in m.items():
            v[host.node(name)] = Fraction(x)
        return tuple(v)

    roots = vec(obj["omega_roots"]) if "omega_roots" in obj else None
    return Realization(AlcovePoint(vec(obj["X1"])), AlcovePoint(vec(obj["X2"])), Fraction(obj["c"]),
                       RationalFunctional(vec(obj["omega_pairings"])), roots)


# ---------------------------------------------------------------------------
# Drawings


def edge_symbol(a: int, b: int) -> str:
    """Symbol for an edge read left to right with (A[l][r], A[r][l]) = (a, b).
    Arrows point at the shorter root."""
    return {
        (-1, -1): "---",
        (-1, -2): "==>",
        (-2, -1): "<==",
        (-1, -3): "=3=>",
        (-3, -1): "<=3=",
        (-2, -2): "====",
        (-1, -4): "=4=>",
        (-4, -1): "<=4=",
    }.get((a, b), f"[{a},{b}]")


def _node_token(d, i: int) -> str:
    name = d.host.names[i]
    if i in d.s1:
        return f"*{name}[1:{d.c1}]"
    if i in d.s2:
        return f"*{name}[2:{d.c2}]"
    if i in getattr(d, "sc", ()):
        return f"(o{name})"
    return f"o{name}"


def _path_order(host: DynkinDiagram, comp) -> list[int] | None:
    nodes = sorted(comp)
    deg = {x: len(host.neighbors[x] & comp) for x in nodes}
    if len(nodes) == 1:
        return nodes
    ends = [x for x in nodes if deg[x] == 1]
    if any(v > 2 for v in deg.values()) or len(ends) != 2:
        return None
    order = [ends[0]]
    while len(order) < len(nodes):
        nxt = [y for y in host.neighbors[order[-1]] & comp if y not in order]
        order.append(nxt[0])
    return order


def render_text(d) -> str:
    h = d.host
    kind = "spherical" if isinstance(d, SphericalDiagram) else "primitive"
    lines = [f"host: {h.tag} ({kind})"]
    for comp in rootsys.components(h.nodes, h):
        order = _path_order(h, comp)
        if order is not None:
            parts = [_node_token(d, order[0])]
            for x, y in zip(order, order[1:]):
                parts += [edge_symbol(h.cartan[x][y], h.cartan[y][x]), _node_token(d, y)]
            lines.append("  " + " ".join(parts))
        else:
            nodes = sorted(comp)
            lines.append("  nodes: " + " ".join(_node_token(d, x) for x in nodes))
            edges = [f"{h.names[x]}{edge_symbol(h.cartan[x][y], h.cartan[y][x])}{h.names[y]}"
                     for x in nodes for y in nodes if x < y and h.cartan[x][y]]
            lines.append("  edges: " + " ".join(edges))
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"\(o(?P<c>[0-9]+'*)\)|\*(?P<d>[0-9]+'*)\[(?P<side>[12]):(?P<f>[^\]]+)\]|o(?P<p>[0-9]+'*)")
_HEADER = re.compile(r"^host:\s*(\S*)\s*\((primitive|spherical)\)\s*$")


def parse_text(text: str):
    """Inverse of :func:`render_text`."""
    lines = text.strip("\n").splitlines()
    m = _HEADER.match(lines[0]) if lines else None
    if not m:
        raise NotationError("rendered diagram must start with 'host: TAG (kind)'")
    host = parse_host(m.group(1))
    sc, s1, s2 = set(), set(), set()
    factors = {1: "i", 2: "i"}
    for line in lines[1:]:
        for tok in line.split():
            t = _TOKEN.fullmatch(tok)
            if not t:
                continue
            if t.group("c"):
                sc.add(host.node(t.group("c")))
            elif t.group("d"):
                side = int(t.group("side"))
                (s1 if side == 1 else s2).add(host.node(t.group("d")))
                factors[side] = t.group("f")
    if m.group(2) == "spherical":
        return SphericalDiagram(host, sc, s1, factors[1], s2, factors[2])
    return PrimitiveDiagram(host, s1, factors[1], s2, factors[2])


def render_dot(d) -> str:
    h = d.host
    lines = [f'graph "{h.tag}" {{']
    for i in h.nodes:
        side = 1 if i in d.s1 else 2 if i in d.s2 else 0
        factor = d.c1 if side == 1 else d.c2 if side == 2 else ""
        circled = i in getattr(d, "sc", ())
        style = ", style=filled" if side else ", shape=doublecircle" if circled else ""
        lines.append(f'  n{i} [label="{h.names[i]}", side={side}, factor="{factor}", '
                     f'circled={str(circled).lower()}{style}];')
    for i in h.nodes:
        for j in h.nodes:
            if i < j and h.cartan[i][j]:
                lines.append(f'  n{i} -- n{j} [label="{h.cartan[i][j]},{h.cartan[j][i]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
