"""Constructive oracle for primitive diagrams.

Every primitive diagram is obtained from two local models by identifying a
union of components of S1 - S1' with one of S2 - S2' (the common part S0p),
or, when S0p is empty, by joining the decorated nodes with N <= 4 edges.
This module builds all such gluings directly from the catalog, independent
of the search in ``classify.enumerate_primitive``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import classify, localmodels, rootsys
from .localmodels import LocalDiagram
from .rootsys import Cartan

log = logging.getLogger(__name__)

# (A[x][y], A[y][x]) for an edge between two nodes of a finite/affine diagram
EDGE_TYPES = ((-1, -1), (-1, -2), (-2, -1), (-1, -3), (-3, -1), (-2, -2), (-1, -4), (-4, -1))

# factor variants that share a row of the gluing table
_VARIANTS = {
    "b": ("b", "2b"),
    "d": ("d", "1/2d"),
    "d3": ("d3", "1/2d3"),
    "g2": ("g2", "2g2"),
    "b3'": ("b3'", "1/2b3'"),
}
_BASE = {v: k for k, vs in _VARIANTS.items() for v in vs}


def base_family(family: str) -> str:
    return _BASE.get(family, family)


def gluing_table(max_size: int = 8) -> dict[str, set[tuple[str, int]]]:
    """Candidate local models (family without factor, rank) for each type of
    S0p, limited to supports with at most ``max_size`` nodes."""
    rows: dict[str, set] = {}

    def add(tag, fam, n):
        if localmodels.FAMILIES[fam].size(n) <= max_size:
            rows.setdefault(tag, set()).add((fam, n))

    for fam, n in (("a", 3), ("ba", 2), ("b", 2), ("d3", 3), ("g2", 2), ("bc", 2)):
        add("A1", fam, n)
    for n in range(3, max_size + 1):
        add("A1", "c", n)
    for fam, n in (("a", 4), ("ba", 3), ("b3'", 3)):
        add("A2", fam, n)
    for fam, n in (("a", 5), ("ba", 4), ("d", 4)):
        add("A3", fam, n)
    for n in range(4, max_size + 1):
        add(f"A{n}", "a", n + 2)
        add(f"A{n}", "ba", n + 1)
    for fam, n in (("b", 3), ("c", 4), ("bc", 3)):
        add("B2", fam, n)
    for fam, n in (("b", 4), ("f4", 4)):
        add("B3", fam, n)
    for n in range(4, max_size + 1):
        add(f"B{n}", "b", n + 1)
    for n in range(3, max_size + 1):
        add(f"C{n}", "c", n + 2)
        add(f"C{n}", "bc", n + 1)
    add("D4", "d", 5)
    for n in range(5, max_size + 1):
        add(f"D{n}", "d", n + 1)
    add("A1xA1", "c", 3)
    add("A1xA1", "d3", 3)
    for n in range(2, max_size + 1):
        ctag = "B2" if n == 2 else f"C{n}"
        add(f"A1x{ctag}", "c", n + 2)
    return {k: v for k, v in rows.items() if v}


def _undecorated_unions(e: LocalDiagram):
    """Yield (type tag, node tuple) for every nonempty union of components
    of the support minus the decorated set."""
    rest = [x for x in e.support.nodes if x not in e.decorated]
    comps = rootsys.components(rest, e.support)
    for k in range(1, len(comps) + 1):
        for pick in itertools.combinations(comps, k):
            nodes = tuple(sorted(set().union(*pick)))
            sub = tuple(tuple(e.support.cartan[i][j] for j in nodes) for i in nodes)
            tag, _ = rootsys.identify(sub)
            yield tag, nodes


def derived_gluing_table(max_size: int = 8) -> dict[str, set[tuple[str, int]]]:
    """The same table recomputed from the catalog."""
    rows: dict[str, set] = {}
    for e in localmodels.catalog(max_size):
        for tag, _ in _undecorated_unions(e):
            rows.setdefault(tag, set()).add((base_family(e.family), e.rank))
    return rows


def expand_factors(family: str, rank: int) -> list[LocalDiagram]:
    return [localmodels.entry(f, rank) for f in _VARIANTS.get(family, (family,))]


@dataclass(frozen=True)
class GlueCandidate:
    """One raw gluing.  ``host`` is None when the glued graph is neither
    finite nor affine; ``verdict`` is None when the host is out of scope."""

    cartan: Cartan
    s1: frozenset[int]
    c1: str
    s2: frozenset[int]
    c2: str
    entries: tuple[str, str]
    s0p: str
    edges: tuple[tuple[int, int, int, int], ...]
    host: rootsys.DynkinDiagram | None
    diagram: classify.PrimitiveDiagram | None
    verdict: classify.Verdict | None
    note: str = ""

    @property
    def valid(self) -> bool:
        return self.verdict is not None and self.verdict.valid


class GlueCandidates(list):
    """A list of candidates with an optional explanatory note."""

    note = ""


def _colors(n, s1, s2, side_of):
    return [(side_of[i], i in s1, i in s2) for i in range(n)]


def _finish(cartan, s1, c1, s2, c2, entries, s0p, edges) -> GlueCandidate:
    n = len(cartan)
    res = rootsys.identify(cartan)
    if res is None:
        return GlueCandidate(cartan, s1, c1, s2, c2, entries, s0p, edges, None, None, None,
                             "glued graph is neither finite nor affine")
    std, perm = rootsys.standard_form(rootsys.DynkinDiagram(res[0], cartan, res[1]))
    d = classify.PrimitiveDiagram(std, {perm[i] for i in s1}, c1, {perm[i] for i in s2}, c2)
    try:
        v = classify.check_primitive(d)
    except classify.HostScopeError as exc:
        return GlueCandidate(cartan, s1, c1, s2, c2, entries, s0p, edges, std, d, None, str(exc))
    return GlueCandidate(cartan, s1, c1, s2, c2, entries, s0p, edges, std, d, v)


def _edge_sets(pairs: Sequence[tuple[int, int]], counts: Iterable[int]):
    for n in counts:
        for chosen in itertools.combinations(pairs, n):
            for types in itertools.product(EDGE_TYPES, repeat=n):
                yield tuple((x, y, a, b) for (x, y), (a, b) in zip(chosen, types))


def _assemble(n, blocks, edges):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for cartan, nodes in blocks:
        for i, x in enumerate(nodes):
            for j, y in enumerate(nodes):
                if i != j and cartan[i][j]:
                    a[x][y] = cartan[i][j]
    for x, y, axy, ayx in edges:
        a[x][y] = axy
        a[y][x] = ayx
    return tuple(tuple(r) for r in a)


def _dedupe(raw: list[tuple], same_entries: bool) -> list[tuple]:
    """Drop gluings isomorphic as decorated graphs (allowing side swap when
    both entries coincide)."""
    buckets: dict[tuple, list] = {}
    kept: list[tuple] = []

    def seen(cartan, col):
        for other in buckets.get(rootsys.signature(cartan, col), ()):
            if next(rootsys.isomorphisms(cartan, other[0], col, other[1]), None) is not None:
                return True
        return False

    for item in raw:
        cartan, col, colswap = item[0], item[1], item[2]
        if seen(cartan, col) or (same_entries and seen(cartan, colswap)):
            continue
        buckets.setdefault(rootsys.signature(cartan, col), []).append(item)
        kept.append(item)
    return kept


def glue_construct(s0p: str | None, e1: LocalDiagram, e2: LocalDiagram, *, edges: Iterable[int] | None = None,
                   extra_edges: bool = False) -> GlueCandidates:
    """All gluings of e1 and e2 along a common copy of the type ``s0p``.

    With ``s0p`` empty or None the supports are disjoint and joined by N
    edges between decorated nodes, N ranging over ``edges`` (default 0..4).
    With ``extra_edges`` the nonempty case also allows edges between the
    decorated nodes of the two sides.  Gluings that are isomorphic as
    decorated graphs are reported once.
    """
    out = GlueCandidates()
    same = e1 == e2
    n1, n2 = e1.support.n, e2.support.n
    if not s0p:
        n = n1 + n2
        s1 = frozenset(e1.decorated)
        s2 = frozenset(n1 + j for j in e2.decorated)
        side_of = [1] * n1 + [2] * n2
        pairs = [(x, y) for x in sorted(s1) for y in sorted(s2)]
        raw = []
        for es in _edge_sets(pairs, range(5) if edges is None else edges):
            cartan = _assemble(n, [(e1.support.cartan, range(n1)), (e2.support.cartan, range(n1, n))], es)
            raw.append((cartan, _colors(n, s1, s2, side_of), _colors(n, s2, s1, [3 - s for s in side_of]),
                        s1, s2, es))
        for cartan, _, _, a, b, es in _dedupe(raw, same):
            out.append(_finish(cartan, a, e1.factor, b, e2.factor, (e1.label, e2.label), "", es))
        return out

    table = gluing_table(max(n1, n2, 1))
    if s0p not in table:
        out.note = f"S0p type {s0p} is not a row of the gluing table"
        log.info(out.note)
        return out
    u1s = [nodes for tag, nodes in _undecorated_unions(e1) if tag == s0p]
    u2s = [nodes for tag, nodes in _undecorated_unions(e2) if tag == s0p]
    raw = []
    for u1 in u1s:
        sub1 = tuple(tuple(e1.support.cartan[i][j] for j in u1) for i in u1)
        for u2 in u2s:
            sub2 = tuple(tuple(e2.support.cartan[i][j] for j in u2) for i in u2)
            for iso in rootsys.isomorphisms(sub2, sub1):
                # node numbering: e1's support first, then e2's nodes outside u2
                place = {}
                nxt = n1
                for j in range(n2):
                    if j in u2:
                        place[j] = u1[iso[u2.index(j)]]
                    else:
                        place[j] = nxt
                        nxt += 1
                n = nxt
                s1 = frozenset(e1.decorated)
                s2 = frozenset(place[j] for j in e2.decorated)
                side_of = [1 if i < n1 else 2 for i in range(n)]
                for i in u1:
                    side_of[i] = 0
                swap_side = [0 if s == 0 else 3 - s for s in side_of]
                pairs = [(x, y) for x in sorted(s1) for y in sorted(s2)]
                blocks = [(e1.support.cartan, range(n1)), (e2.support.cartan, [place[j] for j in range(n2)])]
                for es in _edge_sets(pairs, range(5) if extra_edges else (0,)):
                    cartan = _assemble(n, blocks, es)
                    raw.append((cartan, _colors(n, s1, s2, side_of), _colors(n, s2, s1, swap_side), s1, s2, es))
    for cartan, _, _, a, b, es in _dedupe(raw, same):
        out.append(_finish(cartan, a, e1.factor, b, e2.factor, (e1.label, e2.label), s0p, es))
    return out


# ---------------------------------------------------------------------------
# The full oracle


def _oracle_pairs(max_nodes: int):
    """(s0p, e1, e2, extra_edges) tuples covering every gluing with at most
    ``max_nodes`` nodes in the result."""
    table = gluing_table(max_nodes)
    for tag, cands in sorted(table.items()):
        size0 = len(rootsys.parse_host(tag).cartan)
        entries = sorted({e for fam, n in cands for e in expand_factors(fam, n)}, key=lambda e: (e.label))
        for i, e1 in enumerate(entries):
            for e2 in entries[i:]:
                if e1.support.n + e2.support.n - size0 <= max_nodes:
                    yield tag, e1, e2
    entries = [e for e in localmodels.catalog(max_nodes) if e.support.n > 0]
    for i, e1 in enumerate(entries):
        for e2 in entries[i:]:
            if e1.support.n + e2.support.n <= max_nodes:
                yield "", e1, e2


def oracle_primitive(max_nodes: int = 7) -> dict[str, dict[tuple, classify.PrimitiveDiagram]]:
    """Canonical valid primitive diagrams produced by gluing, grouped by host tag."""
    found: dict[str, dict] = {}

    def keep(d):
        d = classify.canonicalize(d)
        found.setdefault(d.host.tag, {})[classify.diagram_key(d)] = d

    # pure local diagrams: the second side is ba0
    for e in localmodels.catalog(max_nodes):
        if e.support.n:
            std, perm = rootsys.standard_form(e.support)
            d = classify.PrimitiveDiagram(std, {perm[i] for i in e.decorated}, e.factor, frozenset(), "i")
            if classify.check_primitive(d).valid:
                keep(d)
    for s0p, e1, e2 in _oracle_pairs(max_nodes):
        for cand in glue_construct(s0p, e1, e2, extra_edges=True):
            if cand.valid:
                keep(cand.diagram)
    return found
