"""Primitive and general spherical diagrams: checking, enumeration, canonical forms.

A primitive diagram is a quintuple (S, S1', c1, S2', c2) on a host diagram S.
Each side i spans S_i, the connected closure of S_i' away from the other
side's decorations.  It is valid when the two sides cover S, both sides are
local models, and the weights of the two sides match.

A spherical diagram adds a set Sc of nodes that stay positive on the whole
segment.  It is valid when its core (the closure of the decorations inside
S - Sc) is primitive, the homogeneous weights pair integrally with Sc, and
the colabel divisibility holds in the bi-inhomogeneous affine case.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import localmodels, rootsys
from .localmodels import FACTOR_RANK, Match, normalize_factor
from .rootsys import DynkinDiagram, RationalFunctional

CONDITIONS = (
    "closure-cover",
    "local-recognition",
    "3a-weight-sum",
    "3b-pairing",
    "3c-colabel",
    "integrality",
    "divisibility",
    "degenerate",
)


class DiagramInputError(ValueError):
    """A malformed quintuple or sextuple (as opposed to an invalid one)."""


class HostScopeError(ValueError):
    """The host lies outside the range where the checks are defined."""


# ---------------------------------------------------------------------------
# Data types


def _node_set(host: DynkinDiagram, nodes: Iterable[int], what: str) -> frozenset[int]:
    out = frozenset(int(x) for x in nodes)
    bad = [x for x in out if not 0 <= x < host.n]
    if bad:
        raise DiagramInputError(f"{what} mentions nodes {sorted(bad)} outside host {host.tag}")
    return out


def _check_sides(host, s1, c1, s2, c2):
    s1 = _node_set(host, s1, "S1'")
    s2 = _node_set(host, s2, "S2'")
    try:
        c1, c2 = normalize_factor(c1), normalize_factor(c2)
    except ValueError as exc:
        raise DiagramInputError(str(exc)) from None
    if s1 & s2:
        raise DiagramInputError(f"S1' and S2' overlap in {sorted(s1 & s2)}")
    for s, name in ((s1, "S1'"), (s2, "S2'")):
        if len(s) > 2:
            raise DiagramInputError(f"{name} has {len(s)} nodes; local models have at most two decorated nodes")
    return s1, c1, s2, c2


@dataclass(frozen=True)
class PrimitiveDiagram:
    host: DynkinDiagram
    s1: frozenset[int]
    c1: str
    s2: frozenset[int] = frozenset()
    c2: str = "i"

    def __post_init__(self):
        s1, c1, s2, c2 = _check_sides(self.host, self.s1, self.c1, self.s2, self.c2)
        object.__setattr__(self, "s1", s1)
        object.__setattr__(self, "s2", s2)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    sc = frozenset()

    def swapped(self) -> "PrimitiveDiagram":
        return PrimitiveDiagram(self.host, self.s2, self.c2, self.s1, self.c1)

    def permuted(self, perm: Sequence[int]) -> "PrimitiveDiagram":
        return PrimitiveDiagram(self.host, {perm[i] for i in self.s1}, self.c1, {perm[i] for i in self.s2}, self.c2)

    def sides(self):
        s_all = frozenset(self.host.nodes)
        return (rootsys.connected_closure(self.s1, s_all - self.s2, self.host),
                rootsys.connected_closure(self.s2, s_all - self.s1, self.host))

    def as_spherical(self) -> "SphericalDiagram":
        return SphericalDiagram(self.host, frozenset(), self.s1, self.c1, self.s2, self.c2)


@dataclass(frozen=True)
class SphericalDiagram:
    host: DynkinDiagram
    sc: frozenset[int]
    s1: frozenset[int]
    c1: str
    s2: frozenset[int] = frozenset()
    c2: str = "i"

    def __post_init__(self):
        s1, c1, s2, c2 = _check_sides(self.host, self.s1, self.c1, self.s2, self.c2)
        sc = _node_set(self.host, self.sc, "Sc")
        if sc & (s1 | s2):
            raise DiagramInputError(f"Sc meets the decorated nodes in {sorted(sc & (s1 | s2))}")
        object.__setattr__(self, "sc", sc)
        object.__setattr__(self, "s1", s1)
        object.__setattr__(self, "s2", s2)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    def swapped(self) -> "SphericalDiagram":
        return SphericalDiagram(self.host, self.sc, self.s2, self.c2, self.s1, self.c1)

    def permuted(self, perm: Sequence[int]) -> "SphericalDiagram":
        return SphericalDiagram(self.host, {perm[i] for i in self.sc}, {perm[i] for i in self.s1}, self.c1,
                                {perm[i] for i in self.s2}, self.c2)

    def core_nodes(self) -> frozenset[int]:
        rest = frozenset(self.host.nodes) - self.sc
        return rootsys.connected_closure(self.s1 | self.s2, rest, self.host)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    failed_condition: str | None = None
    witness: str = ""
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.valid != (self.failed_condition is None):
            raise ValueError("failed_condition must be present exactly when invalid")
        if self.failed_condition is not None and self.failed_condition not in CONDITIONS:
            raise ValueError(f"unknown condition {self.failed_condition}")

    def to_json(self) -> dict:
        return {"valid": self.valid, "failed_condition": self.failed_condition,
                "witness": self.witness, "flags": list(self.flags)}

    @staticmethod
    def from_json(obj: dict) -> "Verdict":
        return Verdict(obj["valid"], obj["failed_condition"], obj["witness"], tuple(obj["flags"]))


VALID = Verdict(True)


@dataclass(frozen=True)
class PrimitiveAnalysis:
    """The intermediate data of a primitive check, reused by the realizer."""

    s1: frozenset[int]
    s2: frozenset[int]
    m1: Match | None = None
    m2: Match | None = None
    pairings1: RationalFunctional | None = field(default=None, repr=False)
    pairings2: RationalFunctional | None = field(default=None, repr=False)


def _names(host: DynkinDiagram, nodes) -> str:
    return "{" + ", ".join(host.names[i] for i in sorted(nodes)) + "}"


def _fail(tag: str, witness: str) -> Verdict:
    return Verdict(False, tag, witness)


# ---------------------------------------------------------------------------
# Primitive check


def _check_primitive_scope(host: DynkinDiagram) -> None:
    if host.is_mixed:
        raise HostScopeError(f"host {host.tag} mixes finite and affine factors")
    if host.is_affine_product and len(host.factors) > 2:
        raise HostScopeError(f"host {host.tag} has more than two affine factors")


def _analyze(host, s1, c1, s2, c2) -> tuple[Verdict, PrimitiveAnalysis]:
    everything = frozenset(host.nodes)
    side1 = rootsys.connected_closure(s1, everything - s2, host)
    side2 = rootsys.connected_closure(s2, everything - s1, host)
    an = PrimitiveAnalysis(side1, side2)
    missing = everything - side1 - side2
    if missing:
        return _fail("closure-cover", f"nodes {_names(host, missing)} lie in neither S1 nor S2"), an
    m1 = localmodels.recognize(host, side1, s1, c1)
    if m1 is None:
        return _fail("local-recognition", f"side 1 ({_names(host, side1)}, {_names(host, s1)}, c={c1}) "
                                          f"is not a local diagram"), an
    m2 = localmodels.recognize(host, side2, s2, c2)
    if m2 is None:
        return _fail("local-recognition", f"side 2 ({_names(host, side2)}, {_names(host, s2)}, c={c2}) "
                                          f"is not a local diagram"), an
    p1 = localmodels.weight_pairings(m1.entry, m1.embedding, host)
    p2 = localmodels.weight_pairings(m2.entry, m2.embedding, host)
    an = PrimitiveAnalysis(side1, side2, m1, m2, p1, p2)
    flags = []
    if not side2 or not side1:
        flags.append("pure-local")
    h1, h2 = m1.entry.homogeneous, m2.entry.homogeneous
    if h1 and h2:
        total = p1 + p2
        if not total.is_zero():
            bad = ", ".join(f"{host.names[i]}: {total[i]}" for i in sorted(total.support()))
            return _fail("3a-weight-sum", f"omega_1 + omega_2 pairs nonzero with {bad}"), an
    elif h1 != h2:
        hom, inh, j = (p1, m2, 2) if h1 else (p2, m1, 1)
        if inh.embedding:
            (a,) = inh.decorated_nodes
            if hom[a] != -1:
                return _fail("3b-pairing", f"homogeneous weight pairs {hom[a]} (not -1) with the "
                                           f"decorated node {host.names[a]} of side {j}"), an
        else:
            flags.append("a0-degenerate")
    elif m1.embedding and m2.embedding:
        (a,) = m1.decorated_nodes
        (b,) = m2.decorated_nodes
        k = rootsys.factor_colabels(host)
        if host.is_affine_irreducible or host.is_affine_product:
            fa, fb = host.factor_of(a), host.factor_of(b)
            if fa != fb or k[a] != k[b]:
                return _fail("3c-colabel", f"colabels differ: k({host.names[a]}^v) = {k[a]}, "
                                           f"k({host.names[b]}^v) = {k[b]}" if fa == fb else
                             f"decorated nodes {host.names[a]}, {host.names[b]} lie in different factors"), an
    return Verdict(True, flags=tuple(flags)), an


def analyze_primitive(d: PrimitiveDiagram) -> tuple[Verdict, PrimitiveAnalysis]:
    _check_primitive_scope(d.host)
    return _analyze(d.host, d.s1, d.c1, d.s2, d.c2)


def check_primitive(d: PrimitiveDiagram) -> Verdict:
    return analyze_primitive(d)[0]


# ---------------------------------------------------------------------------
# Spherical check


def _check_spherical_scope(d: SphericalDiagram) -> None:
    host = d.host
    if host.is_mixed:
        raise HostScopeError(f"host {host.tag} mixes finite and affine factors")
    if host.is_affine_product and d.sc:
        raise HostScopeError(f"spherical diagrams with Sc nonempty are not defined on the "
                             f"reducible affine host {host.tag}")


def reduce_to_primitive(d: SphericalDiagram) -> tuple[DynkinDiagram, PrimitiveDiagram, tuple[int, ...]]:
    """The primitive core: the diagram restricted to the closure of the
    decorations inside S - Sc.  Returns (sub-host, core, embedding)."""
    nodes = d.core_nodes()
    sub, emb = rootsys.induced_subdiagram(d.host, nodes)
    local = {x: i for i, x in enumerate(emb)}
    core = PrimitiveDiagram(sub, {local[x] for x in d.s1}, d.c1, {local[x] for x in d.s2}, d.c2)
    return sub, core, emb


@dataclass(frozen=True)
class SphericalAnalysis:
    core: PrimitiveDiagram | None
    embedding: tuple[int, ...]
    primitive: PrimitiveAnalysis | None


def analyze_spherical(d: SphericalDiagram) -> tuple[Verdict, SphericalAnalysis]:
    _check_spherical_scope(d)
    host = d.host
    if not d.sc:
        v, an = analyze_primitive(PrimitiveDiagram(host, d.s1, d.c1, d.s2, d.c2))
        return v, SphericalAnalysis(None, tuple(host.nodes), an)
    if not d.s1 and not d.s2:
        if d.c1 != "i" or d.c2 != "i":
            return _fail("local-recognition", "empty sides must both be ba0 (factor i)"), \
                SphericalAnalysis(None, (), None)
        need = 1 if host.is_finite else 2
        if len(d.sc) < need:
            return _fail("degenerate", f"no decorations and only {len(d.sc)} node(s) in Sc; "
                                       f"a nonconstant weight needs at least {need}"), \
                SphericalAnalysis(None, (), None)
        return VALID, SphericalAnalysis(None, (), None)
    sub, core, emb = reduce_to_primitive(d)
    v, pan = analyze_primitive(core)
    info = SphericalAnalysis(core, emb, pan)
    if not v.valid:
        return Verdict(False, v.failed_condition, f"core on {_names(host, emb)}: {v.witness}"), info
    for side, m in ((1, pan.m1), (2, pan.m2)):
        if m.entry.homogeneous:
            w = [Fraction(0)] * host.n
            for j, x in enumerate(m.entry.omega):
                w[emb[m.embedding[j]]] = x
            for a in sorted(d.sc):
                val = rootsys.pairing(w, a, host)
                if val.denominator != 1:
                    return _fail("integrality", f"weight of side {side} ({m.entry.label}) pairs {val} "
                                                f"with circled node {host.names[a]}"), info
    if host.is_affine_irreducible and not pan.m1.entry.homogeneous and not pan.m2.entry.homogeneous:
        k = rootsys.colabels(host)
        g = 0
        for a in d.sc:
            g = gcd(g, k[a])
        k1 = k[next(iter(d.s1))] if d.s1 else 0
        k2 = k[next(iter(d.s2))] if d.s2 else 0
        diff = k1 - k2
        if (g == 0 and diff != 0) or (g and diff % g):
            return _fail("divisibility", f"gcd of colabels over Sc is {g}, which does not divide "
                                         f"k(a1^v) - k(a2^v) = {diff}"), info
    return Verdict(True, flags=v.flags), info


def check_spherical(d: SphericalDiagram) -> Verdict:
    return analyze_spherical(d)[0]


# ---------------------------------------------------------------------------
# Canonical forms


def _side_key(s, c):
    # nonempty sides sort first so that pure local diagrams read (D, ba0)
    return (0 if s else 1, tuple(sorted(s)), FACTOR_RANK[c])


def diagram_key(d) -> tuple:
    return (tuple(sorted(d.sc)), _side_key(d.s1, d.c1), _side_key(d.s2, d.c2))


def canonicalize(d):
    """Least representative over host automorphisms and side swap."""
    best, best_key = None, None
    for perm in rootsys.automorphisms(d.host):
        p = d.permuted(perm)
        for cand in (p, p.swapped()):
            key = diagram_key(cand)
            if best_key is None or key < best_key:
                best, best_key = cand, key
    return best


# ---------------------------------------------------------------------------
# Enumeration


def _subsets(nodes: Sequence[int], sizes: Iterable[int]):
    for k in sizes:
        for c in itertools.combinations(nodes, k):
            yield frozenset(c)


def _primitive_slice(host: DynkinDiagram, firsts: Sequence[frozenset[int]]) -> dict:
    found = {}
    nodes = tuple(host.nodes)
    for s1 in firsts:
        rest = [x for x in nodes if x not in s1]
        for s2 in _subsets(rest, (0, 1, 2)):
            for c1 in localmodels.FACTORS:
                for c2 in (localmodels.FACTORS if s2 else ("i",)):
                    v, _ = _analyze(host, s1, c1, s2, c2)
                    if v.valid:
                        d = canonicalize(PrimitiveDiagram(host, s1, c1, s2, c2))
                        found[diagram_key(d)] = d
    return found


def _merge(parts: Iterable[dict]) -> list:
    merged = {}
    for part in parts:
        merged.update(part)
    return [merged[k] for k in sorted(merged)]


def _run_slices(fn, host, items, jobs):
    if jobs <= 1 or len(items) < 2:
        return [fn(host, items)]
    chunks = [items[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, [host] * len(chunks), chunks))


def enumerate_primitive(host: DynkinDiagram, jobs: int = 1) -> list[PrimitiveDiagram]:
    """All valid primitive diagrams on ``host`` up to automorphism and side swap,
    sorted by canonical key."""
    _check_primitive_scope(host)
    firsts = list(_subsets(tuple(host.nodes), (1, 2)))
    return _merge(_run_slices(_primitive_slice, host, firsts, jobs))


def _spherical_slice(host: DynkinDiagram, circled: Sequence[frozenset[int]]) -> dict:
    found = {}
    nodes = tuple(host.nodes)
    for sc in circled:
        rest = [x for x in nodes if x not in sc]
        options = [(frozenset(), frozenset())]
        for s1 in _subsets(rest, (1, 2)):
            for s2 in _subsets([x for x in rest if x not in s1], (0, 1, 2)):
                options.append((s1, s2))
        for s1, s2 in options:
            for c1 in (localmodels.FACTORS if s1 else ("i",)):
                for c2 in (localmodels.FACTORS if s2 else ("i",)):
                    d = SphericalDiagram(host, sc, s1, c1, s2, c2)
                    if check_spherical(d).valid:
                        d = canonicalize(d)
                        found[diagram_key(d)] = d
    return found


def enumerate_spherical(host: DynkinDiagram, jobs: int = 1) -> list[SphericalDiagram]:
    """All valid spherical diagrams on a finite or irreducible affine host,
    up to automorphism and side swap, sorted by canonical key."""
    if host.n == 0:
        return []
    if not (host.is_finite or host.is_affine_irreducible):
        raise HostScopeError(f"spherical enumeration needs a finite or irreducible affine host, not {host.tag}")
    circled = list(_subsets(tuple(host.nodes), range(host.n + 1)))
    return _merge(_run_slices(_spherical_slice, host, circled, jobs))
