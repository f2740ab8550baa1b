"""Catalog of rank-one local models and recognition of decorated subdiagrams.

A local model is a decorated finite Dynkin diagram (S, S', c).  Homogeneous
models carry a weight omega in simple-root coordinates; the decorated set is
exactly where omega pairs positively, with a common value n_D.  Inhomogeneous
models (factor ``i``) only prescribe pairing 1 on the single decorated node
and 0 on the rest of the support.

Supports use Bourbaki numbering.  Entry names are ASCII: ``1/2d`` for the
halved d-series, ``b3'`` for the primed b_3 model, and a leading ``b`` for the
bold (inhomogeneous) series, so ``ba3`` is bold a_3 and ``bc2`` is bold c_2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from . import rootsys
from .rootsys import DynkinDiagram, RationalFunctional

HALF = Fraction(1, 2)
FACTORS = ("1/2", "1", "2", "i")
FACTOR_RANK = {c: k for k, c in enumerate(FACTORS)}
FACTOR_ALIASES = {"½": "1/2", "1/2": "1/2", "1": "1", "2": "2", "i": "i"}


class CatalogError(RuntimeError):
    """A catalog entry whose stored data disagrees with its weight."""


def normalize_factor(c: str) -> str:
    try:
        return FACTOR_ALIASES[str(c).strip()]
    except KeyError:
        raise ValueError(f"factor {c!r} is not one of 1/2, 1, 2, i") from None


@dataclass(frozen=True)
class Family:
    name: str
    factor: str
    support: Callable[[int], str]
    omega: Callable[[int], list] | None
    decorated: Callable[[int], set]
    nd: int | None
    ranks: tuple[int, int | None]  # inclusive lower bound, upper bound or None
    size: Callable[[int], int]


def _ones(n, x=1):
    return [Fraction(x)] * n


def _fixed(k):
    return lambda n: k


_FAMILIES: tuple[Family, ...] = (
    Family("a1", "1", lambda n: "A1", lambda n: [1], lambda n: {0}, 2, (1, 1), _fixed(1)),
    Family("2a1", "2", lambda n: "A1", lambda n: [2], lambda n: {0}, 4, (1, 1), _fixed(1)),
    Family("a", "1", lambda n: f"A{n}", lambda n: _ones(n), lambda n: {0, n - 1}, 1, (2, None), lambda n: n),
    Family("b", "1", lambda n: f"B{n}", lambda n: _ones(n), lambda n: {0}, 1, (2, None), lambda n: n),
    Family("2b", "2", lambda n: f"B{n}", lambda n: _ones(n, 2), lambda n: {0}, 2, (2, None), lambda n: n),
    Family("c", "1", lambda n: f"C{n}", lambda n: [1] + _ones(n - 2, 2) + [1], lambda n: {1}, 1, (3, None),
           lambda n: n),
    Family("1/2d", "1/2", lambda n: f"D{n}", lambda n: _ones(n - 2) + [HALF, HALF], lambda n: {0}, 1, (4, None),
           lambda n: n),
    Family("d", "1", lambda n: f"D{n}", lambda n: _ones(n - 2, 2) + [1, 1], lambda n: {0}, 2, (4, None),
           lambda n: n),
    Family("1/2d2", "1/2", lambda n: "A1xA1", lambda n: [HALF, HALF], lambda n: {0, 1}, 1, (2, 2), _fixed(2)),
    Family("d2", "1", lambda n: "A1xA1", lambda n: [1, 1], lambda n: {0, 1}, 2, (2, 2), _fixed(2)),
    Family("1/2d3", "1/2", lambda n: "A3", lambda n: [HALF, 1, HALF], lambda n: {1}, 1, (3, 3), _fixed(3)),
    Family("d3", "1", lambda n: "A3", lambda n: [1, 2, 1], lambda n: {1}, 2, (3, 3), _fixed(3)),
    Family("f4", "1", lambda n: "F4", lambda n: [1, 2, 3, 2], lambda n: {3}, 1, (4, 4), _fixed(4)),
    Family("g2", "1", lambda n: "G2", lambda n: [2, 1], lambda n: {0}, 1, (2, 2), _fixed(2)),
    Family("2g2", "2", lambda n: "G2", lambda n: [4, 2], lambda n: {0}, 2, (2, 2), _fixed(2)),
    Family("1/2b3'", "1/2", lambda n: "B3", lambda n: [HALF, 1, Fraction(3, 2)], lambda n: {2}, 1, (3, 3),
           _fixed(3)),
    Family("b3'", "1", lambda n: "B3", lambda n: [1, 2, 3], lambda n: {2}, 2, (3, 3), _fixed(3)),
    Family("ba0", "i", lambda n: "", None, lambda n: set(), None, (0, 0), _fixed(0)),
    Family("ba", "i", lambda n: f"A{n}", None, lambda n: {0}, 1, (1, None), lambda n: n),
    # bold c_n: decorated node is the short end alpha_1 of C_n
    Family("bc", "i", lambda n: f"C{n}", None, lambda n: {0}, 1, (2, None), lambda n: n),
)

FAMILIES = {f.name: f for f in _FAMILIES}
HOMOGENEOUS_FAMILIES = tuple(f.name for f in _FAMILIES if f.factor != "i")
INHOMOGENEOUS_FAMILIES = tuple(f.name for f in _FAMILIES if f.factor == "i")

# the families whose name carries no rank subscript
_FIXED_NAMES = {"a1", "2a1", "1/2d2", "d2", "1/2d3", "d3", "f4", "g2", "2g2", "1/2b3'", "b3'", "ba0"}


@dataclass(frozen=True)
class LocalDiagram:
    family: str
    rank: int
    support: DynkinDiagram
    factor: str
    omega: tuple[Fraction, ...] | None
    decorated: frozenset[int]
    nd: int | None

    @property
    def homogeneous(self) -> bool:
        return self.factor != "i"

    @property
    def label(self) -> str:
        if self.family in _FIXED_NAMES:
            return self.family
        return f"{self.family}{self.rank}"

    @property
    def tied(self) -> bool:
        """d2 and 1/2d2 live on two components but form a single model."""
        return self.family in ("d2", "1/2d2")

    def pairings(self) -> RationalFunctional:
        """<omega, alpha^vee> on the support (partial for inhomogeneous entries)."""
        n = self.support.n
        if self.omega is not None:
            return rootsys.pairing_vector(self.omega, self.support)
        return RationalFunctional.from_map(n, {i: 1 for i in self.decorated}, defined=range(n))

    def to_json(self) -> dict:
        out = {
            "name": self.label,
            "family": self.family,
            "rank": self.rank,
            "support": self.support.tag,
            "homogeneous": self.homogeneous,
            "factor": self.factor,
            "decorated": sorted(self.decorated),
            "nD": self.nd,
        }
        if self.omega is not None:
            out["omega"] = {str(i): str(x) for i, x in enumerate(self.omega)}
        else:
            out["omega_pairings"] = {str(i): str(x) for i, x in enumerate(self.pairings().coeffs)}
        return out


def _legal_rank(fam: Family, n: int) -> bool:
    lo, hi = fam.ranks
    return n >= lo and (hi is None or n <= hi)


@lru_cache(maxsize=None)
def entry(family: str, rank: int | None = None) -> LocalDiagram:
    """Instantiate one catalog entry and cross-check it against its weight."""
    fam = FAMILIES[family]
    if rank is None:
        rank = fam.ranks[0]
    if not _legal_rank(fam, rank):
        raise ValueError(f"{family} is not defined at rank {rank}")
    support = rootsys.parse_host(fam.support(rank))
    omega = None if fam.omega is None else tuple(Fraction(x) for x in fam.omega(rank))
    e = LocalDiagram(family, rank, support, fam.factor, omega, frozenset(fam.decorated(rank)), fam.nd)
    problems = verify_entry(e)
    if problems:
        raise CatalogError("; ".join(problems))
    return e


def derived_decorated(e: LocalDiagram) -> frozenset[int]:
    p = e.pairings()
    return frozenset(i for i in e.support.nodes if p[i] > 0)


def verify_entry(e: LocalDiagram) -> list[str]:
    """Return the list of ways in which an entry is inconsistent."""
    out = []
    p = e.pairings()
    if derived_decorated(e) != e.decorated:
        out.append(f"{e.label}: decorated set {sorted(e.decorated)} but omega is positive on "
                   f"{sorted(derived_decorated(e))}")
    if e.support.n:
        values = {p[i] for i in e.decorated}
        if values != {Fraction(e.nd)}:
            out.append(f"{e.label}: nD is {e.nd} but pairings on decorated nodes are "
                       f"{sorted(str(v) for v in values)}")
        rest = [p[i] for i in e.support.nodes if i not in e.decorated]
        if any(v != 0 for v in rest):
            out.append(f"{e.label}: omega pairs nonzero with an undecorated support node")
    if e.homogeneous and e.support.n and not e.tied:
        if rootsys.connected_closure(e.decorated, e.support.nodes, e.support) != frozenset(e.support.nodes):
            out.append(f"{e.label}: support is not the closure of the decorated set")
    return out


def catalog(max_rank: int = 8) -> list[LocalDiagram]:
    """Every entry whose support has at most ``max_rank`` nodes."""
    out = []
    for fam in _FAMILIES:
        lo, hi = fam.ranks
        top = max_rank if hi is None else min(hi, max_rank)
        for n in range(lo, top + 1):
            if fam.size(n) <= max_rank:
                out.append(entry(fam.name, n))
    return out


@lru_cache(maxsize=None)
def _entries_by_shape(size: int, factor: str) -> tuple[LocalDiagram, ...]:
    return tuple(e for e in catalog(max(size, 1)) if e.support.n == size and e.factor == factor)


@dataclass(frozen=True)
class Match:
    """A recognized local diagram: ``embedding[j]`` is the host node playing
    support node j of ``entry``."""

    entry: LocalDiagram
    embedding: tuple[int, ...]

    @property
    def decorated_nodes(self) -> frozenset[int]:
        return frozenset(self.embedding[j] for j in self.entry.decorated)


@lru_cache(maxsize=200_000)
def _recognize_local(sub: rootsys.Cartan, sprime: tuple[int, ...], factor: str):
    size = len(sub)
    if size == 0:
        return (entry("ba0"), ()) if factor == "i" and not sprime else None
    if not sprime or len(sprime) > 2:
        return None
    colors = [1 if i in sprime else 0 for i in range(size)]
    found = None
    for e in _entries_by_shape(size, factor):
        if len(e.decorated) != len(sprime):
            continue
        ecolors = [1 if j in e.decorated else 0 for j in range(size)]
        for iso in rootsys.isomorphisms(e.support.cartan, sub, ecolors, colors):
            if found is not None and found[0] != e:
                raise CatalogError(f"ambiguous recognition: {found[0].label} and {e.label}")
            found = (e, iso)
            break
    return found


def recognize(host: DynkinDiagram, sub_nodes, sprime, factor: str) -> Match | None:
    """Match the decorated subdiagram (sub_nodes, sprime, factor) of ``host``
    against the catalog, or return None."""
    factor = normalize_factor(factor)
    nodes = tuple(sorted(sub_nodes))
    sp = frozenset(sprime)
    local = tuple(i for i, x in enumerate(nodes) if x in sp)
    if len(local) != len(sp):
        return None
    sub = tuple(tuple(host.cartan[i][j] for j in nodes) for i in nodes)
    res = _recognize_local(sub, local, factor)
    if res is None:
        return None
    e, iso = res
    return Match(e, tuple(nodes[k] for k in iso))


def weight_pairings(e: LocalDiagram, embedding: Sequence[int], host: DynkinDiagram) -> RationalFunctional:
    """Pairings of the entry's weight, pushed into the host, against every host coroot.

    Inhomogeneous entries give a partial vector defined only on the support.
    """
    if e.omega is None:
        values = {embedding[j]: 1 for j in e.decorated}
        return RationalFunctional.from_map(host.n, values, defined=embedding)
    return rootsys.pairing_vector(push_omega(e, embedding, host), host)


def push_omega(e: LocalDiagram, embedding: Sequence[int], host: DynkinDiagram) -> tuple[Fraction, ...]:
    """Root coordinates of the entry's weight as a vector over host nodes."""
    w = [Fraction(0)] * host.n
    for j, x in enumerate(e.omega):
        w[embedding[j]] = x
    return tuple(w)


def self_test(entries: Sequence[LocalDiagram] | None = None) -> list[str]:
    """Cross-check stored decorations and n_D against the weights; list failures."""
    if entries is None:
        entries = catalog(12)
    problems = []
    for e in entries:
        problems.extend(verify_entry(e))
    return problems


def iter_entries(max_size: int) -> Iterator[LocalDiagram]:
    for e in catalog(max_size):
        if e.support.n <= max_size:
            yield e
