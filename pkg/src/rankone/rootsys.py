"""Finite and affine Dynkin diagrams encoded as generalized Cartan matrices.

Convention: ``cartan[i][j] = <alpha_j, alpha_i^vee>``.  With this choice the
labels of an affine diagram are its right null vector and the colabels its
left null vector.

Node indices are 0-based.  Affine diagrams put the extra node alpha_0 at
index 0, finite ones follow Bourbaki so that index ``i`` is alpha_{i+1}.
Every diagram also carries display names: the alpha subscript, with one
prime per product factor after the first ("0", "1", "0'", "1'", ...).
"""
from __future__ import annotations

import itertools

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import linalg

Cartan = tuple[tuple[int, ...], ...]

FINITE = "finite"
AFFINE = "affine"


class HostError(ValueError):
    """Raised for an unknown or illegal family/rank combination."""


# ---------------------------------------------------------------------------
# Building standard Cartan matrices


def _from_edges(n: int, edges: Iterable[tuple[int, int, int, int]]) -> Cartan:
    """Edges are (i, j, A[i][j], A[j][i])."""
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i, j, aij, aji in edges:
        a[i][j] = aij
        a[j][i] = aji
    return tuple(tuple(row) for row in a)


def _simple(i: int, j: int) -> tuple[int, int, int, int]:
    return (i, j, -1, -1)


def _path(lo: int, hi: int) -> list[tuple[int, int, int, int]]:
    return [_simple(i, i + 1) for i in range(lo, hi)]


def _finite_edges(letter: str, n: int) -> list[tuple[int, int, int, int]]:
    if letter == "A":
        return _path(0, n - 1)
    if letter == "B":
        return _path(0, n - 2) + [(n - 2, n - 1, -1, -2)]
    if letter == "C":
        return _path(0, n - 2) + [(n - 2, n - 1, -2, -1)]
    if letter == "D":
        return _path(0, n - 2) + [_simple(n - 3, n - 1)]
    if letter == "E":
        return [_simple(0, 2), _simple(1, 3)] + _path(2, n - 1)
    if letter == "F":
        return [_simple(0, 1), (1, 2, -1, -2), _simple(2, 3)]
    if letter == "G":
        # alpha_1 short, alpha_2 long
        return [(0, 1, -3, -1)]
    raise HostError(letter)


def _shift(edges, k=1):
    return [(i + k, j + k, a, b) for i, j, a, b in edges]


def _affine_edges(letter: str, n: int, twist: int) -> tuple[int, list]:
    """Return (number of nodes, edges) for the Kac name letter_n^(twist)."""
    if twist == 1:
        ell = n
        if letter == "A":
            if n == 1:
                return 2, [(0, 1, -2, -2)]
            return n + 1, _path(0, n) + [_simple(n, 0)]
        if letter == "B":
            return n + 1, [_simple(0, 2), _simple(1, 2)] + _path(2, n - 1) + [(n - 1, n, -1, -2)]
        if letter == "C":
            return n + 1, [(0, 1, -1, -2)] + _path(1, n - 1) + [(n - 1, n, -2, -1)]
        if letter == "D":
            return n + 1, [_simple(0, 2), _simple(1, 2)] + _path(2, n - 1) + [_simple(n - 2, n)]
        if letter == "E":
            attach = {6: 2, 7: 1, 8: 8}[n]
            return n + 1, _shift(_finite_edges("E", n)) + [_simple(0, attach)]
        if letter == "F":
            return 5, [_simple(0, 1)] + _shift(_finite_edges("F", 4))
        if letter == "G":
            # alpha_1 long, alpha_2 short, labels (1, 2, 3)
            return 3, [_simple(0, 1), (1, 2, -1, -3)]
    if twist == 2:
        if letter == "A" and n == 2:
            return 2, [(0, 1, -4, -1)]
        if letter == "A" and n % 2 == 0:
            ell = n // 2
            return ell + 1, [(0, 1, -2, -1)] + _path(1, ell - 1) + [(ell - 1, ell, -2, -1)]
        if letter == "A":
            ell = (n + 1) // 2
            return ell + 1, [_simple(0, 2), _simple(1, 2)] + _path(2, ell - 1) + [(ell - 1, ell, -2, -1)]
        if letter == "D":
            ell = n - 1
            return ell + 1, [(0, 1, -2, -1)] + _path(1, ell - 1) + [(ell - 1, ell, -1, -2)]
        if letter == "E":
            return 5, [_simple(0, 1), _simple(1, 2), (2, 3, -2, -1), _simple(3, 4)]
    if twist == 3:
        return 3, [_simple(0, 1), (1, 2, -3, -1)]
    raise HostError(f"{letter}{n}~{twist}")


_LEGAL = {
    # (letter, twist): (predicate on n, human-readable range)
    ("A", 0): (lambda n: n >= 1, "n >= 1"),
    ("B", 0): (lambda n: n >= 2, "n >= 2"),
    ("C", 0): (lambda n: n >= 2, "n >= 2"),
    ("D", 0): (lambda n: n >= 4, "n >= 4"),
    ("E", 0): (lambda n: 6 <= n <= 8, "n in {6, 7, 8}"),
    ("F", 0): (lambda n: n == 4, "n = 4"),
    ("G", 0): (lambda n: n == 2, "n = 2"),
    ("A", 1): (lambda n: n >= 1, "n >= 1"),
    ("B", 1): (lambda n: n >= 3, "n >= 3"),
    ("C", 1): (lambda n: n >= 2, "n >= 2"),
    ("D", 1): (lambda n: n >= 4, "n >= 4"),
    ("E", 1): (lambda n: 6 <= n <= 8, "n in {6, 7, 8}"),
    ("F", 1): (lambda n: n == 4, "n = 4"),
    ("G", 1): (lambda n: n == 2, "n = 2"),
    ("A", 2): (lambda n: n == 2 or (n >= 4 and n % 2 == 0) or (n >= 5 and n % 2 == 1),
               "n = 2, even n >= 4 (A_2n), or odd n >= 5 (A_2n-1)"),
    ("D", 2): (lambda n: n >= 3, "n >= 3"),
    ("E", 2): (lambda n: n == 6, "n = 6"),
    ("D", 3): (lambda n: n == 4, "n = 4"),
}

_TAG_RE = re.compile(r"^([A-G])(\d+)(?:~([123]))?$")


def _check_legal(letter: str, n: int, twist: int) -> None:
    rule = _LEGAL.get((letter, twist))
    kind = "finite" if twist == 0 else f"twist {twist}"
    if rule is None:
        raise HostError(f"no {kind} family of type {letter}")
    ok, text = rule
    if not ok(n):
        raise HostError(f"{letter}{n} ({kind}) is not legal; need {text}")


@lru_cache(maxsize=None)
def _irreducible(tag: str) -> tuple[Cartan, bool]:
    m = _TAG_RE.match(tag)
    if not m:
        raise HostError(f"malformed host factor {tag!r}; expected e.g. A3, F4~1, D4~2")
    letter, n, twist = m.group(1), int(m.group(2)), int(m.group(3) or 0)
    _check_legal(letter, n, twist)
    if twist == 0:
        return _from_edges(n, _finite_edges(letter, n)), False
    size, edges = _affine_edges(letter, n, twist)
    return _from_edges(size, edges), True


# ---------------------------------------------------------------------------
# The diagram type


@dataclass(frozen=True)
class Factor:
    """One irreducible component: its type tag and the host nodes carrying
    the standard nodes 0, 1, ... of that type, in order."""

    tag: str
    affine: bool
    nodes: tuple[int, ...]


def _factor_names(factors: Sequence[Factor], n: int) -> tuple[str, ...]:
    names = [""] * n
    for k, f in enumerate(factors):
        base = 0 if f.affine else 1
        for j, node in enumerate(f.nodes):
            names[node] = f"{j + base}" + "'" * k
    return tuple(names)


@dataclass(frozen=True)
class DynkinDiagram:
    tag: str
    cartan: Cartan
    factors: tuple[Factor, ...]
    names: tuple[str, ...] = ()
    neighbors: tuple[frozenset[int], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        n = len(self.cartan)
        for i, row in enumerate(self.cartan):
            if len(row) != n or row[i] != 2:
                raise ValueError("Cartan matrix must be square with 2 on the diagonal")
            for j, x in enumerate(row):
                if i != j and (x > 0 or (x == 0) != (self.cartan[j][i] == 0)):
                    raise ValueError(f"bad off-diagonal Cartan entry at ({i}, {j})")
        if not self.names:
            object.__setattr__(self, "names", _factor_names(self.factors, n))
        nb = tuple(frozenset(j for j in range(n) if j != i and self.cartan[i][j]) for i in range(n))
        object.__setattr__(self, "neighbors", nb)

    @property
    def n(self) -> int:
        return len(self.cartan)

    @property
    def nodes(self) -> range:
        return range(len(self.cartan))

    @property
    def is_finite(self) -> bool:
        return all(not f.affine for f in self.factors)

    @property
    def is_affine_irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0].affine

    @property
    def is_affine_product(self) -> bool:
        return len(self.factors) > 1 and all(f.affine for f in self.factors)

    @property
    def is_mixed(self) -> bool:
        kinds = {f.affine for f in self.factors}
        return len(kinds) > 1

    def factor_of(self, node: int) -> Factor:
        for f in self.factors:
            if node in f.nodes:
                return f
        raise KeyError(node)

    def node(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"host {self.tag} has no node {name!r}; nodes are {', '.join(self.names)}") from None

    def to_json(self) -> dict:
        ranks, twists = [], []
        for f in self.factors:
            m = _TAG_RE.match(f.tag)
            ranks.append(int(m.group(2)))
            twists.append(int(m.group(3) or 0))
        return {
            "family": self.tag,
            "rank": sum(ranks),
            "twist": twists[0] if len(twists) == 1 else 0,
            "cartan": [list(r) for r in self.cartan],
        }

    @staticmethod
    def from_json(obj: dict) -> "DynkinDiagram":
        d = parse_host(obj["family"])
        if [list(r) for r in d.cartan] != obj["cartan"]:
            raise HostError(f"Cartan matrix does not match family {obj['family']}")
        return d


EMPTY = DynkinDiagram("", (), ())


def _block_diag(blocks: Sequence[Cartan]) -> Cartan:
    n = sum(len(b) for b in blocks)
    a = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                a[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in a)


@lru_cache(maxsize=None)
def parse_host(spec: str) -> DynkinDiagram:
    """Build a host from a string such as ``F4~1``, ``A2xB3`` or ``A1~1xA1~1``."""
    spec = spec.strip()
    if not spec:
        return EMPTY
    parts = spec.split("x")
    blocks, factors, off = [], [], 0
    for p in parts:
        cartan, affine = _irreducible(p)
        blocks.append(cartan)
        factors.append(Factor(p, affine, tuple(range(off, off + len(cartan)))))
        off += len(cartan)
    return DynkinDiagram(spec, _block_diag(blocks), tuple(factors))


def build_host(family: str, rank: int, twist: int = 0) -> DynkinDiagram:
    """Irreducible host from its letter (or E6/F4/G2 style name), rank and twist.

    ``twist`` is 0 for finite types and 1, 2 or 3 for affine ones; ``rank`` is
    the subscript of the usual name, so ``build_host("A", 2, 2)`` is A_2^(2).
    """
    letter = family[0].upper()
    if len(family) > 1 and int(family[1:]) != rank:
        raise HostError(f"family {family} has fixed rank {family[1:]}")
    tag = f"{letter}{rank}" + (f"~{twist}" if twist else "")
    return parse_host(tag)


def product(d1: DynkinDiagram, d2: DynkinDiagram) -> DynkinDiagram:
    if d2.n == 0:
        return d1
    if d1.n == 0:
        return d2
    shifted = tuple(Factor(f.tag, f.affine, tuple(x + d1.n for x in f.nodes)) for f in d2.factors)
    return DynkinDiagram(f"{d1.tag}x{d2.tag}", _block_diag([d1.cartan, d2.cartan]), d1.factors + shifted)


# ---------------------------------------------------------------------------
# Labels, colabels and pairings


def _require_affine_irreducible(d: DynkinDiagram) -> None:
    if not d.is_affine_irreducible:
        raise ValueError("labels defined only for irreducible affine diagrams")


def _positive_null(matrix) -> tuple[int, ...]:
    basis = linalg.nullspace(matrix)
    if len(basis) != 1:
        raise ValueError("Cartan matrix does not have corank one")
    v = linalg.primitive_integer(basis[0])
    if any(x <= 0 for x in v):
        raise ValueError("null vector is not positive")
    return v


@lru_cache(maxsize=None)
def _labels(cartan: Cartan) -> tuple[int, ...]:
    return _positive_null(cartan)


@lru_cache(maxsize=None)
def _colabels(cartan: Cartan) -> tuple[int, ...]:
    return _positive_null(linalg.transpose(cartan))


def labels(d: DynkinDiagram) -> tuple[int, ...]:
    """Coprime positive k with A k = 0."""
    _require_affine_irreducible(d)
    return _labels(d.cartan)


def colabels(d: DynkinDiagram) -> tuple[int, ...]:
    """Coprime positive k with k A = 0, i.e. the labels of the dual diagram."""
    _require_affine_irreducible(d)
    return _colabels(d.cartan)


def factor_colabels(d: DynkinDiagram) -> dict[int, int]:
    """Colabels of every node lying in an affine factor."""
    out = {}
    for f in d.factors:
        if f.affine:
            sub = tuple(tuple(d.cartan[i][j] for j in f.nodes) for i in f.nodes)
            for node, k in zip(f.nodes, _colabels(sub)):
                out[node] = k
    return out


def transpose_diagram(d: DynkinDiagram) -> Cartan:
    return tuple(zip(*d.cartan))


@dataclass(frozen=True)
class RationalFunctional:
    """Rational coefficients indexed by host node.

    ``defined`` lists the nodes where a value is actually prescribed; ``None``
    means all of them.  Partial vectors describe inhomogeneous local models,
    whose weight is only pinned down on the support.
    """

    coeffs: tuple[Fraction, ...]
    defined: frozenset[int] | None = None

    @staticmethod
    def zero(n: int) -> "RationalFunctional":
        return RationalFunctional(tuple(Fraction(0) for _ in range(n)))

    @staticmethod
    def from_map(n: int, values: dict[int, object], defined=None) -> "RationalFunctional":
        return RationalFunctional(tuple(Fraction(values.get(i, 0)) for i in range(n)),
                                  None if defined is None else frozenset(defined))

    @property
    def partial(self) -> bool:
        return self.defined is not None

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "RationalFunctional") -> "RationalFunctional":
        return RationalFunctional(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "RationalFunctional":
        return RationalFunctional(tuple(-a for a in self.coeffs), self.defined)

    def scale(self, s) -> "RationalFunctional":
        return RationalFunctional(tuple(a * s for a in self.coeffs), self.defined)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.coeffs) if a != 0)


def pairing(w: Sequence, i: int, d: DynkinDiagram) -> Fraction:
    """<w, alpha_i^vee> for w in simple-root coordinates."""
    row = d.cartan[i]
    return sum((Fraction(w[j]) * row[j] for j in range(d.n) if w[j]), Fraction(0))


def pairing_vector(w: Sequence, d: DynkinDiagram) -> RationalFunctional:
    return RationalFunctional(tuple(pairing(w, i, d) for i in d.nodes))


# ---------------------------------------------------------------------------
# Graph utilities


def connected_closure(sp: Iterable[int], ambient: Iterable[int], d: DynkinDiagram) -> frozenset[int]:
    """Union of the components of the subgraph on ``ambient`` that meet ``sp``."""
    amb = frozenset(ambient)
    seen = set(x for x in sp if x in amb)
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for y in d.neighbors[x]:
            if y in amb and y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def components(nodes: Iterable[int], d: DynkinDiagram) -> list[frozenset[int]]:
    """Connected components of the subgraph induced on ``nodes``, ordered by least element."""
    rest = set(nodes)
    out = []
    while rest:
        start = min(rest)
        comp = connected_closure([start], rest, d)
        out.append(comp)
        rest -= comp
    return out


def _submatrix(cartan: Cartan, nodes: Sequence[int]) -> Cartan:
    return tuple(tuple(cartan[i][j] for j in nodes) for i in nodes)


def _invariant(a: Cartan, i: int, colors) -> tuple:
    nbrs = sorted((a[i][j], a[j][i]) for j in range(len(a)) if j != i and a[i][j])
    return (colors[i] if colors is not None else 0, tuple(nbrs))


def signature(a: Cartan, colors=None) -> tuple:
    """Isomorphism invariant: the sorted multiset of colored node neighborhoods."""
    return tuple(sorted(_invariant(a, i, colors) for i in range(len(a))))


def _search_order(a: Cartan, inv: list) -> list[int]:
    n = len(a)
    rarity: dict = {}
    for x in inv:
        rarity[x] = rarity.get(x, 0) + 1
    order: list[int] = []
    placed = [False] * n
    while len(order) < n:
        start = min((i for i in range(n) if not placed[i]), key=lambda i: (rarity[inv[i]], i))
        queue = deque([start])
        placed[start] = True
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in range(n):
                if y != x and a[x][y] and not placed[y]:
                    placed[y] = True
                    queue.append(y)
    return order


def isomorphisms(a: Cartan, b: Cartan, colors_a=None, colors_b=None) -> Iterator[tuple[int, ...]]:
    """All maps p with b[p[i]][p[j]] == a[i][j] (and matching node colors)."""
    n = len(a)
    if n != len(b):
        return
    inv_a = [_invariant(a, i, colors_a) for i in range(n)]
    inv_b = [_invariant(b, i, colors_b) for i in range(n)]
    if sorted(inv_a) != sorted(inv_b):
        return
    order = _search_order(a, inv_a)
    image = [-1] * n
    used = [False] * n

    def extend(k: int):
        if k == n:
            yield tuple(image)
            return
        i = order[k]
        for p in range(n):
            if used[p] or inv_b[p] != inv_a[i]:
                continue
            ok = True
            for j in order[:k]:
                q = image[j]
                if a[i][j] != b[p][q] or a[j][i] != b[q][p]:
                    ok = False
                    break
            if not ok:
                continue
            image[i] = p
            used[p] = True
            yield from extend(k + 1)
            used[p] = False
        image[i] = -1

    yield from extend(0)


@lru_cache(maxsize=None)
def _automorphisms(cartan: Cartan) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(isomorphisms(cartan, cartan)))


def automorphisms(d: DynkinDiagram) -> tuple[tuple[int, ...], ...]:
    """All node permutations preserving the Cartan matrix (identity first)."""
    return _automorphisms(d.cartan)


# ---------------------------------------------------------------------------
# Classification of Cartan matrices


def _finite_tags(k: int) -> list[str]:
    tags = [f"A{k}"]
    if k >= 2:
        tags.append(f"B{k}")
    if k >= 3:
        tags.append(f"C{k}")
    if k >= 4:
        tags.append(f"D{k}")
    if k in (6, 7, 8):
        tags.append(f"E{k}")
    if k == 4:
        tags.append("F4")
    if k == 2:
        tags.append("G2")
    return tags


def _affine_tags(k: int) -> list[str]:
    ell = k - 1
    if ell < 1:
        return []
    tags = [f"A{ell}~1"]
    if ell >= 3:
        tags.append(f"B{ell}~1")
    if ell >= 2:
        tags.append(f"C{ell}~1")
    if ell >= 4:
        tags.append(f"D{ell}~1")
    if ell in (6, 7, 8):
        tags.append(f"E{ell}~1")
    if ell == 4:
        tags += ["F4~1", "E6~2"]
    if ell == 2:
        tags += ["G2~1", "D4~3"]
    if ell == 1:
        tags.append("A2~2")
    else:
        tags.append(f"A{2 * ell}~2")
        tags.append(f"D{ell + 1}~2")
    if ell >= 3:
        tags.append(f"A{2 * ell - 1}~2")
    return tags


def standard_tags(k: int) -> list[str]:
    """Every finite or affine irreducible type with exactly k nodes."""
    return _finite_tags(k) + _affine_tags(k)


def factor_sort_key(tag: str):
    m = _TAG_RE.match(tag)
    return (m.group(3) is not None, m.group(1), int(m.group(2)), m.group(3) or "")


@lru_cache(maxsize=None)
def _identify_connected(cartan: Cartan) -> tuple[str, tuple[int, ...]] | None:
    """(tag, p) with p[j] = local node playing standard node j, or None."""
    k = len(cartan)
    for tag in standard_tags(k):
        std, _ = _irreducible(tag)
        for iso in isomorphisms(std, cartan):
            return tag, iso
    return None


def identify(cartan: Cartan) -> tuple[str, tuple[Factor, ...]] | None:
    """Classify a Cartan matrix as a product of finite/affine types.

    Returns the canonical tag (factors sorted) and the factor list, or None if
    some component is neither finite nor affine.
    """
    n = len(cartan)
    if n == 0:
        return "", ()
    tmp = DynkinDiagram("?", cartan, (), names=tuple(str(i) for i in range(n)))
    found = []
    for comp in components(range(n), tmp):
        nodes = tuple(sorted(comp))
        res = _identify_connected(_submatrix(cartan, nodes))
        if res is None:
            return None
        tag, iso = res
        found.append(Factor(tag, "~" in tag, tuple(nodes[j] for j in iso)))
    found.sort(key=lambda f: (factor_sort_key(f.tag), min(f.nodes)))
    return "x".join(f.tag for f in found), tuple(found)


def classify_matrix(cartan: Cartan, names: Sequence[str] | None = None) -> DynkinDiagram | None:
    res = identify(cartan)
    if res is None:
        return None
    tag, factors = res
    return DynkinDiagram(tag, cartan, factors, tuple(names) if names else ())


def induced_subdiagram(d: DynkinDiagram, nodes: Iterable[int]) -> tuple[DynkinDiagram, tuple[int, ...]]:
    """Sub-diagram on ``nodes`` (kept in ascending order) and its embedding.

    The embedding maps sub-node i to host node ``emb[i]``; sub-nodes keep the
    host's display names.
    """
    emb = tuple(sorted(nodes))
    if emb == tuple(d.nodes):
        return d, emb
    sub = _submatrix(d.cartan, emb)
    res = classify_matrix(sub, [d.names[i] for i in emb] if emb else None)
    if res is None:
        raise ValueError("sub-diagram is neither finite nor affine")
    return res, emb


def standard_form(d: DynkinDiagram) -> tuple[DynkinDiagram, tuple[int, ...]]:
    """The standard host of d's type and the node map d -> standard."""
    res = identify(d.cartan)
    if res is None:
        raise ValueError("diagram is neither finite nor affine")
    tag, factors = res
    std = parse_host(tag)
    perm = [0] * d.n
    off = 0
    for f in factors:
        for j, node in enumerate(f.nodes):
            perm[node] = off + j
        off += len(f.nodes)
    return std, tuple(perm)


# ---------------------------------------------------------------------------
# Host lists


def finite_irreducible_tags(max_rank: int) -> list[str]:
    return [t for k in range(1, max_rank + 1) for t in _finite_tags(k)]


def affine_irreducible_tags(max_rank: int) -> list[str]:
    """Irreducible affine types of rank (nodes - 1) at most max_rank."""
    return [t for k in range(2, max_rank + 2) for t in _affine_tags(k)]


def finite_host_tags(max_rank: int, max_factors: int = 2) -> list[str]:
    """Finite hosts of total rank <= max_rank with at most ``max_factors`` factors."""
    irr = finite_irreducible_tags(max_rank)
    size = {t: len(_irreducible(t)[0]) for t in irr}
    out = set()
    for k in range(1, max_factors + 1):
        for combo in itertools.combinations_with_replacement(irr, k):
            if sum(size[t] for t in combo) <= max_rank:
                out.add("x".join(sorted(combo, key=factor_sort_key)))
    return sorted(out, key=lambda t: (sum(size[p] for p in t.split("x")), t.count("x"), t))


AFFINE_PRODUCT_HOSTS = ("A1~1xA1~1", "A2~2xA2~2")
