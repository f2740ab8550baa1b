"""Built-in consistency checks run by ``rankone selftest``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import classify, gluing, linalg, localmodels, realize, rootsys


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


# Affine label table, one row per family.  ``tag(l)`` is the host string for
# the member with l + 1 nodes, ``labels(l)`` its labels in host node order,
# ``dual`` the family whose labels are the colabels (with ``reverse`` when the
# dual numbering runs backwards), ``ranks`` the values of l to check.
@dataclass(frozen=True)
class LabelRow:
    family: str
    tag: Callable[[int], str]
    labels: Callable[[int], tuple[int, ...]]
    dual: str
    ranks: tuple[int, ...]
    reverse: bool = False


def _row(*parts) -> tuple[int, ...]:
    out = []
    for p in parts:
        out.extend(p if isinstance(p, (list, tuple)) else [p])
    return tuple(out)


LABEL_TABLE = {
    r.family: r
    for r in (
        LabelRow("A1~1", lambda l: "A1~1", lambda l: (1, 1), "A1~1", (1,)),
        LabelRow("Al~1", lambda l: f"A{l}~1", lambda l: _row([1] * (l + 1)), "Al~1", (2, 3, 8)),
        LabelRow("Bl~1", lambda l: f"B{l}~1", lambda l: _row(1, 1, [2] * (l - 1)), "A2l-1~2", (3, 4, 8)),
        LabelRow("Cl~1", lambda l: f"C{l}~1", lambda l: _row(1, [2] * (l - 1), 1), "Dl+1~2", (2, 3, 8)),
        LabelRow("Dl~1", lambda l: f"D{l}~1", lambda l: _row(1, 1, [2] * (l - 3), 1, 1), "Dl~1", (4, 5, 8)),
        LabelRow("E6~1", lambda l: "E6~1", lambda l: (1, 1, 2, 2, 3, 2, 1), "E6~1", (6,)),
        LabelRow("E7~1", lambda l: "E7~1", lambda l: (1, 2, 2, 3, 4, 3, 2, 1), "E7~1", (7,)),
        LabelRow("E8~1", lambda l: "E8~1", lambda l: (1, 2, 3, 4, 6, 5, 4, 3, 2), "E8~1", (8,)),
        LabelRow("F4~1", lambda l: "F4~1", lambda l: (1, 2, 3, 4, 2), "E6~2", (4,)),
        LabelRow("G2~1", lambda l: "G2~1", lambda l: (1, 2, 3), "D4~3", (2,)),
        LabelRow("A2~2", lambda l: "A2~2", lambda l: (2, 1), "A2~2", (1,), reverse=True),
        LabelRow("A2l~2", lambda l: f"A{2 * l}~2", lambda l: _row([2] * l, 1), "A2l~2", (2, 3, 8), reverse=True),
        LabelRow("A2l-1~2", lambda l: f"A{2 * l - 1}~2", lambda l: _row(1, 1, [2] * (l - 2), 1), "Bl~1", (3, 4, 8)),
        LabelRow("Dl+1~2", lambda l: f"D{l + 1}~2", lambda l: _row([1] * (l + 1)), "Cl~1", (2, 3, 8)),
        LabelRow("E6~2", lambda l: "E6~2", lambda l: (1, 2, 3, 2, 1), "F4~1", (4,)),
        LabelRow("D4~3", lambda l: "D4~3", lambda l: (1, 2, 1), "G2~1", (2,)),
    )
}


def expected_colabels(row: LabelRow, rank: int) -> tuple[int, ...]:
    k = LABEL_TABLE[row.dual].labels(rank)
    return tuple(reversed(k)) if row.reverse else k


def _null_labels(cartan) -> tuple[int, ...]:
    (v,) = linalg.nullspace([list(r) for r in cartan])
    v = linalg.primitive_integer(v)
    return tuple(abs(int(x)) for x in v)


def check_labels(colabel_fn: Callable = rootsys.colabels) -> list[Check]:
    """Labels against the frozen table; colabels against the dual family's
    labels and against the labels of the transposed matrix."""
    out = []
    for row in LABEL_TABLE.values():
        for l in row.ranks:
            tag = row.tag(l)
            d = rootsys.parse_host(tag)
            got = rootsys.labels(d)
            want = row.labels(l)
            out.append(Check(f"labels {tag}", got == want, "" if got == want else f"{got} != {want}"))
            co = tuple(colabel_fn(d))
            dual = expected_colabels(row, l)
            transposed = _null_labels(rootsys.transpose_diagram(d))
            ok = co == dual == transposed
            out.append(Check(f"colabels {tag}", ok, "" if ok else f"{co} vs dual {dual} vs transposed {transposed}"))
    return out


def check_catalog(entries: Sequence[localmodels.LocalDiagram] | None = None) -> list[Check]:
    problems = localmodels.self_test(entries)
    if not problems:
        return [Check("catalog decorations and n_D", True)]
    return [Check("catalog decorations and n_D", False, p) for p in problems]


def check_counts() -> list[Check]:
    out = []
    a11 = rootsys.parse_host("A1~1")
    a22 = rootsys.parse_host("A2~2")
    prim = classify.enumerate_primitive(a11) + classify.enumerate_primitive(a22)
    grads = sorted(abs(realize.gradient_coordinates(realize.reconstruct_weight(d).coeffs, d.host)[0]) for d in prim)
    want = sorted(map(Fraction, ("1/2", "1", "2", "1/2", "1")))
    out.append(Check("A1~1 and A2~2 primitive weights", grads == want, f"{[str(g) for g in grads]}"))
    for tag, n in (("A1~1", 7), ("A2~1", 11)):
        got = len(classify.enumerate_spherical(rootsys.parse_host(tag)))
        out.append(Check(f"{tag} spherical count", got == n, f"{got} (expected {n})"))
    return out


def check_oracle(max_nodes: int = 4) -> list[Check]:
    """Enumeration against the gluing construction on hosts with few nodes."""
    table_ok = gluing.gluing_table(8) == gluing.derived_gluing_table(8)
    out = [Check("gluing table matches catalog", table_ok)]
    found = gluing.oracle_primitive(max_nodes)
    hosts = rootsys.finite_host_tags(max_nodes) + rootsys.affine_irreducible_tags(max_nodes - 1)
    bad = []
    for tag in hosts:
        enum = {classify.diagram_key(d) for d in classify.enumerate_primitive(rootsys.parse_host(tag))}
        if enum != set(found.get(tag, {})):
            bad.append(tag)
    out.append(Check(f"gluing oracle on {len(hosts)} hosts", not bad, ", ".join(bad)))
    return out


def run(entries=None, colabel_fn: Callable = rootsys.colabels, oracle_nodes: int = 4) -> list[Check]:
    return check_labels(colabel_fn) + check_catalog(entries) + check_counts() + check_oracle(oracle_nodes)
