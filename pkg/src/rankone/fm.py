"""Exact feasibility of small systems of linear (in)equalities.

Equalities are eliminated first by Gaussian elimination.  The remaining
inequalities are handled by Fourier-Motzkin elimination, with strict ones
turned into ``>= eps`` for one extra variable eps that is then maximized.
A point is recovered by back-substitution, always choosing the midpoint of
the feasible interval (or one step inside a half-line), so the answer is a
deterministic function of the input.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg

EQ, GE, GT = "==", ">=", ">"


@dataclass(frozen=True)
class Constraint:
    """``sum(coeffs[i] * x[i]) + const  <kind>  0``."""

    coeffs: tuple[Fraction, ...]
    const: Fraction
    kind: str

    @staticmethod
    def make(coeffs: Sequence, const=0, kind: str = GE) -> "Constraint":
        if kind not in (EQ, GE, GT):
            raise ValueError(kind)
        return Constraint(tuple(Fraction(x) for x in coeffs), Fraction(const), kind)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * b for a, b in zip(self.coeffs, x)), self.const)

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.value(x)
        return v == 0 if self.kind == EQ else (v >= 0 if self.kind == GE else v > 0)


def _normalize(row: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    scale = max((abs(a) for a in row[:-1]), default=0) or abs(row[-1])
    if scale == 0:
        return row
    return tuple(a / scale for a in row)


def _eliminate(rows: list[tuple], v: int) -> list[tuple]:
    pos = [r for r in rows if r[v] > 0]
    neg = [r for r in rows if r[v] < 0]
    out = {_normalize(r) for r in rows if r[v] == 0}
    for p in pos:
        for q in neg:
            a, b = p[v], -q[v]
            out.add(_normalize(tuple(b * x + a * y for x, y in zip(p, q))))
    return sorted(out)


def _interval(rows: list[tuple], v: int, values: dict[int, Fraction]):
    lo, hi = None, None
    for r in rows:
        rest = r[-1] + sum((r[j] * values[j] for j in values if j != v and r[j]), Fraction(0))
        a = r[v]
        if a > 0:
            bound = -rest / a
            lo = bound if lo is None or bound > lo else lo
        elif a < 0:
            bound = rest / -a
            hi = bound if hi is None or bound < hi else hi
        elif rest < 0:
            return None
    return lo, hi


def _pick(lo, hi) -> Fraction:
    if lo is not None and hi is not None:
        return (lo + hi) / 2
    if lo is not None:
        return lo + 1
    if hi is not None:
        return hi - 1
    return Fraction(0)


def feasible_point(nvars: int, constraints: Sequence[Constraint]) -> list[Fraction] | None:
    """A point satisfying every constraint, or None if there is none."""
    eqs = [c for c in constraints if c.kind == EQ]
    ineqs = [c for c in constraints if c.kind != EQ]

    # parametrize the affine solution space of the equalities: x = x0 + B z
    if eqs:
        a = [list(c.coeffs) for c in eqs]
        b = [-c.const for c in eqs]
        x0 = linalg.solve(a, b)
        if x0 is None:
            return None
        basis = linalg.nullspace(a)
    else:
        x0 = [Fraction(0)] * nvars
        basis = [[Fraction(int(i == j)) for i in range(nvars)] for j in range(nvars)]
    k = len(basis)
    eps = k  # index of the slack variable

    rows = []
    for c in ineqs:
        coeffs = [sum((c.coeffs[i] * basis[j][i] for i in range(nvars)), Fraction(0)) for j in range(k)]
        const = c.value(x0)
        slack = Fraction(-1) if c.kind == GT else Fraction(0)
        rows.append(tuple(coeffs) + (slack, const))
    # 0 < eps <= 1
    rows.append(tuple([Fraction(0)] * k) + (Fraction(-1), Fraction(1)))

    stages = [rows]
    for v in range(k):
        rows = _eliminate(rows, v)
        stages.append(rows)

    # choose eps as large as possible (half of its upper bound keeps it interior)
    bounds = _interval(rows, eps, {})
    if bounds is None:
        return None
    lo, hi = bounds
    lo = max(lo, Fraction(0)) if lo is not None else Fraction(0)
    if hi is None or hi <= lo:
        return None
    values = {eps: (lo + hi) / 2}
    for v in reversed(range(k)):
        bounds = _interval(stages[v], v, values)
        if bounds is None:
            return None
        lo_v, hi_v = bounds
        if lo_v is not None and hi_v is not None and lo_v > hi_v:
            return None
        values[v] = _pick(lo_v, hi_v)
    z = [values[j] for j in range(k)]
    x = [x0[i] + sum((basis[j][i] * z[j] for j in range(k)), Fraction(0)) for i in range(nvars)]
    if not all(c.holds(x) for c in constraints):
        raise ArithmeticError("Fourier-Motzkin back-substitution produced an infeasible point")
    return x
