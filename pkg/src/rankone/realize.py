"""Momentum segments for valid diagrams.

A realization is a segment [X1, X2] in the alcove (affine hosts) or in the
dominant chamber (finite hosts) with X2 = X1 + c * omega.  Points are stored
as barycentric coordinates over the alcove vertices P_alpha, normalized so
that sum_alpha k(alpha^vee) alpha^vee(X) = 1, or as coordinates over the
fundamental weights for finite factors.  Every coordinate is an exact
rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import classify, fm, linalg, localmodels, rootsys
from .classify import PrimitiveDiagram, SphericalDiagram
from .rootsys import DynkinDiagram, RationalFunctional


class ContractError(ValueError):
    """A realization was requested for an invalid diagram."""


@dataclass(frozen=True)
class AlcovePoint:
    coords: tuple[Fraction, ...]

    def __getitem__(self, i):
        return self.coords[i]

    @staticmethod
    def from_coroot_values(y: Sequence[Fraction], host: DynkinDiagram) -> "AlcovePoint":
        k = rootsys.factor_colabels(host)
        return AlcovePoint(tuple(Fraction(v) * k.get(i, 1) for i, v in enumerate(y)))


def evaluate_coroot(x: AlcovePoint, i: int, host: DynkinDiagram) -> Fraction:
    """alpha_i^vee(X): t_i / k(alpha_i^vee) on affine factors, the coordinate itself on finite ones."""
    k = rootsys.factor_colabels(host)
    return x.coords[i] / k[i] if i in k else x.coords[i]


def vertex(host: DynkinDiagram, i: int) -> AlcovePoint:
    """The alcove vertex P_i of an irreducible affine host."""
    return AlcovePoint(tuple(Fraction(int(j == i)) for j in host.nodes))


@dataclass(frozen=True)
class Realization:
    x1: AlcovePoint
    x2: AlcovePoint
    c: Fraction
    omega: RationalFunctional
    omega_roots: tuple[Fraction, ...] | None = None

    def swapped(self) -> "Realization":
        roots = None if self.omega_roots is None else tuple(-x for x in self.omega_roots)
        return Realization(self.x2, self.x1, self.c, -self.omega, roots)


# ---------------------------------------------------------------------------
# Weights


def _analysis(d: PrimitiveDiagram):
    v, an = classify.analyze_primitive(d)
    if not v.valid:
        raise ContractError(f"diagram is not primitive spherical: {v.failed_condition}: {v.witness}")
    return an


def side_weights(d: PrimitiveDiagram) -> tuple[tuple[Fraction, ...] | None, tuple[Fraction, ...] | None]:
    """Root coordinates of omega_{D1} and omega_{D2} (None for inhomogeneous sides)."""
    an = _analysis(d)
    out = []
    for m in (an.m1, an.m2):
        out.append(localmodels.push_omega(m.entry, m.embedding, d.host) if m.entry.homogeneous else None)
    return out[0], out[1]


def _decorated(m) -> int | None:
    return next(iter(m.decorated_nodes)) if m.embedding else None


def reconstruct_weight(d: PrimitiveDiagram) -> RationalFunctional:
    """Pairings <omega, alpha^vee> of the segment direction over all host nodes."""
    an = _analysis(d)
    if an.m1.entry.homogeneous:
        return RationalFunctional(an.pairings1.coeffs)
    if an.m2.entry.homogeneous:
        return -RationalFunctional(an.pairings2.coeffs)
    values = {}
    a, b = _decorated(an.m1), _decorated(an.m2)
    if a is not None:
        values[a] = 1
    if b is not None:
        values[b] = -1
    return RationalFunctional.from_map(d.host.n, values)


def weight_roots(d: PrimitiveDiagram) -> tuple[Fraction, ...] | None:
    """Root coordinates of omega when they are determined, else None."""
    w1, w2 = side_weights(d)
    if w1 is not None:
        return w1
    if w2 is not None:
        return tuple(-x for x in w2)
    if d.host.is_finite and d.host.n:
        return tuple(linalg.solve(d.host.cartan, reconstruct_weight(d).coeffs))
    return None


def gradient_coordinates(pairings: Sequence[Fraction], host: DynkinDiagram) -> tuple[Fraction, ...]:
    """Coordinates of a gradient in the basis alpha_1-bar, ..., alpha_l-bar of an
    irreducible affine host (node 0 dropped)."""
    if not host.is_affine_irreducible:
        raise ValueError("gradient coordinates need an irreducible affine host")
    fin = [list(row[1:]) for row in host.cartan[1:]]
    return tuple(linalg.solve(fin, list(pairings[1:])))


# ---------------------------------------------------------------------------
# Primitive realization


def realize_primitive(d: PrimitiveDiagram) -> Realization:
    """The segment of a valid primitive diagram.

    Affine hosts: X1 has coroot values c * n_{D2} on S2' and 0 elsewhere, with
    c fixed by the alcove normalization (separately on each factor of a
    product host, which must agree).  Finite hosts use c = 1.
    """
    an = _analysis(d)
    if not d.s1:
        return realize_primitive(d.swapped()).swapped()
    host = d.host
    p = reconstruct_weight(d)
    roots = weight_roots(d)
    n2 = an.m2.entry.nd
    if not d.s2:
        c = Fraction(1)
        y1 = [Fraction(0)] * host.n
    elif host.is_finite:
        c = Fraction(1)
        y1 = [Fraction(n2) if i in d.s2 else Fraction(0) for i in host.nodes]
    else:
        k = rootsys.factor_colabels(host)
        cs = set()
        for f in host.factors:
            total = sum(k[i] for i in f.nodes if i in d.s2)
            if not total:
                raise ContractError(f"factor {f.tag} carries no node of S2'")
            cs.add(Fraction(1, n2 * total))
        if len(cs) != 1:
            raise ContractError("factors of the product host need different scalars c")
        (c,) = cs
        y1 = [c * n2 if i in d.s2 else Fraction(0) for i in host.nodes]
    y2 = [a + c * b for a, b in zip(y1, p.coeffs)]
    return Realization(AlcovePoint.from_coroot_values(y1, host), AlcovePoint.from_coroot_values(y2, host),
                       c, p, roots)


def solve_segment_scalar(d: PrimitiveDiagram) -> list[Fraction] | None:
    """Re-solve the segment equations from scratch by Gaussian elimination.

    Unknowns are the coroot values of X1 and c.  Returns the unique solution,
    or None if the system is singular or inconsistent.
    """
    host = d.host
    p = reconstruct_weight(d)
    n = host.n
    rows, rhs = [], []

    def eq(coeffs, value):
        rows.append(coeffs)
        rhs.append(Fraction(value))

    for i in host.nodes:
        unit = [Fraction(int(j == i)) for j in range(n)]
        if i not in d.s2:
            eq(unit + [Fraction(0)], 0)          # alpha^vee(X1) = 0 off S2'
        if i not in d.s1:
            eq(unit + [p[i]], 0)                 # alpha^vee(X2) = 0 off S1'
    if host.is_finite or not d.s2:
        eq([Fraction(0)] * n + [Fraction(1)], 1)
    else:
        k = rootsys.factor_colabels(host)
        for f in host.factors:
            eq([Fraction(k[i]) if i in f.nodes else Fraction(0) for i in range(n)] + [Fraction(0)], 1)
    if linalg.rank(rows) != n + 1:
        return None
    return linalg.solve(rows, rhs)


# ---------------------------------------------------------------------------
# Spherical realization


def _spherical_weight(d: SphericalDiagram, info: classify.SphericalAnalysis) -> RationalFunctional:
    host = d.host
    pan = info.primitive
    emb = info.embedding
    if pan is not None:
        for sign, m in ((1, pan.m1), (-1, pan.m2)):
            if m.entry.homogeneous:
                w = [Fraction(0)] * host.n
                for j, x in enumerate(m.entry.omega):
                    w[emb[m.embedding[j]]] = sign * x
                return rootsys.pairing_vector(w, host)
    p = [Fraction(0)] * host.n
    if d.s1:
        p[next(iter(d.s1))] += 1
    if d.s2:
        p[next(iter(d.s2))] -= 1
    circled = sorted(d.sc)
    if not circled:
        return RationalFunctional(tuple(p))
    if host.is_finite:
        if not d.s1 and not d.s2:
            p[circled[0]] = Fraction(1)
        return RationalFunctional(tuple(p))
    k = rootsys.colabels(host)
    r = sum(k[i] * p[i] for i in host.nodes)
    if r == 0:
        if not d.s1 and not d.s2:
            s, t = circled[0], circled[1]
            g = gcd(k[s], k[t])
            p[s], p[t] = Fraction(k[t] // g), Fraction(-k[s] // g)
        return RationalFunctional(tuple(p))
    # integers x with sum k_s x_s = gcd, scaled to cancel r
    coeffs, g = _bezout([k[s] for s in circled])
    if r % g:
        raise ContractError("divisibility condition fails")
    for s, x in zip(circled, coeffs):
        p[s] += Fraction(-r // g * x)
    return RationalFunctional(tuple(p))


def _bezout(values: Sequence[int]) -> tuple[list[int], int]:
    """Integers x with sum values[i] * x[i] = gcd(values)."""
    coeffs = [0] * len(values)
    g = 0
    for idx, v in enumerate(values):
        if g == 0:
            g, coeffs[idx] = v, 1
            continue
        # extended Euclid on (g, v)
        old_r, r, old_s, s, old_t, t = g, v, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        coeffs = [x * old_s for x in coeffs]
        coeffs[idx] = old_t
        g = old_r
    return coeffs, g


def realize_spherical(d: SphericalDiagram) -> Realization:
    """A witness segment for a valid spherical diagram, found by exact
    Fourier-Motzkin feasibility over the coroot values of X1 and c."""
    v, info = classify.analyze_spherical(d)
    if not v.valid:
        raise ContractError(f"diagram is not spherical: {v.failed_condition}: {v.witness}")
    host = d.host
    if not d.sc:
        return realize_primitive(PrimitiveDiagram(host, d.s1, d.c1, d.s2, d.c2))
    p = _spherical_weight(d, info)
    n = host.n
    cons = []

    def row(i, with_c):
        coeffs = [Fraction(int(j == i)) for j in range(n)] + [p[i] if with_c else Fraction(0)]
        return coeffs

    for i in host.nodes:
        if i in d.s1:
            cons += [fm.Constraint.make(row(i, False), 0, fm.EQ), fm.Constraint.make(row(i, True), 0, fm.GT)]
        elif i in d.s2:
            cons += [fm.Constraint.make(row(i, False), 0, fm.GT), fm.Constraint.make(row(i, True), 0, fm.EQ)]
        elif i in d.sc:
            cons += [fm.Constraint.make(row(i, False), 0, fm.GT), fm.Constraint.make(row(i, True), 0, fm.GT)]
        else:
            cons += [fm.Constraint.make(row(i, False), 0, fm.EQ), fm.Constraint.make(row(i, True), 0, fm.EQ)]
    unit_c = [Fraction(0)] * n + [Fraction(1)]
    if host.is_finite:
        cons.append(fm.Constraint.make(unit_c, -1, fm.EQ))
    else:
        k = rootsys.colabels(host)
        cons.append(fm.Constraint.make([Fraction(x) for x in k] + [Fraction(0)], -1, fm.EQ))
        cons.append(fm.Constraint.make(unit_c, 0, fm.GT))
    sol = fm.feasible_point(n + 1, cons)
    if sol is None:
        raise ArithmeticError(f"no segment found for a valid spherical diagram on {host.tag}")
    y1, c = sol[:n], sol[n]
    y2 = [a + c * b for a, b in zip(y1, p.coeffs)]
    roots = None
    if host.is_finite:
        roots = tuple(linalg.solve(host.cartan, p.coeffs))
    return Realization(AlcovePoint.from_coroot_values(y1, host), AlcovePoint.from_coroot_values(y2, host),
                       c, p, roots)


# ---------------------------------------------------------------------------
# Verification


def verify_realization(d, r: Realization) -> list[str]:
    """Every violated constraint of the sign table, the displacement identity,
    positivity of c and the alcove normalization; empty when all hold."""
    host = d.host
    out = []
    if r.c <= 0:
        out.append(f"c = {r.c} is not positive")
    sc = getattr(d, "sc", frozenset())
    for i in host.nodes:
        name = host.names[i]
        a1, a2 = evaluate_coroot(r.x1, i, host), evaluate_coroot(r.x2, i, host)
        if a2 - a1 != r.c * r.omega[i]:
            out.append(f"displacement at {name}: {a2} - {a1} != c * {r.omega[i]}")
        if i in d.s1:
            want = (0, "+")
        elif i in d.s2:
            want = ("+", 0)
        elif i in sc:
            want = ("+", "+")
        else:
            want = (0, 0)
        for label, val, w in (("X1", a1, want[0]), ("X2", a2, want[1])):
            if w == 0 and val != 0:
                out.append(f"{name}^v({label}) = {val}, expected 0")
            if w == "+" and val <= 0:
                out.append(f"{name}^v({label}) = {val}, expected > 0")
    k = rootsys.factor_colabels(host)
    for f in host.factors:
        for label, x in (("X1", r.x1), ("X2", r.x2)):
            if any(x[i] < 0 for i in f.nodes):
                out.append(f"{label} has a negative coordinate on factor {f.tag}")
            if f.affine:
                total = sum(x[i] for i in f.nodes)
                weighted = sum(k[i] * evaluate_coroot(x, i, host) for i in f.nodes)
                if total != 1:
                    out.append(f"{label}: barycentric coordinates on {f.tag} sum to {total}")
                if weighted != 1:
                    out.append(f"{label}: sum of k(a^v) a^v(X) on {f.tag} is {weighted}")
    return out
