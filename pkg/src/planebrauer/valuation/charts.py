"""Projective charts and intersection clusters on a plane curve.

A chart is an invertible 3x3 constant matrix T; chart coordinates are
(X, Y, Z) = T (x, y, z).  In a valid chart the curve's form is monic in Y
and the affine part Z = 1 carries all intersection points of interest.
An intersection point set is stored as clusters (phi, psi, mult): the
points [theta : psi(theta) : 1] in chart coordinates for the roots theta of
phi, all with the same multiplicity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..polycore import upoly as U
from ..polycore.matrix import UPolyRing, bareiss_det, constant_det, constant_inverse, constant_mul
from ..polycore.mpoly import MPoly
from .algebra import (
    QuotientRing,
    ZeroDivisorSplit,
    kpoly_from_upolys,
    kpoly_gcd,
    kpoly_single_root,
    minimal_polynomial,
)


class ChartFailure(ArithmeticError):
    """The chosen chart is degenerate for this computation; pick another."""


class CommonComponent(ArithmeticError):
    """The form vanishes identically on the curve."""


@dataclass(frozen=True)
class Chart:
    T: tuple
    Tinv: tuple

    @classmethod
    def from_matrix(cls, T, F):
        T = tuple(tuple(F.red(F.coerce(v)) for v in row) for row in T)
        if constant_det([list(r) for r in T], F) == 0:
            raise ValueError("chart matrix is singular")
        Tinv = tuple(tuple(r) for r in constant_inverse([list(r) for r in T], F))
        return cls(T, Tinv)

    @classmethod
    def identity(cls, F):
        return cls.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], F)

    @classmethod
    def random(cls, F, rng: random.Random):
        while True:
            T = [[F.random_element(rng, bound=4) for _ in range(3)] for _ in range(3)]
            if constant_det(T, F) != 0:
                return cls.from_matrix(T, F)

    def is_identity(self):
        return all(self.T[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))

    def apply(self, g: MPoly) -> MPoly:
        """The form in chart coordinates: g(T^{-1} X)."""
        if self.is_identity():
            return g
        return g.linear_change(self.Tinv)

    def to_json(self, F):
        return {"matrix": [[F.format(v) for v in row] for row in self.T]}


def chart_sequence(F, rng: random.Random, first=None):
    """Identity first (or a preferred chart), then seeded random charts forever."""
    if first is not None:
        yield first
    yield Chart.identity(F)
    while True:
        yield Chart.random(F, rng)


def bivariate(g: MPoly):
    """Affine part Z = 1 as a list over powers of Y of dense polynomials in X."""
    F = g.field
    out = []
    for e, c in g.terms.items():
        a, b = e[0], e[1]
        while len(out) <= b:
            out.append([])
        row = out[b]
        while len(row) <= a:
            row.append(F.zero())
        row[a] = F.red(row[a] + c)
    return [U.strip(r) for r in out]


def _reduce_mod_monic(p, bf, F):
    """Reduce a polynomial in Y (list of X-polys) modulo the monic bf."""
    e = len(bf) - 1
    p = list(p)
    while len(p) > e:
        top = p.pop()
        if not top:
            continue
        k = len(p) - e
        for j in range(e):
            if bf[j]:
                p[k + j] = U.sub(p[k + j], U.mul(top, bf[j], F), F)
    while len(p) < e:
        p.append([])
    return p


def norm_resultant(bf, bg, F):
    """Res_Y(f, g) for f monic in Y, as the determinant of multiplication by g."""
    e = len(bf) - 1
    row = _reduce_mod_monic(bg, bf, F)
    rows = [row]
    for _ in range(e - 1):
        row = _reduce_mod_monic([[]] + row, bf, F)
        rows.append(row)
    return bareiss_det(rows, ring=UPolyRing(F))


class CurveChart:
    """A curve form moved into a chart where it is monic in Y."""

    def __init__(self, f: MPoly, chart: Chart):
        F = f.field
        fT = chart.apply(f)
        e = f.degree()
        lead = fT.terms.get((0, e, 0, 0))
        if lead is None or lead == 0:
            raise ChartFailure("curve form is not monic in Y in this chart")
        fT = fT.scale(F.inv(lead))
        self.f = f
        self.chart = chart
        self.field = F
        self.fT = fT
        self.e = e
        self.bf = bivariate(fT)
        while len(self.bf) <= e:
            self.bf.append([])
        self.at_inf = [fT.terms.get((a, e - a, 0, 0), F.zero()) for a in range(e + 1)]
        self.x_corner = fT.terms.get((e, 0, 0, 0), F.zero())

    def meets_at_infinity(self, gT: MPoly):
        F = self.field
        d = gT.degree()
        b = U.strip([gT.terms.get((a, d - a, 0, 0), F.zero()) for a in range(d + 1)])
        if not b:
            return True
        if U.deg(U.gcd(U.strip(list(self.at_inf)), b, F)) > 0:
            return True
        corner = gT.terms.get((d, 0, 0, 0), F.zero())
        return self.x_corner == 0 and corner == 0

    def clusters(self, g: MPoly, rng: random.Random):
        """Intersection clusters of the curve with V(g) (g a form)."""
        F = self.field
        if g.is_constant():
            return []
        gT = self.chart.apply(g)
        if self.meets_at_infinity(gT):
            raise ChartFailure("intersection meets the line Z = 0 of the chart")
        bg = bivariate(gT)
        r = norm_resultant(self.bf, bg, F)
        if not r:
            raise CommonComponent("form vanishes on a component of the curve")
        if U.deg(r) != self.e * g.degree():
            raise ChartFailure("resultant has unexpected degree")
        if U.deg(r) == 0:
            return []
        if F.is_finite:
            _, fac = U.factor(r, F, rng)
        else:
            _, fac = U.sqf_list(r, F)
        out = []
        stack = [(U.monic(phi, F), k) for phi, k in fac]
        while stack:
            phi, k = stack.pop()
            K = QuotientRing(F, phi)
            try:
                h = kpoly_gcd(kpoly_from_upolys(self.bf, K), kpoly_from_upolys(bg, K), K)
            except ZeroDivisorSplit as z:
                g1 = U.monic(z.factor, F)
                stack.append((g1, k))
                stack.append((U.quo(phi, g1, F), k))
                continue
            if len(h) == 2:
                psi = K.neg(h[0])
            else:
                # a repeated common root is still a single point over each theta
                psi = kpoly_single_root(h, K)
                if psi is None:
                    raise ChartFailure("projection does not separate intersection points")
            out.append((tuple(phi), tuple(psi), k))
        return out


def transport_cluster(phi, psi, src: Chart, dst: Chart, F):
    """Move a cluster between charts; ChartFailure if it does not fit the target."""
    M = constant_mul([list(r) for r in dst.T], [list(r) for r in src.Tinv], F)
    K = QuotientRing(F, list(phi))
    theta = K.gen()
    psi = list(psi)
    v = []
    for i in range(3):
        comp = K.add(K.scale(theta, M[i][0]), K.scale(psi, M[i][1]))
        comp = K.add(comp, K.const(M[i][2]))
        v.append(comp)
    try:
        zinv = K.inv(v[2])
    except (ZeroDivisionError, ZeroDivisorSplit):
        raise ChartFailure("cluster meets the line Z = 0 of the target chart") from None
    th2 = K.mul(v[0], zinv)
    eta = K.mul(v[1], zinv)
    mp, express = minimal_polynomial(th2, K)
    if U.deg(mp) != K.k:
        raise ChartFailure("target chart does not separate the cluster")
    return tuple(U.monic(mp, F)), tuple(express(eta))


def cluster_points(phi, psi, chart: Chart, F):
    """Projective F-rational points of a cluster, in original coordinates.

    Over a prime field only degree-one clusters have rational points; over
    QQ the squarefree phi may have rational roots of its own.
    """
    if len(phi) == 2:
        thetas = [F.red(-phi[0])]
    elif F.kind == "RATIONALS":
        thetas = U.rational_roots(list(phi), F) or []
    else:
        return []
    out = []
    for theta in thetas:
        y = U.evaluate(list(psi), theta, F)
        X = (theta, y, F.one())
        pt = [F.red(sum(chart.Tinv[i][j] * X[j] for j in range(3))) for i in range(3)]
        out.append(normalize_point(pt, F))
    return out


def normalize_point(pt, F):
    for c in reversed(pt):
        if c != 0:
            inv = F.inv(c)
            return tuple(F.red(v * inv) for v in pt)
    raise ValueError("zero vector is not a projective point")


def original_coordinates(phi, psi, chart: Chart, F):
    """(K, [x, y, z]) with the cluster point written in original coordinates over K."""
    K = QuotientRing(F, list(phi))
    theta = K.gen()
    X = (theta, list(psi), K.const(1))
    out = []
    for i in range(3):
        acc = []
        for j in range(3):
            acc = K.add(acc, K.scale(X[j], chart.Tinv[i][j]))
        out.append(acc)
    return K, out
