"""Divisors on a plane curve as multiplicity-weighted point clusters."""

from __future__ import annotations

import random

from ..polycore import upoly as U
from .charts import Chart, ChartFailure, CommonComponent, chart_sequence, cluster_points, transport_cluster

MAX_CHARTS = 80


class DegenerateCharts(ArithmeticError):
    """No valid chart found within the retry budget."""


def _refine(items, F):
    """Coprime refinement of (phi, psi, mult) triples into disjoint point sets.

    Over a prime field each phi is irreducible and a key (phi, psi) is a
    single Galois orbit, so merging equal keys suffices.  Over QQ the phi
    are only squarefree and overlapping clusters are split by gcds.
    """
    merged = {}
    for phi, psi, m in items:
        key = (tuple(phi), tuple(psi))
        merged[key] = merged.get(key, 0) + m
    if F.is_finite:
        return {k: m for k, m in merged.items() if m != 0}
    work = [(list(k[0]), list(k[1]), m) for k, m in merged.items()]
    changed = True
    while changed:
        changed = False
        n = len(work)
        for i in range(n):
            for j in range(i + 1, n):
                pi, si, mi = work[i]
                pj, sj, mj = work[j]
                g = U.gcd(pi, pj, F)
                if U.deg(g) <= 0:
                    continue
                diff = U.rem(U.sub(si, sj, F), g, F)
                h = U.gcd(g, diff, F) if diff else g
                if U.deg(h) == 0 and U.deg(g) == U.deg(pi) == U.deg(pj):
                    continue
                pieces = []
                for phi, psi, m in ((pi, si, mi), (pj, sj, mj)):
                    parts = [h, U.quo(g, h, F)] if U.deg(h) > 0 else [g]
                    parts.append(U.quo(phi, g, F))
                    for part in parts:
                        if U.deg(part) > 0:
                            part = U.monic(part, F)
                            pieces.append((part, U.rem(psi, part, F), m))
                rest = [w for k, w in enumerate(work) if k not in (i, j)]
                acc = {}
                for phi, psi, m in rest + pieces:
                    key = (tuple(phi), tuple(psi))
                    acc[key] = acc.get(key, 0) + m
                work = [(list(k[0]), list(k[1]), m) for k, m in acc.items()]
                changed = True
                break
            if changed:
                break
    return {(tuple(p), tuple(s)): m for p, s, m in work if m != 0}


class CurveDivisor:
    """Formal sum of point clusters on a curve, stored in one chart."""

    def __init__(self, curve, chart: Chart, items=(), refined=None):
        self.curve = curve
        self.chart = chart
        F = curve.field
        self.entries = refined if refined is not None else _refine(list(items), F)

    @property
    def field(self):
        return self.curve.field

    @classmethod
    def zero(cls, curve, chart=None):
        return cls(curve, chart or Chart.identity(curve.field), refined={})

    def items(self):
        return [(list(p), list(s), m) for (p, s), m in sorted(self.entries.items())]

    def degree(self):
        return sum(m * (len(p) - 1) for (p, _), m in self.entries.items())

    def is_zero(self):
        return not self.entries

    def is_effective(self):
        return all(m > 0 for m in self.entries.values())

    def multiplicities(self):
        return sorted(self.entries.values())

    def all_divisible_by(self, m):
        return all(v % m == 0 for v in self.entries.values())

    def scale(self, k):
        if k == 0:
            return CurveDivisor(self.curve, self.chart, refined={})
        return CurveDivisor(self.curve, self.chart, refined={key: k * m for key, m in self.entries.items()})

    def __rmul__(self, k):
        return self.scale(k)

    def __neg__(self):
        return self.scale(-1)

    def transported(self, chart: Chart):
        if chart == self.chart:
            return self
        F = self.field
        items = []
        for (phi, psi), m in self.entries.items():
            p2, s2 = transport_cluster(phi, psi, self.chart, chart, F)
            items.append((p2, s2, m))
        return CurveDivisor(self.curve, chart, items)

    def common_chart(self, other, seed=0):
        """Both divisors in one chart (self's, other's, or a fresh one)."""
        if self.curve != other.curve:
            raise ValueError("divisors live on different curves")
        if self.chart == other.chart:
            return self, other
        try:
            return self, other.transported(self.chart)
        except ChartFailure:
            pass
        try:
            return self.transported(other.chart), other
        except ChartFailure:
            pass
        rng = random.Random(seed)
        for _ in range(MAX_CHARTS):
            ch = Chart.random(self.field, rng)
            try:
                return self.transported(ch), other.transported(ch)
            except ChartFailure:
                continue
        raise DegenerateCharts("no common chart for the two divisors")

    def __add__(self, other):
        a, b = self.common_chart(other)
        items = [(p, s, m) for (p, s), m in a.entries.items()] + [(p, s, m) for (p, s), m in b.entries.items()]
        return CurveDivisor(self.curve, a.chart, items)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, CurveDivisor):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def rational_points(self):
        """F-rational points with multiplicities (degree-one clusters only)."""
        out = []
        for (phi, psi), m in self.entries.items():
            for pt in cluster_points(phi, psi, self.chart, self.field):
                out.append((pt, m))
        return sorted(out)

    def contains_point(self, pt):
        from .charts import normalize_point
        target = normalize_point(list(pt), self.field)
        return any(p == target for p, _ in self.rational_points())

    def to_json(self):
        F = self.field
        return {
            "curve": str(self.curve.f),
            "shear": self.chart.to_json(F),
            "clusters": [
                {"factor": U.to_str(list(p), F), "y": U.to_str(list(s), F), "mult": m}
                for p, s, m in self.items()
            ],
        }

    def __repr__(self):
        parts = ", ".join(f"{m}*[{U.to_str(p, self.field)} | y={U.to_str(s, self.field)}]" for p, s, m in self.items())
        return f"CurveDivisor({self.curve.f}; {parts})"


def to_common_chart(divisors, seed=0):
    """Transport a list of divisors on one curve into a single chart."""
    divisors = list(divisors)
    F = divisors[0].field
    rng = random.Random(seed)
    candidates = []
    for d in divisors:
        if d.chart not in candidates:
            candidates.append(d.chart)
    tried = 0
    while tried < MAX_CHARTS + len(candidates):
        ch = candidates[tried] if tried < len(candidates) else Chart.random(F, rng)
        tried += 1
        try:
            return [d.transported(ch) for d in divisors]
        except ChartFailure:
            continue
    raise DegenerateCharts("no common chart for the divisors")


def divisor_min(divisors):
    """Pointwise minimum of divisors on one curve (absent clusters count as 0)."""
    divisors = list(divisors)
    if not divisors:
        raise ValueError("minimum of no divisors")
    moved = to_common_chart(divisors)
    base = moved[0]
    F = base.field
    # joint refinement with tagged multiplicities
    if F.is_finite:
        keys = set()
        for d in moved:
            keys |= set(d.entries)
        out = {}
        for k in keys:
            v = min(d.entries.get(k, 0) for d in moved)
            if v:
                out[k] = v
        return CurveDivisor(base.curve, base.chart, refined=out)
    # over QQ refine the union of supports, then read each divisor on the pieces
    support = _refine([(p, s, 1) for d in moved for (p, s) in d.entries], F)
    pieces = list(support)
    out_items = []
    for phi, psi in pieces:
        vals = []
        for d in moved:
            v = 0
            for (p2, s2), m in d.entries.items():
                g = U.gcd(list(phi), list(p2), F)
                if U.deg(g) == len(phi) - 1 and not U.rem(U.sub(list(psi), list(s2), F), list(phi), F):
                    v = m
                    break
            vals.append(v)
        v = min(vals)
        if v:
            out_items.append((phi, psi, v))
    return CurveDivisor(base.curve, base.chart, out_items)


def form_divisor(curve, g, chart: Chart, rng):
    """Intersection divisor of the curve with the form g in the given chart."""
    cc = curve.chart_data(chart)
    return CurveDivisor(curve, chart, cc.clusters(g, rng))


def powerproduct_divisor(curve, factors, seed=0, chart=None, max_charts=MAX_CHARTS):
    """div of prod g_j^k_j restricted to the curve, for forms g_j not vanishing on it.

    factors: list of (form, exponent).  All forms are intersected in one chart,
    found by trying the identity (or the given chart) and then seeded random ones.
    """
    F = curve.field
    rng = random.Random(seed)
    forms = [(g, k) for g, k in factors if k != 0 and not g.is_constant()]
    for g, _ in forms:
        if curve.f.divides(g):
            raise CommonComponent(f"{g} vanishes on the curve {curve.f}")
    last = None
    for ch, _ in zip(chart_sequence(F, rng, first=chart), range(max_charts)):
        try:
            cc = curve.chart_data(ch)
            items = []
            for g, k in forms:
                for phi, psi, m in cc.clusters(g, rng):
                    items.append((phi, psi, m * k))
            return CurveDivisor(curve, ch, items)
        except ChartFailure as exc:
            last = exc
            continue
    raise DegenerateCharts(f"no valid chart after {max_charts} attempts: {last}")
