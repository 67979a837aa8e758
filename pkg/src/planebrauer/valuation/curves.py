"""Plane curves: irreducibility certificates, smoothness and rational parametrizations."""

from __future__ import annotations

import random
import warnings
import zlib

from ..polycore import upoly as U
from ..polycore.fields import FieldTag
from ..polycore.mgcd import is_squarefree
from ..polycore.mpoly import MPoly
from .algebra import QuotientRing, ZeroDivisorSplit, kpoly_from_upolys, kpoly_gcd_many
from .charts import Chart, ChartFailure, CurveChart, bivariate, chart_sequence, norm_resultant

TRUE, FALSE, UNDECIDED = "TRUE", "FALSE", "UNDECIDED"

_REDUCTION_PRIMES = (10007, 10009, 10037, 10039, 10061, 10069, 10079, 10091, 10093, 10099)


class NotIrreducible(ValueError):
    pass


def stable_seed(*parts):
    return zlib.crc32("|".join(str(p) for p in parts).encode())


def _line_restriction(f: MPoly, P, Q):
    """Coefficients of s -> f(s*P + Q)."""
    F = f.field
    lin = [[F.red(Q[i]), F.red(P[i])] for i in range(3)]
    lin = [U.strip(l) for l in lin]
    out = []
    cache = {}
    for e, c in f.terms.items():
        term = [c]
        for i in range(3):
            a = e[i]
            if a:
                if (i, a) not in cache:
                    cache[(i, a)] = U.power(lin[i], a, F)
                term = U.mul(term, cache[(i, a)], F)
        out = U.add(out, term, F)
    return out


def _reduce_mod_p(f: MPoly, p):
    Fp = FieldTag.prime(p)
    try:
        return MPoly(Fp, {e: Fp.coerce(c) for e, c in f.terms.items()})
    except (ValueError, ZeroDivisionError):
        return None


def certify_irreducible(f: MPoly, tries=64, seed=0):
    """Sound positive irreducibility test by restriction to random lines.

    Collects, over many full-degree line restrictions, the set of degrees a
    proper factor of f could have (subset sums of the restriction's factor
    degrees).  An empty set certifies that f is irreducible over its field.
    Over QQ and QQ(i) the restrictions are reduced modulo large primes.
    """
    e = f.degree()
    if e <= 1:
        return e == 1
    F = f.field
    if F.is_finite:
        targets = [f]
    else:
        targets = []
        for p in _REDUCTION_PRIMES:
            if F.kind == "GAUSSIAN_RATIONALS" and p % 4 != 1:
                continue
            g = _reduce_mod_p(f, p)
            if g is not None and g.degree() == e and g.is_homogeneous():
                targets.append(g)
            if len(targets) >= 2:
                break
        if not targets:
            return False
    rng = random.Random(seed)
    for g in targets:
        G = g.field
        possible = set(range(1, e))
        for _ in range(tries):
            P = [G.random_element(rng) for _ in range(3)]
            Q = [G.random_element(rng) for _ in range(3)]
            r = _line_restriction(g, P, Q)
            if U.deg(r) != e:
                continue
            _, fac = U.factor(r, G, rng)
            sums = {0}
            for h, m in fac:
                for _ in range(m):
                    sums = sums | {s + U.deg(h) for s in sums}
            possible &= sums
            if not possible:
                return True
    return False


def rational_line_factors(f: MPoly):
    """(lines, rest): every F_q-rational line dividing f, with multiplicity, and the cofactor.

    Over a prime field a reducible form of degree <= 3 always has a rational
    line factor, so a line-free rest of degree <= 3 is irreducible.
    """
    F = f.field
    if not F.is_finite:
        raise ValueError("line search needs a finite field")
    x, y, z = (MPoly.var(F, v) for v in "xyz")
    cands = [(a, b, 1) for a in range(F.q) for b in range(F.q)] + [(a, 1, 0) for a in range(F.q)] + [(1, 0, 0)]
    lines, rest = [], f
    for a, b, c in cands:
        if rest.degree() < 1:
            break
        ell = (x.scale(a) + y.scale(b) + z.scale(c)).monic()
        while rest.degree() >= 1:
            q, r = rest.divmod(ell)
            if not r.is_zero():
                break
            lines.append(ell)
            rest = q
    return lines, rest


class PlaneCurve:
    """V(f) for a squarefree homogeneous form f, normalized monic."""

    def __init__(self, f: MPoly, certify=True, trust=None, seed=0, check_squarefree=True):
        if f.is_constant():
            raise ValueError("a curve needs a nonconstant form")
        if not f.is_homogeneous():
            raise ValueError("curve form must be homogeneous")
        if any(e[3] for e in f.terms):
            raise ValueError("curve forms live in x, y, z")
        if check_squarefree and f.degree() > 1 and not is_squarefree(f):
            raise ValueError(f"curve form is not squarefree: {f}")
        self.f = f.monic()
        self.field = f.field
        self.degree = f.degree()
        self._charts = {}
        self._rational_point = None
        self._smooth = None
        if trust is not None:
            self.trust = trust
        elif not certify:
            self.trust = "asserted"
        elif certify_irreducible(self.f, seed=seed):
            self.trust = "line-restriction"
        else:
            self.trust = "asserted"
            warnings.warn(f"irreducibility of {self.f} could not be certified; treating it as asserted",
                          stacklevel=2)

    @property
    def irreducible_certified(self):
        return self.trust != "asserted"

    @classmethod
    def require_irreducible(cls, f, seed=0):
        c = cls(f, certify=False)
        if not certify_irreducible(c.f, seed=seed):
            raise NotIrreducible(f"could not certify {c.f} irreducible")
        c.trust = "line-restriction"
        return c

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __str__(self):
        return str(self.f)

    def __repr__(self):
        return f"PlaneCurve({self.f})"

    @property
    def key(self):
        return str(self.f)

    def is_line(self):
        return self.degree == 1

    def is_conic(self):
        return self.degree == 2

    def contains_point(self, pt):
        return self.f.evaluate(list(pt) + [0]) == 0

    def chart_data(self, chart: Chart) -> CurveChart:
        key = chart
        if key not in self._charts:
            self._charts[key] = CurveChart(self.f, chart)
        return self._charts[key]

    # rational curves

    def rational_point(self, bound=30):
        """An F-rational point on a line or conic, searched by brute force."""
        if self._rational_point is not None:
            return self._rational_point
        F = self.field
        if self.is_line():
            pt = _line_kernel(self.f)[0]
            self._rational_point = pt
            return pt
        if not self.is_conic():
            return None
        if F.is_finite:
            cands = ((a, b, 1) for a in F.elements() for b in F.elements())
            extra = [(a, 1, 0) for a in F.elements()] + [(1, 0, 0)]
        else:
            rng = range(-bound, bound + 1)
            cands = ((a, b, 1) for a in rng for b in rng)
            extra = [(a, 1, 0) for a in rng] + [(1, 0, 0)]
        for pt in list(extra) + list(cands):
            pt = tuple(F.coerce(v) for v in pt)
            if self.contains_point(pt):
                self._rational_point = pt
                return pt
        return None

    def is_rational(self):
        if self.is_line():
            return True
        if self.is_conic():
            return conic_is_smooth(self.f) and self.rational_point() is not None
        return False

    def parametrization(self):
        """Forms X(s, t) in variables x=s, y=t with f(X) = 0, birational onto the curve."""
        F = self.field
        s = MPoly.var(F, "x")
        t = MPoly.var(F, "y")
        if self.is_line():
            P, Q = _line_kernel(self.f)
            return [s.scale(P[i]) + t.scale(Q[i]) for i in range(3)]
        if not self.is_conic():
            raise ValueError("only lines and conics are parametrized")
        if not conic_is_smooth(self.f):
            raise ValueError("degenerate conic")
        P = self.rational_point()
        if P is None:
            raise ValueError("no rational point found on the conic")
        B = _conic_bilinear(self.f)
        # lines through P: direction V = s*u + t*w with u, w completing P to a basis
        u, w = _complete_basis(P, F)
        V = [s.scale(u[i]) + t.scale(w[i]) for i in range(3)]
        qV = self.f.subs({"x": V[0], "y": V[1], "z": V[2]})
        bPV = MPoly.zero(F)
        for i in range(3):
            for j in range(3):
                if B[i][j] != 0:
                    bPV = bPV + V[j].scale(F.red(B[i][j] * P[i]))
        # q(V) P - 2 b(P, V) V lies on the conic, where b is the polar form with q(v) = b(v, v)
        return [qV.scale(P[i]) - (bPV * V[i]).scale(2) for i in range(3)]

    # smoothness

    def smoothness(self, seed=0):
        if self._smooth is None:
            self._smooth = check_smooth(self.f, seed=seed)
        return self._smooth


def _line_kernel(f: MPoly):
    """Two independent points spanning the line V(f)."""
    F = f.field
    a = [f.terms.get(e, F.zero()) for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))]
    piv = next(i for i in range(3) if a[i] != 0)
    others = [i for i in range(3) if i != piv]
    pts = []
    for o in others:
        v = [F.zero()] * 3
        v[o] = F.one()
        v[piv] = F.red(-a[o] * F.inv(a[piv]))
        pts.append(tuple(v))
    return pts


def _conic_bilinear(f: MPoly):
    """Symmetric matrix B with f(v) = v^T B v."""
    F = f.field
    half = F.inv(F.coerce(2))
    B = [[F.zero()] * 3 for _ in range(3)]
    for e, c in f.terms.items():
        idx = [i for i in range(3) for _ in range(e[i])]
        i, j = idx
        if i == j:
            B[i][i] = c
        else:
            B[i][j] = F.red(c * half)
            B[j][i] = B[i][j]
    return B


def conic_is_smooth(f: MPoly):
    from ..polycore.matrix import constant_det
    return constant_det(_conic_bilinear(f), f.field) != 0


def _complete_basis(P, F):
    basis = []
    for k in range(3):
        e = [F.zero()] * 3
        e[k] = F.one()
        basis.append(e)
    from ..polycore.matrix import constant_det
    for i in range(3):
        for j in range(i + 1, 3):
            M = [list(P), basis[i], basis[j]]
            if constant_det(M, F) != 0:
                return basis[i], basis[j]
    raise ValueError("zero point")  # pragma: no cover


def check_smooth(f: MPoly, seed=0, max_charts=40):
    """Exact smoothness test.  Returns (TRUE|FALSE|UNDECIDED, witness or None).

    Over a prime field the singular locus is eliminated exactly: in a chart
    where f is monic in Y, the X-coordinates of singular points divide
    gcd(Res_Y(f, f_X), Res_Y(f, f_Y)); each irreducible factor is tested by
    a gcd over F[t]/(phi).  Points on the chart's line at infinity are
    checked with binary forms.  Over QQ and QQ(i) smoothness is decided by
    good reduction modulo a large prime; failure there gives UNDECIDED.
    """
    F = f.field
    if not F.is_finite:
        for p in _REDUCTION_PRIMES:
            if F.kind == "GAUSSIAN_RATIONALS" and p % 4 != 1:
                continue
            g = _reduce_mod_p(f, p)
            if g is None or g.degree() != f.degree() or not g.is_homogeneous():
                continue
            status, _ = check_smooth(g, seed=seed)
            if status == TRUE:
                return TRUE, None
        return UNDECIDED, None
    e = f.degree()
    if e == 1:
        return TRUE, None
    partials = [f.partial(v) for v in "xyz"]
    if all(p.is_zero() for p in partials):
        return FALSE, None
    rng = random.Random(seed)
    for chart, _ in zip(chart_sequence(F, rng), range(max_charts)):
        try:
            cc = CurveChart(f, chart)
        except ChartFailure:
            continue
        gs = [chart.apply(p) for p in partials]
        # points on Z = 0 of the chart
        inf_polys = [U.strip(list(cc.at_inf))]
        corners = [cc.x_corner]
        for g in gs:
            d = g.degree()
            if d < 0:
                continue
            inf_polys.append(U.strip([g.terms.get((a, d - a, 0, 0), F.zero()) for a in range(d + 1)]))
            corners.append(g.terms.get((d, 0, 0, 0), F.zero()))
        common = inf_polys[0]
        for p in inf_polys[1:]:
            common = U.gcd(common, p, F) if p else common
        if U.deg(common) > 0:
            return FALSE, {"chart": chart, "at_infinity": common}
        if all(c == 0 for c in corners):
            return FALSE, {"chart": chart, "at_infinity": "corner"}
        bf = cc.bf
        bgs = [bivariate(g) for g in gs if not g.is_zero()]
        r = []
        used = 0
        for bg in bgs:
            res = norm_resultant(bf, bg, F)
            if not res:
                continue
            r = U.gcd(r, res, F) if r else U.monic(res, F)
            used += 1
            if used == 2 or U.deg(r) == 0:
                break
        if not r:
            return UNDECIDED, None
        if U.deg(r) == 0:
            return TRUE, None
        _, fac = U.factor(r, F, rng)
        for phi, _m in fac:
            K = QuotientRing(F, phi)
            polys = [kpoly_from_upolys(bf, K)] + [kpoly_from_upolys(bg, K) for bg in bgs]
            h = kpoly_gcd_many(polys, K)
            if len(h) > 1:
                return FALSE, {"chart": chart, "phi": phi, "y": h}
        return TRUE, None
    return UNDECIDED, None


__all__ = ["PlaneCurve", "certify_irreducible", "check_smooth", "conic_is_smooth",
           "TRUE", "FALSE", "UNDECIDED", "NotIrreducible", "stable_seed", "ZeroDivisorSplit"]
