"""Multivariate gcd, squarefree parts and resultants."""

from __future__ import annotations

import random

from . import upoly as U
from .mpoly import NVARS, VARS, MPoly, NotDivisible, var_index


def _restrict_to_line(f: MPoly, base, direction, var_ids):
    """Univariate coefficients of s -> f(base + s*direction) on the given variables."""
    F = f.field
    lin = []
    for i in range(NVARS):
        if i in var_ids:
            lin.append([F.red(F.coerce(base[i])), F.red(F.coerce(direction[i]))])
        else:
            lin.append([F.zero()])
    cache = {}
    out = []
    for e, c in f.terms.items():
        term = [c]
        for i, a in enumerate(e):
            if a:
                key = (i, a)
                if key not in cache:
                    cache[key] = U.power(U.strip(list(lin[i])), a, F)
                term = U.mul(term, cache[key], F)
        out = U.add(out, term, F)
    return out


def restrict_to_line(f: MPoly, base, direction):
    return _restrict_to_line(f, base, direction, set(range(NVARS)))


def coprime_by_restriction(f: MPoly, g: MPoly, rng: random.Random, tries=2):
    """Sound positive test: True only if gcd(f, g) is certainly a unit."""
    F = f.field
    ids = set(f.vars_used()) | set(g.vars_used())
    df, dg = f.degree(), g.degree()
    for _ in range(tries):
        base = [F.random_element(rng, bound=50) for _ in range(NVARS)]
        direction = [F.random_element(rng, bound=50) for _ in range(NVARS)]
        rf = _restrict_to_line(f, base, direction, ids)
        if U.deg(rf) != df:
            continue
        rg = _restrict_to_line(g, base, direction, ids)
        if U.deg(rg) != dg:
            continue
        if U.deg(U.gcd(rf, rg, F)) == 0:
            return True
    return False


def content_in(f: MPoly, v):
    cs = list(f.coeffs_in(v).values())
    return gcd_list(cs)


def _prem(a: MPoly, b: MPoly, v):
    """Pseudo-remainder of a by b in variable v."""
    i = var_index(v)
    db = b.degree_in(i)
    bc = b.coeffs_in(i)
    lcb = bc[db]
    bt = b - _xpow(b.field, i, db) * lcb
    r = a
    while not r.is_zero() and r.degree_in(i) >= db:
        dr = r.degree_in(i)
        lcr = r.coeffs_in(i)[dr]
        rt = r - _xpow(r.field, i, dr) * lcr
        r = rt * lcb - bt * lcr * _xpow(r.field, i, dr - db)
    return r


def _xpow(F, i, k):
    e = [0] * NVARS
    e[i] = k
    return MPoly._raw(F, {tuple(e): F.one()})


def _gcd_rec(f: MPoly, g: MPoly):
    F = f.field
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if f.is_constant() or g.is_constant():
        return MPoly.one(F)
    vf, vg = set(f.vars_used()), set(g.vars_used())
    if vf != vg or len(vf) > 1:
        only_f = vf - vg
        if only_f:
            v = min(only_f)
            return gcd_list([g] + list(f.coeffs_in(v).values()))
        only_g = vg - vf
        if only_g:
            v = min(only_g)
            return gcd_list([f] + list(g.coeffs_in(v).values()))
    if len(vf) == 1:
        (v,) = vf
        uf, ug = f.to_univariate(v), g.to_univariate(v)
        return MPoly.from_univariate(F, U.gcd(uf, ug, F), v)
    # main variable: the one of smallest combined degree
    v = min(vf, key=lambda i: (min(f.degree_in(i), g.degree_in(i)), i))
    cf, cg = content_in(f, v), content_in(g, v)
    c = _gcd_rec(cf, cg)
    a = f.exact_div(cf)
    b = g.exact_div(cg)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while True:
        r = _prem(a, b, v)
        if r.is_zero():
            break
        if r.degree_in(v) == 0:
            return c
        a, b = b, r.exact_div(content_in(r, v))
    pp = b.exact_div(content_in(b, v))
    return (c * pp)


def gcd(f: MPoly, g: MPoly, rng=None) -> MPoly:
    """Monic (graded-lex) greatest common divisor."""
    if f.field != g.field:
        raise ValueError("field mismatch in gcd")
    F = f.field
    if f.is_zero() and g.is_zero():
        return f
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return MPoly.one(F)
    # shared monomial content is handled by the recursion; quick exits first
    if len(g.terms) <= len(f.terms):
        if g.divides(f):
            return g.monic()
    elif f.divides(g):
        return f.monic()
    if rng is None:
        rng = random.Random(len(f.terms) * 7919 + len(g.terms))
    mono = tuple(min(a, b) for a, b in zip(f.content_monomial(), g.content_monomial()))
    if not any(mono) and coprime_by_restriction(f, g, rng):
        return MPoly.one(F)
    return _gcd_rec(f, g).monic()


def gcd_list(polys):
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of an empty list")
    polys.sort(key=lambda p: (p.degree(), len(p.terms)))
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant():
            break
        g = gcd(g, p)
    return g.monic() if not g.is_constant() else MPoly.one(g.field)


def lcm(f: MPoly, g: MPoly):
    return (f * g).exact_div(gcd(f, g)).monic()


def squarefree_part(f: MPoly) -> MPoly:
    """Product of the distinct irreducible factors (computed by gcd with derivatives)."""
    F = f.field
    if f.is_constant():
        return MPoly.one(F)
    g = f
    for v in f.vars_used():
        d = f.partial(v)
        if not d.is_zero():
            g = gcd(g, d)
            if g.is_constant():
                break
    if g.is_constant():
        return f.monic()
    # gcd(f, all partials) is the product of h^(k-1) over factors h^k of f
    # as long as every multiplicity k is prime to the characteristic.
    return f.exact_div(g).monic()


def is_squarefree(f: MPoly) -> bool:
    if f.is_constant():
        return True
    g = f
    for v in f.vars_used():
        d = f.partial(v)
        if not d.is_zero():
            g = gcd(g, d)
            if g.is_constant():
                return True
    return g.is_constant()


def sylvester_resultant(f: MPoly, g: MPoly, v) -> MPoly:
    """Res_v(f, g) as the determinant of the Sylvester matrix (Bareiss)."""
    from .matrix import bareiss_det
    i = var_index(v)
    m, n = f.degree_in(i), g.degree_in(i)
    if m < 0 or n < 0:
        raise ValueError("resultant of a zero polynomial")
    if m == 0 and n == 0:
        raise ValueError(f"both polynomials are constant in {VARS[i]}")
    F = f.field
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    fc, gc = f.coeffs_in(i), g.coeffs_in(i)
    zero = MPoly.zero(F)
    size = m + n
    rows = []
    for r in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[r + k] = fc.get(m - k, zero)
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[r + k] = gc.get(n - k, zero)
        rows.append(row)
    return bareiss_det(rows, zero, MPoly.one(F), lambda a, b: a.exact_div(b))


def resultant(f: MPoly, g: MPoly, v) -> MPoly:
    return sylvester_resultant(f, g, v)


__all__ = [
    "gcd",
    "gcd_list",
    "lcm",
    "squarefree_part",
    "is_squarefree",
    "resultant",
    "restrict_to_line",
    "coprime_by_restriction",
    "NotDivisible",
]
