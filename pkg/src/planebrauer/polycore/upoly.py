"""Dense univariate polynomials over an exact field.

A polynomial is a list of field elements, lowest degree first, with no
trailing zeros; [] is the zero polynomial.  Every function takes the field
as its last argument.  Factorization into irreducibles is provided over
prime fields (distinct-degree then Cantor-Zassenhaus splitting); over the
characteristic-zero fields only squarefree decomposition is available.
"""

from __future__ import annotations

import random

from .fields import FieldTag


def strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def const(c, F):
    c = F.red(F.coerce(c))
    return [c] if c != 0 else []


def X(F):
    return [F.zero(), F.one()]


def add(a, b, F):
    red = F.red
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = red(out[i] + c)
    return strip(out)


def neg(a, F):
    red = F.red
    return [red(-c) for c in a]


def sub(a, b, F):
    return add(a, neg(b, F), F)


def scale(a, c, F):
    if c == 0:
        return []
    red = F.red
    return strip([red(x * c) for x in a])


def mul(a, b, F):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    red = F.red
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj == 0:
            continue
        for i, ai in enumerate(a):
            out[i + j] += ai * bj
    return strip([red(c) for c in out])


def shift(a, k):
    return [0] * k + a if a else []


def divmod_(a, b, F):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    red = F.red
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    inv = F.inv(b[-1])
    r = list(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = red(r[k + db] * inv)
        q[k] = c
        if c != 0:
            for j in range(db):
                r[k + j] = red(r[k + j] - c * b[j])
        r[k + db] = 0
    return strip(q), strip(r[:db])


def rem(a, b, F):
    return divmod_(a, b, F)[1]


def quo(a, b, F):
    q, r = divmod_(a, b, F)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


def monic(a, F):
    if not a or a[-1] == 1:
        return list(a)
    return scale(a, F.inv(a[-1]), F)


def gcd(a, b, F):
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, F)
    return monic(a, F)


def gcdex(a, b, F):
    """(g, s, t) with s*a + t*b = g monic (or g = [] when both are zero)."""
    r0, r1 = list(a), list(b)
    s0, s1 = const(1, F), []
    t0, t1 = [], const(1, F)
    while r1:
        q, r = divmod_(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, F), F)
        t0, t1 = t1, sub(t0, mul(q, t1, F), F)
    if not r0:
        return [], [], []
    inv = F.inv(r0[-1])
    return scale(r0, inv, F), scale(s0, inv, F), scale(t0, inv, F)


def invmod(a, m, F):
    g, s, _ = gcdex(a, m, F)
    if g != [F.one()]:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return rem(s, m, F)


def deriv(a, F):
    red = F.red
    return strip([red(a[i] * i) for i in range(1, len(a))])


def evaluate(a, x, F):
    red = F.red
    acc = F.zero()
    for c in reversed(a):
        acc = red(acc * x + c)
    return acc


def compose(a, b, F):
    """a(b(t))."""
    acc = []
    for c in reversed(a):
        acc = add(mul(acc, b, F), const(c, F) if c != 0 else [], F)
    return acc


def power(a, n, F):
    result = const(1, F)
    base = list(a)
    while n:
        if n & 1:
            result = mul(result, base, F)
        n >>= 1
        if n:
            base = mul(base, base, F)
    return result


def powmod(a, n, m, F):
    result = const(1, F)
    base = rem(a, m, F)
    while n:
        if n & 1:
            result = rem(mul(result, base, F), m, F)
        n >>= 1
        if n:
            base = rem(mul(base, base, F), m, F)
    return result


def mulmod(a, b, m, F):
    return rem(mul(a, b, F), m, F)


def is_squarefree(a, F):
    return deg(gcd(a, deriv(a, F), F)) <= 0


def _pth_root(a, F):
    p = F.q
    return [a[i] for i in range(0, len(a), p)]


def sqf_list(a, F):
    """Squarefree decomposition: (lc, [(s_k, k), ...]) with a = lc * prod s_k^k."""
    if not a:
        raise ValueError("squarefree decomposition of zero")
    lc = a[-1]
    f = monic(a, F)
    if len(f) == 1:
        return lc, []
    if F.characteristic == 0:
        return lc, _yun(f, F)
    return lc, _sqf_char_p(f, F)


def _yun(f, F):
    out = []
    fp = deriv(f, F)
    a0 = gcd(f, fp, F)
    b = quo(f, a0, F)
    c = quo(fp, a0, F)
    d = sub(c, deriv(b, F), F)
    i = 1
    while deg(b) > 0:
        a = gcd(b, d, F)
        if deg(a) > 0:
            out.append((a, i))
        b = quo(b, a, F)
        c = quo(d, a, F)
        d = sub(c, deriv(b, F), F)
        i += 1
    return out


def _sqf_char_p(f, F):
    p = F.q
    out = []
    g = deriv(f, F)
    if g:
        c = gcd(f, g, F)
        w = quo(f, c, F)
        i = 1
        while deg(w) > 0:
            y = gcd(w, c, F)
            z = quo(w, y, F)
            if deg(z) > 0:
                out.append((z, i))
            i += 1
            w = y
            c = quo(c, y, F)
        if deg(c) > 0:
            sub_list = _sqf_char_p(_pth_root(c, F), F)
            out.extend((h, m * p) for h, m in sub_list)
    else:
        sub_list = _sqf_char_p(_pth_root(f, F), F)
        out.extend((h, m * p) for h, m in sub_list)
    merged = {}
    for h, m in out:
        key = tuple(h)
        merged[key] = merged.get(key, 0) + m
    # Distinct squarefree parts can share a multiplicity only through the
    # p-th root recursion; multiply them together to keep one entry per k.
    by_mult = {}
    for h, m in merged.items():
        by_mult[m] = mul(by_mult[m], list(h), F) if m in by_mult else list(h)
    return sorted(((h, m) for m, h in by_mult.items()), key=lambda hm: hm[1])


def squarefree_part(a, F):
    _, parts = sqf_list(a, F)
    out = const(1, F)
    for h, _m in parts:
        out = mul(out, h, F)
    return out


def distinct_degree(f, F):
    """Distinct-degree factorization of a monic squarefree f over F_p."""
    q = F.q
    out = []
    h = X(F)
    x = X(F)
    i = 1
    rest = list(f)
    while deg(rest) >= 2 * i:
        h = powmod(h, q, rest, F)
        g = gcd(rest, sub(h, x, F), F)
        if deg(g) > 0:
            out.append((g, i))
            rest = quo(rest, g, F)
            h = rem(h, rest, F)
        i += 1
    if deg(rest) > 0:
        out.append((rest, deg(rest)))
    return out


def equal_degree(f, d, F, rng):
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    n = deg(f)
    if n == d:
        return [f]
    q = F.q
    exp = (q ** d - 1) // 2
    factors = [f]
    while len(factors) < n // d:
        a = [rng.randrange(q) for _ in range(n)]
        a = strip(a)
        if deg(a) < 1:
            continue
        nxt = []
        for u in factors:
            if deg(u) == d:
                nxt.append(u)
                continue
            b = sub(powmod(a, exp, u, F), const(1, F), F)
            g = gcd(u, b, F)
            if 0 < deg(g) < deg(u):
                nxt.append(g)
                nxt.append(quo(u, g, F))
            else:
                nxt.append(u)
        factors = nxt
    return factors


def factor(a, F: FieldTag, rng=None):
    """Complete factorization over a prime field: (lc, [(irreducible monic, mult)])."""
    if not F.is_finite:
        raise NotImplementedError(
            "complete factorization is available over prime fields only; use sqf_list"
        )
    if rng is None:
        rng = random.Random(0)
    lc, parts = sqf_list(a, F)
    out = []
    for s, m in parts:
        for g, d in distinct_degree(s, F):
            for h in equal_degree(g, d, F, rng):
                out.append((h, m))
    out.sort(key=lambda hm: (deg(hm[0]), [int(c) for c in reversed(hm[0])], hm[1]))
    return lc, out


def is_irreducible(a, F):
    if deg(a) <= 0:
        return False
    if deg(a) == 1:
        return True
    if not F.is_finite:
        raise NotImplementedError("irreducibility test is available over prime fields only")
    f = monic(a, F)
    if not is_squarefree(f, F):
        return False
    dd = distinct_degree(f, F)
    return len(dd) == 1 and dd[0][1] == deg(f)


def roots(a, F, rng=None):
    """Roots in F_p of a nonzero polynomial (without multiplicity)."""
    _, fac = factor(a, F, rng)
    return sorted(F.red(-h[0]) for h, _ in fac if deg(h) == 1)


def _divisors(n, limit=10 ** 6):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if d > limit:
            return None
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(a, F):
    """Roots in QQ of a nonzero rational polynomial by the rational root test.

    Returns None when the coefficients are too large to enumerate divisors.
    """
    from fractions import Fraction
    from math import lcm

    a = strip(a)
    out = set()
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    if k:
        out.add(Fraction(0))
    a = a[k:]
    if len(a) <= 1:
        return sorted(out)
    den = lcm(*(Fraction(c).denominator for c in a))
    ints = [int(Fraction(c) * den) for c in a]
    us, vs = _divisors(ints[0]), _divisors(ints[-1])
    if us is None or vs is None:
        return None
    for u in us:
        for v in vs:
            for r in (Fraction(u, v), Fraction(-u, v)):
                if r not in out and evaluate(a, r, F) == 0:
                    out.add(r)
    return sorted(out)


def to_str(a, F, var="t"):
    from .mpoly import MPoly
    return str(MPoly.from_univariate(F, a, var))
