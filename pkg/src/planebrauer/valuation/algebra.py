"""Arithmetic in F[t]/(phi) and polynomials over it.

A cluster of points on a curve is described by an algebra K = F[t]/(phi):
over a prime field phi is irreducible and K is a field; over QQ phi is only
squarefree, so K is a product of fields and an attempted inversion of a
zero divisor splits phi instead (ZeroDivisorSplit).
"""

from __future__ import annotations

from ..polycore import upoly as U


class ZeroDivisorSplit(ArithmeticError):
    """Raised with a proper monic factor of the modulus."""

    def __init__(self, factor):
        super().__init__("zero divisor found in F[t]/(phi)")
        self.factor = factor


class QuotientRing:
    def __init__(self, F, modulus):
        self.F = F
        self.mod = U.monic(modulus, F)
        self.k = U.deg(self.mod)
        if self.k < 1:
            raise ValueError("modulus must have positive degree")

    def red(self, a):
        if len(a) <= self.k:
            return U.strip(list(a))
        return U.rem(a, self.mod, self.F)

    def const(self, c):
        return U.const(c, self.F)

    def gen(self):
        return self.red(U.X(self.F))

    def add(self, a, b):
        return U.add(a, b, self.F)

    def sub(self, a, b):
        return U.sub(a, b, self.F)

    def neg(self, a):
        return U.neg(a, self.F)

    def mul(self, a, b):
        if not a or not b:
            return []
        return U.rem(U.mul(a, b, self.F), self.mod, self.F)

    def scale(self, a, c):
        return U.scale(a, c, self.F)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in F[t]/(phi)")
        g, s, _ = U.gcdex(a, self.mod, self.F)
        if U.deg(g) > 0:
            raise ZeroDivisorSplit(g)
        return U.rem(s, self.mod, self.F)

    def power(self, a, n):
        return U.powmod(a, n, self.mod, self.F)

    def vector(self, a):
        """Coordinates in the basis 1, t, ..., t^(k-1)."""
        zero = self.F.zero()
        return list(a) + [zero] * (self.k - len(a))


def kpoly_strip(p):
    while p and not p[-1]:
        p.pop()
    return p


def kpoly_from_upolys(coeffs, K):
    """Polynomial in Y over K from a list of F[t] coefficients."""
    return kpoly_strip([K.red(c) for c in coeffs])


def kpoly_monic(p, K):
    if not p:
        return p
    inv = K.inv(p[-1])
    return [K.mul(c, inv) for c in p]


def kpoly_rem(a, b, K):
    a = list(a)
    db = len(b) - 1
    inv = K.inv(b[-1])
    while len(a) - 1 >= db and a:
        c = K.mul(a[-1], inv)
        shift = len(a) - 1 - db
        for j in range(db + 1):
            a[shift + j] = K.sub(a[shift + j], K.mul(c, b[j]))
        a.pop()
        kpoly_strip(a)
    return a


def kpoly_gcd(a, b, K):
    a, b = kpoly_strip(list(a)), kpoly_strip(list(b))
    while b:
        a, b = b, kpoly_rem(a, b, K)
    return kpoly_monic(a, K)


def kpoly_single_root(h, K):
    """psi when the monic h equals (Y - psi)^k over K, else None."""
    k = len(h) - 1
    F = K.F
    if k < 1 or (F.is_finite and k % F.q == 0):
        return None
    psi = K.mul(h[k - 1], K.const(F.div(F.coerce(-1), F.coerce(k))))
    acc = [K.const(F.one())]
    lin = [K.neg(psi), K.const(F.one())]
    for _ in range(k):
        nxt = [[] for _ in range(len(acc) + 1)]
        for i, a in enumerate(acc):
            for j, b in enumerate(lin):
                nxt[i + j] = K.add(nxt[i + j], K.mul(a, b))
        acc = nxt
    return psi if [K.red(c) for c in acc] == [K.red(c) for c in h] else None


def kpoly_gcd_many(polys, K):
    g = []
    for p in polys:
        g = kpoly_gcd(g, p, K) if g else kpoly_monic(kpoly_strip(list(p)), K)
        if len(g) == 1:
            break
    return g


def minimal_polynomial(theta, K):
    """Monic minimal polynomial of theta over F together with a solver.

    Returns (minpoly, express) where express(eta) writes eta as a
    polynomial in theta (only meaningful when deg minpoly == K.k).
    """
    F = K.F
    red = F.red
    k = K.k
    rows = []  # (pivot, vec, combo)
    power = K.const(1)
    j = 0
    while True:
        vec = K.vector(power)
        combo = [F.zero()] * (k + 1)
        combo[j] = F.one()
        for p, rv, rc in rows:
            a = vec[p]
            if a != 0:
                vec = [red(x - a * y) for x, y in zip(vec, rv)]
                combo = [red(x - a * y) for x, y in zip(combo, rc)]
        piv = next((i for i, v in enumerate(vec) if v != 0), None)
        if piv is None:
            minpoly = U.strip(combo[: j + 1])
            break
        inv = F.inv(vec[piv])
        rows.append((piv, [red(v * inv) for v in vec], [red(c * inv) for c in combo]))
        j += 1
        power = K.mul(power, theta)

    def express(eta):
        vec = K.vector(eta)
        comb = [F.zero()] * (k + 1)
        for p, rv, rc in rows:
            a = vec[p]
            if a != 0:
                vec = [red(x - a * y) for x, y in zip(vec, rv)]
                comb = [red(x + a * y) for x, y in zip(comb, rc)]
        if any(v != 0 for v in vec):
            raise ValueError("element is not a polynomial in theta")
        return U.strip(comb[:k])

    return minpoly, express
