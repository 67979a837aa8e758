"""Seeded random inputs shared by the law tests and the acceptance suite."""

import random

from planebrauer.polycore import FieldTag, MPoly
from planebrauer.valuation import PowerProduct

F13 = FieldTag.prime(13)


def rational_form(rng, field=F13):
    """A product of one or two linear forms, or a smooth conic with a point."""
    while True:
        k = rng.choice([1, 1, 2])
        g = MPoly.random_form(field, k, rng)
        if not g.is_zero() and g.degree() == k:
            return g


def random_function(rng, field=F13, nfactors=3, pool=None):
    """A degree-zero quotient of forms, kept as a power product."""
    facs = []
    deg = 0
    for _ in range(rng.randint(1, nfactors)):
        g = rng.choice(pool) if pool and rng.random() < 0.6 else rational_form(rng, field)
        k = rng.choice([1, 1, 2, -1, 3])
        facs.append((g, k))
        deg += k * g.degree()
    facs.append((MPoly.var(field, "z"), -deg))
    return PowerProduct(field, field.random_element(rng, nonzero=True), facs)


def shared_pool(rng, field=F13, size=4):
    return [rational_form(rng, field) for _ in range(size)]


def weighted_symmetric_rows(rng, n, curve_form, field=F13, degrees=(1, 2)):
    """Symmetric rows with m_ij divisible by curve_form^min(w_i, w_j) for random weights w."""
    w = [rng.choice([0, 1]) for _ in range(n)]
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g = MPoly.zero(field)
            while g.is_zero():
                g = MPoly.random_form(field, rng.choice(degrees), rng)
            rows[i][j] = rows[j][i] = g * curve_form ** min(w[i], w[j])
    return rows


_FIXTURES = {}


def fixtures(parts, count):
    """The first count seeded smooth fixtures for a partition over F_13, cached per session."""
    from planebrauer.dblcover import gen_fixture

    parts = tuple(parts)
    have = _FIXTURES.setdefault(parts, [])
    while len(have) < count:
        have.append(gen_fixture(parts, seed=len(have)))
    return have[:count]
