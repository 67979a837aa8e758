import random

import pytest
import sympy

from planebrauer.polycore import FieldTag, MPoly, parse_poly

X, Y, Z, T = sympy.symbols("x y z t")
GENS = (X, Y, Z, T)


def to_sympy(p: MPoly):
    """Independent conversion through the printed form."""
    text = str(p).replace("^", "**").replace("i", "I")
    return sympy.sympify(text, locals={"x": X, "y": Y, "z": Z, "t": T, "I": sympy.I})


def from_sympy(expr, field):
    return parse_poly(str(sympy.expand(expr)).replace("**", "^").replace("I", "i"), field)


def sympy_mod(expr, q):
    """Coefficients reduced into the symmetric range mod q."""
    poly = sympy.Poly(sympy.expand(expr), *GENS)
    out = 0
    for mon, c in poly.terms():
        c = int(c) % q
        if c > q // 2:
            c -= q
        term = c
        for g, e in zip(GENS, mon):
            term *= g ** e
        out += term
    return sympy.expand(out)


@pytest.fixture
def F13():
    return FieldTag.prime(13)


@pytest.fixture
def QQ():
    return FieldTag.rationals()


@pytest.fixture
def QQI():
    return FieldTag.gaussian()


def random_poly(field, rng, degree=3, nterms=5, nvars=3):
    terms = {}
    for _ in range(nterms):
        e = [0, 0, 0, 0]
        budget = rng.randint(0, degree)
        for _ in range(budget):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = field.random_element(rng, nonzero=True, bound=6)
    return MPoly(field, terms)


def projective_points(q):
    """All points of P^2(F_q) in normalized form."""
    pts = []
    for x in range(q):
        for y in range(q):
            pts.append((x, y, 1))
    for x in range(q):
        pts.append((x, 1, 0))
    pts.append((1, 0, 0))
    return pts


@pytest.fixture
def rng():
    return random.Random(12345)
