"""Exact fields, sparse polynomials and the elimination kernels built on them."""

from . import upoly
from .fields import GAUSSIAN_RATIONALS, PRIME_FIELD, RATIONALS, FieldTag, GaussRat
from .matrix import FormMatrix, bareiss_det, determinant, minor, principal_minor
from .mgcd import gcd, gcd_list, is_squarefree, lcm, resultant, squarefree_part
from .mpoly import VARS, FieldMismatch, MPoly, NotDivisible
from .parse import PolySyntaxError, parse_poly
from .ratfn import RatFn


def exact_div(a: MPoly, b: MPoly) -> MPoly:
    return a.exact_div(b)


def partial_derivative(a: MPoly, v) -> MPoly:
    return a.partial(v)


def univariate_factor(f: MPoly, rng=None):
    """Factor a univariate MPoly over a prime field.

    Returns (leading coefficient, [(irreducible monic MPoly, multiplicity)]).
    Over the characteristic-zero fields this raises; use
    univariate_squarefree there.
    """
    used = f.vars_used()
    if f.is_zero():
        raise ValueError("factorization of zero")
    if len(used) > 1:
        raise ValueError("polynomial is not univariate")
    v = used[0] if used else 0
    lc, fac = upoly.factor(f.to_univariate(v), f.field, rng)
    return lc, [(MPoly.from_univariate(f.field, h, v), m) for h, m in fac]


def univariate_squarefree(f: MPoly):
    used = f.vars_used()
    if len(used) > 1:
        raise ValueError("polynomial is not univariate")
    v = used[0] if used else 0
    lc, parts = upoly.sqf_list(f.to_univariate(v), f.field)
    return lc, [(MPoly.from_univariate(f.field, h, v), m) for h, m in parts]


__all__ = [
    "FieldTag", "GaussRat", "RATIONALS", "GAUSSIAN_RATIONALS", "PRIME_FIELD",
    "MPoly", "RatFn", "FormMatrix", "VARS",
    "parse_poly", "PolySyntaxError", "FieldMismatch", "NotDivisible",
    "determinant", "minor", "principal_minor", "bareiss_det",
    "gcd", "gcd_list", "lcm", "exact_div", "partial_derivative",
    "resultant", "squarefree_part", "is_squarefree",
    "univariate_factor", "univariate_squarefree", "upoly",
]
