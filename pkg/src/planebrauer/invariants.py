"""Numerical invariants of p-cyclic covers of the plane and Brauer-rank bookkeeping."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

from .polycore.fields import is_prime


class InvariantError(ValueError):
    pass


@dataclass(frozen=True)
class CoverInvariants:
    p: int
    d: int
    h01: int
    h20: int
    b2: int
    genus_C: int

    def to_json(self):
        return asdict(self)

    def row(self):
        return (self.p, self.d, self.h01, self.h20, self.b2, self.genus_C)


TSV_HEADER = ("p", "d", "h01", "h20", "b2", "genus")


def _check(p, d):
    if not isinstance(p, int) or not is_prime(p):
        raise InvariantError(f"p = {p} is not a prime")
    if not isinstance(d, int) or d < 1:
        raise InvariantError(f"d = {d} must be a positive integer")


def genus(p, d):
    """Genus of a smooth plane curve of degree p*d."""
    return comb(p * d - 1, 2)


def hodge_invariants(p: int, d: int) -> CoverInvariants:
    """Invariants of the p-cyclic cover of P^2 branched along a smooth curve of degree p*d."""
    _check(p, d)
    s1 = sum(range(1, p))
    s2 = sum(j * j for j in range(1, p))
    twice = 2 * (p - 1) - 3 * d * s1 + d * d * s2
    assert twice % 2 == 0, "h20 is not integral"
    h20 = twice // 2
    assert h20 >= 0, "h20 is negative"
    g = genus(p, d)
    b2 = 1 + (p - 1) * (1 + 2 * g)
    return CoverInvariants(p, d, 0, h20, b2, g)


def brauer_p_rank(p: int, d: int, rho: int) -> int:
    """dim over F_p of Br X[p] = (p-1)(1+2g) + 1 - rho."""
    inv = hodge_invariants(p, d)
    if not 1 <= rho <= inv.b2:
        raise InvariantError(f"rho = {rho} outside 1..{inv.b2}")
    return (p - 1) * (1 + 2 * inv.genus_C) + 1 - rho


def two_torsion_budget(d: int, rho: int):
    """(dim source, dim kernel, dim image) for the map out of (Pic C / Z L)[2], p = 2."""
    _check(2, d)
    if rho < 1:
        raise InvariantError("rho must be at least 1")
    g = genus(2, d)
    source = 2 * g + 1
    kernel = rho - 1
    image = 2 + 2 * g - rho
    if image < 0:
        raise InvariantError(f"rho = {rho} too large for d = {d}: image dimension {image}")
    assert source == kernel + image
    return source, kernel, image


def invariants_table(ps, ds):
    return [hodge_invariants(p, d) for p in ps for d in ds]


__all__ = ["CoverInvariants", "hodge_invariants", "brauer_p_rank", "two_torsion_budget", "genus",
           "invariants_table", "InvariantError", "TSV_HEADER"]
