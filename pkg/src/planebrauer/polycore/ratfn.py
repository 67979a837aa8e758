"""Reduced quotients of polynomials."""

from __future__ import annotations

from .mgcd import gcd
from .mpoly import MPoly
from .parse import parse_poly


class RatFn:
    """num/den with gcd(num, den) = 1 and den monic in graded lex."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MPoly):
            raise TypeError("numerator must be an MPoly")
        if den is None:
            den = MPoly.one(num.field)
        elif not isinstance(den, MPoly):
            den = MPoly.const(num.field, den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.field != den.field:
            raise ValueError("field mismatch")
        if num.is_zero():
            num, den = num, MPoly.one(num.field)
        elif not den.is_constant():
            g = gcd(num, den)
            if not g.is_one():
                num = num.exact_div(g)
                den = den.exact_div(g)
        c = den.lc()
        if c != 1:
            inv = num.field.inv(c)
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, num, den):
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def parse(cls, value, field):
        """From a polynomial string or {"num": str, "den": str}."""
        if isinstance(value, dict):
            try:
                num, den = value["num"], value.get("den", "1")
            except KeyError:
                raise ValueError("rational function object needs a 'num' key") from None
            return cls(parse_poly(num, field), parse_poly(den, field))
        return cls(parse_poly(value, field))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def _lift(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, MPoly):
            return RatFn._make(other, MPoly.one(other.field))
        return RatFn._make(MPoly.const(self.field, other), MPoly.one(self.field))

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return RatFn(MPoly.zero(self.field))
        g1 = gcd(self.num, o.den)
        g2 = gcd(o.num, self.den)
        num = self.num.exact_div(g1) * o.num.exact_div(g2)
        den = self.den.exact_div(g2) * o.den.exact_div(g1)
        return RatFn._normalized(num, den)

    __rmul__ = __mul__

    @classmethod
    def _normalized(cls, num, den):
        c = den.lc()
        if c != 1:
            inv = num.field.inv(c)
            num, den = num.scale(inv), den.scale(inv)
        return cls._make(num, den)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFn._normalized(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __add__(self, other):
        o = self._lift(other)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn._make(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFn._make(self.num ** k, self.den ** k) if k else RatFn(MPoly.one(self.field))

    def __eq__(self, other):
        if isinstance(other, (RatFn, MPoly, int)):
            o = self._lift(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def degree(self):
        """deg(num) - deg(den), meaningful for quotients of forms."""
        return self.num.degree() - self.den.degree()

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFn({str(self)!r})"

    def to_json(self):
        if self.den.is_one():
            return str(self.num)
        return {"num": str(self.num), "den": str(self.den)}
