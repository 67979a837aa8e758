"""Exact coefficient fields: QQ, QQ(i) and prime fields F_p."""

from __future__ import annotations

import math
import random
from fractions import Fraction


class GaussRat:
    """Element re + im*i of QQ(i) with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(v):
        if isinstance(v, GaussRat):
            return v
        if isinstance(v, (int, Fraction)):
            return GaussRat(v, 0)
        return NotImplemented

    def __add__(self, other):
        o = GaussRat._lift(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussRat._lift(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussRat._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = GaussRat._lift(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in QQ(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = GaussRat._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = GaussRat._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussRat(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = GaussRat._lift(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"


RATIONALS = "RATIONALS"
GAUSSIAN_RATIONALS = "GAUSSIAN_RATIONALS"
PRIME_FIELD = "PRIME_FIELD"


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def _fmt_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class FieldTag:
    """A coefficient field.  Use the constructors rationals(), gaussian(), prime(q).

    Elements are plain Python values: Fraction for QQ, GaussRat for QQ(i),
    and ints in [0, q) for F_q.  Every arithmetic result produced by the
    polynomial layer passes through red() to stay canonical.
    """

    __slots__ = ("kind", "q")

    def __init__(self, kind, q=None):
        if kind == PRIME_FIELD:
            if q is None or not is_prime(q) or q == 2:
                raise ValueError(f"prime field needs an odd prime modulus, got {q!r}")
        elif kind in (RATIONALS, GAUSSIAN_RATIONALS):
            q = None
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.q = q

    @classmethod
    def rationals(cls):
        return cls(RATIONALS)

    @classmethod
    def gaussian(cls):
        return cls(GAUSSIAN_RATIONALS)

    @classmethod
    def prime(cls, q=13):
        return cls(PRIME_FIELD, q)

    @classmethod
    def parse(cls, text):
        """Parse the command-line names qq, qqi, fp:Q."""
        t = text.strip().lower()
        if t == "qq":
            return cls.rationals()
        if t == "qqi":
            return cls.gaussian()
        if t.startswith("fp:"):
            try:
                q = int(t[3:])
            except ValueError:
                raise ValueError(f"bad prime in field name {text!r}") from None
            return cls.prime(q)
        raise ValueError(f"unknown field {text!r} (expected qq, qqi or fp:Q)")

    @property
    def name(self):
        if self.kind == RATIONALS:
            return "qq"
        if self.kind == GAUSSIAN_RATIONALS:
            return "qqi"
        return f"fp:{self.q}"

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"FieldTag({self.name})"

    def __eq__(self, other):
        return isinstance(other, FieldTag) and self.kind == other.kind and self.q == other.q

    def __hash__(self):
        return hash((self.kind, self.q))

    @property
    def characteristic(self):
        return self.q if self.kind == PRIME_FIELD else 0

    @property
    def is_finite(self):
        return self.kind == PRIME_FIELD

    @property
    def is_rational(self):
        return self.kind == RATIONALS

    # element handling

    def red(self, c):
        """Canonical representative of an already-valid element."""
        if self.kind == PRIME_FIELD:
            return c % self.q
        return c

    def coerce(self, v):
        """Map an int, Fraction or GaussRat into this field."""
        if self.kind == PRIME_FIELD:
            if isinstance(v, GaussRat):
                if v.im != 0:
                    s = self.sqrt_minus_one()
                    if s is None:
                        raise ValueError(f"{v!r} is not representable in F_{self.q}")
                    return (self.coerce(v.re) + self.coerce(v.im) * s) % self.q
                v = v.re
            if isinstance(v, Fraction):
                den = v.denominator % self.q
                if den == 0:
                    raise ValueError(f"{v} is not representable in F_{self.q}")
                return v.numerator * pow(den, -1, self.q) % self.q
            return int(v) % self.q
        if self.kind == RATIONALS:
            if isinstance(v, GaussRat):
                if v.im != 0:
                    raise ValueError(f"{v!r} is not rational")
                return v.re
            return Fraction(v)
        if isinstance(v, GaussRat):
            return v
        return GaussRat(v)

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def is_zero(self, c):
        return c == 0

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == PRIME_FIELD:
            return pow(c, -1, self.q)
        if self.kind == RATIONALS:
            return 1 / Fraction(c)
        return c.inverse()

    def div(self, a, b):
        return self.red(a * self.inv(b))

    def power(self, c, n):
        if self.kind == PRIME_FIELD:
            return pow(c, n, self.q)
        if n < 0:
            return self.inv(c) ** (-n)
        return self.coerce(c) ** n

    def sqrt_minus_one(self):
        """A fixed square root of -1, or None when the field has none."""
        if self.kind == GAUSSIAN_RATIONALS:
            return GaussRat(0, 1)
        if self.kind == RATIONALS:
            return None
        if self.q % 4 != 1:
            return None
        for g in range(2, self.q):
            r = pow(g, (self.q - 1) // 4, self.q)
            if r * r % self.q == self.q - 1:
                return min(r, self.q - r)
        return None  # pragma: no cover

    def has_sqrt_minus_one(self):
        return self.sqrt_minus_one() is not None

    def require_sqrt_minus_one(self):
        if not self.has_sqrt_minus_one():
            raise ValueError(f"field {self.name} does not contain a square root of -1")

    def has_roots_of_unity(self, m):
        """True when the field holds a primitive m-th root of unity."""
        if m <= 2:
            return True
        if self.kind == PRIME_FIELD:
            return (self.q - 1) % m == 0
        if self.kind == GAUSSIAN_RATIONALS:
            return m == 4
        return False

    def is_mth_power(self, c, m):
        """Decide whether the nonzero element c is an m-th power."""
        if c == 0:
            return True
        if self.kind == PRIME_FIELD:
            g = math.gcd(m, self.q - 1)
            return pow(c, (self.q - 1) // g, self.q) == 1
        if self.kind == RATIONALS:
            c = Fraction(c)
            if c < 0:
                if m % 2 == 0:
                    return False
                c = -c
            return _int_root(c.numerator, m) is not None and _int_root(c.denominator, m) is not None
        return _gauss_is_mth_power(c, m)

    def random_element(self, rng: random.Random, nonzero=False, bound=5):
        """A seeded random element.  Over the infinite fields entries are small integers."""
        while True:
            if self.kind == PRIME_FIELD:
                c = rng.randrange(self.q)
            elif self.kind == RATIONALS:
                c = Fraction(rng.randint(-bound, bound))
            else:
                c = GaussRat(rng.randint(-bound, bound), rng.randint(-bound, bound))
            if not nonzero or c != 0:
                return c

    def elements(self):
        if self.kind != PRIME_FIELD:
            raise ValueError("only finite fields can be enumerated")
        return range(self.q)

    def format(self, c):
        """Coefficient as text.  F_p elements print as symmetric representatives."""
        if self.kind == PRIME_FIELD:
            c %= self.q
            return str(c - self.q if c > self.q // 2 else c)
        if self.kind == RATIONALS:
            return _fmt_fraction(Fraction(c))
        if c.im == 0:
            return _fmt_fraction(c.re)
        if c.re == 0:
            return f"({_fmt_fraction(c.im)}*i)" if c.im != 1 else "(1*i)"
        sign = "+" if c.im > 0 else "-"
        return f"({_fmt_fraction(c.re)}{sign}{_fmt_fraction(abs(c.im))}*i)"

    def signed(self, c):
        """(is_negative, absolute text) used by the polynomial printer."""
        if self.kind == PRIME_FIELD:
            s = c - self.q if c > self.q // 2 else c
            return s < 0, str(abs(s))
        if self.kind == RATIONALS:
            c = Fraction(c)
            return c < 0, _fmt_fraction(abs(c))
        if c.im == 0:
            return c.re < 0, _fmt_fraction(abs(c.re))
        if c.re == 0 and c.im < 0:
            return True, self.format(-c)
        return False, self.format(c)

    def to_json(self):
        return self.name


def _int_root(n, m):
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / m)) if n.bit_length() < 1000 else None
    if r is None:
        lo, hi = 0, 1 << (n.bit_length() // m + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** m < n:
                lo = mid + 1
            else:
                hi = mid
        r = lo
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** m == n:
            return cand
    return None


def _gauss_is_mth_power(c: GaussRat, m):
    # Only squares are needed here: decide c = w^2 with w in QQ(i).
    if m != 2:
        raise NotImplementedError("m-th power test in QQ(i) implemented for m = 2 only")
    n = c.norm()
    s = _frac_sqrt(n)
    if s is None:
        return False
    # w = u + v i with u^2 - v^2 = re, 2uv = im, u^2 + v^2 = |c| = s
    for sign in (1, -1):
        u2 = (c.re + sign * s) / 2
        if u2 < 0:
            continue
        u = _frac_sqrt(u2)
        if u is None:
            continue
        if u == 0:
            v = _frac_sqrt(-c.re)
            if v is not None and v * v == -c.re and c.im == 0:
                return True
            continue
        v = c.im / (2 * u)
        if u * u - v * v == c.re:
            return True
    return False


def _frac_sqrt(q: Fraction):
    q = Fraction(q)
    if q < 0:
        return None
    a = _int_root(q.numerator, 2)
    b = _int_root(q.denominator, 2)
    if a is None or b is None:
        return None
    return Fraction(a, b)
