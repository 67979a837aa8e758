"""Sparse multivariate polynomials over an exact field.

Variables come from the fixed universe x > y > z > t.  Terms are kept in a
dict from exponent tuples to nonzero coefficients; the term order used for
leading terms, division and printing is graded lex.
"""

from __future__ import annotations

import heapq
import random

from .fields import FieldTag

VARS = ("x", "y", "z", "t")
NVARS = len(VARS)
_ZERO_EXP = (0,) * NVARS


def var_index(v):
    if isinstance(v, int):
        if not 0 <= v < NVARS:
            raise ValueError(f"variable index {v} out of range")
        return v
    try:
        return VARS.index(v)
    except ValueError:
        raise ValueError(f"unknown variable {v!r}; expected one of {VARS}") from None


def grlex_key(e):
    return (sum(e), e)


def _neg_key(e):
    # max-heap entry for graded lex
    return (-sum(e), tuple(-a for a in e))


class FieldMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


class MPoly:
    """Immutable sparse polynomial.  Build with the classmethods or parse_poly."""

    __slots__ = ("field", "terms", "_hash", "_lead")

    def __init__(self, field: FieldTag, terms=None):
        self.field = field
        if terms:
            red = field.red
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != NVARS:
                    e = e + (0,) * (NVARS - len(e))
                c = red(field.coerce(c))
                if c != 0:
                    clean[e] = c
            self.terms = clean
        else:
            self.terms = {}
        self._hash = None
        self._lead = None

    @classmethod
    def _raw(cls, field, terms):
        p = cls.__new__(cls)
        p.field = field
        p.terms = terms
        p._hash = None
        p._lead = None
        return p

    # constructors

    @classmethod
    def zero(cls, field):
        return cls._raw(field, {})

    @classmethod
    def const(cls, field, c):
        c = field.red(field.coerce(c))
        return cls._raw(field, {_ZERO_EXP: c} if c != 0 else {})

    @classmethod
    def one(cls, field):
        return cls.const(field, 1)

    @classmethod
    def var(cls, field, name):
        e = [0] * NVARS
        e[var_index(name)] = 1
        return cls._raw(field, {tuple(e): field.one()})

    @classmethod
    def monomial(cls, field, exps, c=1):
        return cls(field, {tuple(exps): c})

    @classmethod
    def random_form(cls, field, degree, rng: random.Random, nvars=3, density=1.0):
        """Random homogeneous form of the given degree in the first nvars variables."""
        terms = {}
        for e in monomials(degree, nvars):
            if density < 1.0 and rng.random() > density:
                continue
            terms[e + (0,) * (NVARS - nvars)] = field.random_element(rng)
        return cls(field, terms)

    # basic queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self):
        return self.terms.get(_ZERO_EXP, self.field.zero())

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get(_ZERO_EXP) == 1

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            e = max(self.terms, key=grlex_key)
            self._lead = (e, self.terms[e])
        return self._lead

    def lc(self):
        return self.leading()[1]

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, v):
        i = var_index(v)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def vars_used(self):
        used = set()
        for e in self.terms:
            for i, a in enumerate(e):
                if a:
                    used.add(i)
        return sorted(used)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def __len__(self):
        return len(self.terms)

    # arithmetic

    def _check(self, other):
        if isinstance(other, MPoly):
            if other.field != self.field:
                raise FieldMismatch(f"field mismatch: {self.field.name} vs {other.field.name}")
            return other
        try:
            return MPoly.const(self.field, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        res = dict(big)
        red = self.field.red
        for e, c in small.items():
            v = red(res.get(e, 0) + c)
            if v != 0:
                res[e] = v
            else:
                res.pop(e, None)
        return MPoly._raw(self.field, res)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.red
        return MPoly._raw(self.field, {e: red(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return MPoly._raw(self.field, {})
        if len(b) == 1:
            (eb, cb), = b.items()
            return self._mul_term(eb, cb)
        if len(a) == 1:
            (ea, ca), = a.items()
            return other._mul_term(ea, ca)
        res = {}
        get = res.get
        for ea, ca in a.items():
            a0, a1, a2, a3 = ea
            for eb, cb in b.items():
                e = (a0 + eb[0], a1 + eb[1], a2 + eb[2], a3 + eb[3])
                res[e] = get(e, 0) + ca * cb
        red = self.field.red
        out = {}
        for e, c in res.items():
            c = red(c)
            if c != 0:
                out[e] = c
        return MPoly._raw(self.field, out)

    __rmul__ = __mul__

    def _mul_term(self, exp, c):
        red = self.field.red
        out = {}
        for e, v in self.terms.items():
            w = red(v * c)
            if w != 0:
                out[tuple(a + b for a, b in zip(e, exp))] = w
        return MPoly._raw(self.field, out)

    def scale(self, c):
        c = self.field.red(self.field.coerce(c))
        if c == 0:
            return MPoly.zero(self.field)
        return self._mul_term(_ZERO_EXP, c)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, (int,)):
            return self.terms == MPoly.const(self.field, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    # division

    def divmod(self, g: "MPoly"):
        """Graded-lex division by a single divisor: self = q*g + r."""
        g = self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        F = self.field
        red = F.red
        lt_e, lt_c = g.leading()
        inv = F.inv(lt_c)
        rest = [(e, c) for e, c in g.terms.items() if e != lt_e]
        p = dict(self.terms)
        heap = [_neg_key(e) + (e,) for e in p]
        heapq.heapify(heap)
        q, r = {}, {}
        while heap:
            item = heapq.heappop(heap)
            e = item[-1]
            c = p.pop(e, None)
            if c is None:
                continue
            m = tuple(a - b for a, b in zip(e, lt_e))
            if min(m) < 0:
                r[e] = c
                continue
            qc = red(c * inv)
            q[m] = qc
            for ge, gc in rest:
                ne = (ge[0] + m[0], ge[1] + m[1], ge[2] + m[2], ge[3] + m[3])
                old = p.get(ne)
                v = red((old if old is not None else 0) - qc * gc)
                if v != 0:
                    if old is None:
                        heapq.heappush(heap, _neg_key(ne) + (ne,))
                    p[ne] = v
                elif old is not None:
                    del p[ne]
        return MPoly._raw(F, q), MPoly._raw(F, r)

    def exact_div(self, g: "MPoly"):
        q, r = self.divmod(g)
        if not r.is_zero():
            raise NotDivisible("exact_div: remainder is nonzero")
        return q

    def divides(self, h: "MPoly"):
        """True when self divides h."""
        if self.is_zero():
            return h.is_zero()
        if h.is_zero():
            return True
        if self.is_constant():
            return True
        for i in range(NVARS):
            if self.degree_in(i) > h.degree_in(i):
                return False
        return h.divmod(self)[1].is_zero()

    def rem(self, g):
        return self.divmod(g)[1]

    def __mod__(self, g):
        return self.divmod(g)[1]

    def __floordiv__(self, g):
        return self.exact_div(g)

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc()))

    # calculus and substitution

    def partial(self, v):
        i = var_index(v)
        red = self.field.red
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            w = red(c * k)
            if w != 0:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = w
        return MPoly._raw(self.field, out)

    def evaluate(self, point):
        """Evaluate at a point given as a dict var->value or a sequence (x, y, z, t)."""
        F = self.field
        if isinstance(point, dict):
            vals = [None] * NVARS
            for k, v in point.items():
                vals[var_index(k)] = v
        else:
            vals = list(point) + [None] * (NVARS - len(point))
        total = F.zero()
        for e, c in self.terms.items():
            term = c
            for i, a in enumerate(e):
                if a:
                    if vals[i] is None:
                        raise ValueError(f"no value for variable {VARS[i]}")
                    term = term * F.power(F.red(F.coerce(vals[i])), a)
            total = F.red(total + term)
        return total

    def subs(self, images):
        """Substitute polynomials for variables: images maps var -> MPoly (or constant)."""
        F = self.field
        imgs = [None] * NVARS
        for k, v in images.items():
            imgs[var_index(k)] = v if isinstance(v, MPoly) else MPoly.const(F, v)
        powers = [dict() for _ in range(NVARS)]

        def pw(i, a):
            cache = powers[i]
            if a not in cache:
                cache[a] = imgs[i] ** a
            return cache[a]

        groups = {}
        for e, c in self.terms.items():
            kept = tuple(a if imgs[i] is None else 0 for i, a in enumerate(e))
            subst = tuple(a if imgs[i] is not None else 0 for i, a in enumerate(e))
            groups.setdefault(subst, {})[kept] = c
        total = MPoly.zero(F)
        for subst, kept_terms in groups.items():
            part = MPoly._raw(F, kept_terms)
            for i, a in enumerate(subst):
                if a:
                    part = part * pw(i, a)
            total = total + part
        return total

    def linear_change(self, matrix):
        """Substitute (x, y, z) -> matrix * (x, y, z); matrix entries are field elements."""
        F = self.field
        xs = [MPoly.var(F, v) for v in "xyz"]
        images = {}
        for i, v in enumerate("xyz"):
            img = MPoly.zero(F)
            for j in range(3):
                img = img + xs[j].scale(matrix[i][j])
            images[v] = img
        return self.subs(images)

    def coeffs_in(self, v):
        """Dict power -> coefficient polynomial (free of v)."""
        i = var_index(v)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: MPoly._raw(self.field, t) for k, t in out.items()}

    def homogenize(self, v="z"):
        i = var_index(v)
        d = self.degree()
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += d - sum(e)
            out[tuple(ne)] = c
        return MPoly._raw(self.field, out)

    def dehomogenize(self, v="z"):
        return self.subs({v: 1})

    def homogeneous_part(self, d):
        return MPoly._raw(self.field, {e: c for e, c in self.terms.items() if sum(e) == d})

    def content_monomial(self):
        """Largest monomial dividing every term, as an exponent tuple."""
        if not self.terms:
            return _ZERO_EXP
        return tuple(min(e[i] for e in self.terms) for i in range(NVARS))

    def to_univariate(self, v):
        """Dense coefficient list (low to high) when self only involves v."""
        i = var_index(v)
        d = self.degree_in(i)
        out = [self.field.zero()] * (d + 1) if d >= 0 else []
        for e, c in self.terms.items():
            if any(a for j, a in enumerate(e) if j != i):
                raise ValueError(f"polynomial is not univariate in {VARS[i]}")
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, field, coeffs, v):
        i = var_index(v)
        out = {}
        for k, c in enumerate(coeffs):
            if c != 0:
                e = [0] * NVARS
                e[i] = k
                out[tuple(e)] = c
        return cls._raw(field, out)

    # printing

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: grlex_key(ec[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            neg, mag = F.signed(c)
            mono = "*".join(
                (VARS[i] if a == 1 else f"{VARS[i]}^{a}") for i, a in enumerate(e) if a
            )
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"MPoly({self.field.name}, {str(self)!r})"


def monomials(degree, nvars=3):
    """Exponent tuples of the given total degree in nvars variables, graded-lex descending."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(degree - a, nvars - 1):
            out.append((a,) + rest)
    return out
