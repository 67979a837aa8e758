"""Valuations along curves, residue classes and m-th power tests."""

from __future__ import annotations

from ..polycore import upoly as U
from ..polycore.mpoly import MPoly
from ..polycore.ratfn import RatFn
from .curves import PlaneCurve
from .divisor import CurveDivisor, powerproduct_divisor

TRIVIAL, NONTRIVIAL, UNDECIDED = "TRIVIAL", "NONTRIVIAL", "UNDECIDED"


class PowerProduct:
    """const * prod g_j^k_j with g_j monic polynomials, kept unexpanded.

    Residue values are products of many minors raised to various powers;
    storing them factored keeps valuations and divisors cheap and exact.
    """

    __slots__ = ("field", "const", "factors")

    def __init__(self, field, const=1, factors=()):
        self.field = field
        c = field.red(field.coerce(const))
        if c == 0:
            raise ZeroDivisionError("zero is not allowed in a power product")
        acc = {}
        for g, k in factors:
            if k == 0:
                continue
            if g.is_zero():
                raise ZeroDivisionError("zero factor in a power product")
            if g.is_constant():
                c = field.red(c * field.power(g.constant_value(), k))
                continue
            lc = g.lc()
            if lc != 1:
                c = field.red(c * field.power(lc, k))
                g = g.monic()
            if len(g.terms) == 1:
                # a monomial splits into its variables
                (exps,) = g.terms
                for v, e in enumerate(exps):
                    if e:
                        xv = MPoly.var(field, v)
                        acc[xv] = acc.get(xv, 0) + e * k
                continue
            acc[g] = acc.get(g, 0) + k
        self.const = c
        self.factors = tuple(sorted(((g, k) for g, k in acc.items() if k != 0), key=lambda gk: str(gk[0])))

    @classmethod
    def from_ratfn(cls, h: RatFn):
        if h.is_zero():
            raise ZeroDivisionError("zero function")
        return cls(h.field, 1, [(h.num, 1), (h.den, -1)])

    @classmethod
    def of(cls, value, field=None):
        if isinstance(value, PowerProduct):
            return value
        if isinstance(value, RatFn):
            return cls.from_ratfn(value)
        if isinstance(value, MPoly):
            return cls(value.field, 1, [(value, 1)])
        return cls(field, value)

    def __mul__(self, other):
        o = PowerProduct.of(other, self.field)
        return PowerProduct(self.field, self.field.red(self.const * o.const), list(self.factors) + list(o.factors))

    __rmul__ = __mul__

    def __pow__(self, k):
        return PowerProduct(self.field, self.field.power(self.const, k), [(g, e * k) for g, e in self.factors])

    def inverse(self):
        return self ** -1

    def __truediv__(self, other):
        return self * PowerProduct.of(other, self.field).inverse()

    def is_constant(self):
        return not self.factors

    def degree(self):
        return sum(k * g.degree() for g, k in self.factors)

    def expand(self) -> RatFn:
        F = self.field
        num = MPoly.const(F, self.const)
        den = MPoly.one(F)
        for g, k in self.factors:
            if k > 0:
                num = num * g ** k
            else:
                den = den * g ** (-k)
        return RatFn(num, den)

    def valuation(self, curve: PlaneCurve):
        return sum(k * strip_curve(g, curve)[0] for g, k in self.factors)

    def unit_part(self, curve: PlaneCurve):
        """(v_C, the product with every power of the curve form removed)."""
        total = 0
        rest = []
        for g, k in self.factors:
            v, h = strip_curve(g, curve)
            total += k * v
            rest.append((h, k))
        return total, PowerProduct(self.field, self.const, rest)

    def __eq__(self, other):
        return (isinstance(other, PowerProduct) and self.const == other.const
                and self.factors == other.factors)

    def __hash__(self):
        return hash((self.const, self.factors))

    def __str__(self):
        F = self.field
        parts = [] if self.const == 1 and self.factors else [F.format(self.const)]
        for g, k in self.factors:
            base = f"({g})"
            parts.append(base if k == 1 else f"{base}^{k}" if k > 0 else f"{base}^({k})")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"PowerProduct({self})"

    def to_json(self):
        return {"const": self.field.format(self.const),
                "factors": [{"poly": str(g), "exp": k} for g, k in self.factors]}


def strip_curve(g: MPoly, curve: PlaneCurve):
    """(k, h) with g = f^k * h and f not dividing h."""
    k = 0
    f = curve.f
    while not g.is_constant() and g.degree() >= f.degree():
        q, r = g.divmod(f)
        if not r.is_zero():
            break
        g = q
        k += 1
    return k, g


def curve_valuation(h, c: PlaneCurve) -> int:
    """v_C(h): exact-division count of the curve form in numerator minus denominator."""
    if isinstance(h, RatFn):
        if h.is_zero():
            raise ZeroDivisionError("valuation of zero")
        return strip_curve(h.num, c)[0] - strip_curve(h.den, c)[0]
    if isinstance(h, MPoly):
        if h.is_zero():
            raise ZeroDivisionError("valuation of zero")
        return strip_curve(h, c)[0]
    return PowerProduct.of(h).valuation(c)


class NonzeroValuation(ValueError):
    pass


class ResidueClass:
    """A nonzero function on a curve taken modulo m-th powers.

    The value is a PowerProduct whose factors are not divisible by the
    curve form.  Only its class in k(C)^*/k(C)^*m is meaningful.
    """

    def __init__(self, curve: PlaneCurve, value, modulus: int):
        value = PowerProduct.of(value, curve.field)
        for g, _ in value.factors:
            if curve.f.divides(g):
                raise NonzeroValuation("residue value has a factor vanishing on the curve")
        self.curve = curve
        self.value = value
        self.modulus = modulus

    @property
    def field(self):
        return self.curve.field

    @property
    def ratfn(self):
        return self.value.expand()

    def __mul__(self, other):
        self._check(other)
        return ResidueClass(self.curve, self.value * other.value, self.modulus)

    def __truediv__(self, other):
        self._check(other)
        return ResidueClass(self.curve, self.value / other.value, self.modulus)

    def __pow__(self, k):
        return ResidueClass(self.curve, self.value ** k, self.modulus)

    def _check(self, other):
        if other.curve != self.curve or other.modulus != self.modulus:
            raise ValueError("residue classes on different curves or moduli")

    def divisor(self, seed=0) -> CurveDivisor:
        return powerproduct_divisor(self.curve, list(self.value.factors), seed=seed)

    def triviality(self, seed=0):
        return class_triviality(self, seed=seed)

    def is_trivial(self, seed=0):
        return self.triviality(seed) == TRIVIAL

    def __str__(self):
        return f"[{self.value}] on V({self.curve.f}) mod {self.modulus}-th powers"

    def to_json(self):
        return {"curve": str(self.curve.f), "modulus": self.modulus, "value": self.value.to_json()}


def residue_at_curve(h, c: PlaneCurve, m: int) -> ResidueClass:
    """Class of h on c; requires v_C(h) = 0."""
    pp = PowerProduct.of(h, c.field)
    v, unit = pp.unit_part(c)
    if v != 0:
        raise NonzeroValuation(f"function has valuation {v} along the curve; strip the uniformizer first")
    return ResidueClass(c, unit, m)


def divisor_on_curve(g, c: PlaneCurve, seed=0) -> CurveDivisor:
    """Divisor of the quotient of forms g on the curve c (numerator minus denominator)."""
    pp = PowerProduct.of(g, c.field)
    factors = []
    for h, k in pp.factors:
        if not h.is_homogeneous():
            h = h.homogenize("z")
        factors.append((h, k))
    return powerproduct_divisor(c, factors, seed=seed)


def binary_restriction(g: MPoly, param):
    """g(X(s, t)) as (lc, t-multiplicity, dense poly in s after t = 1)."""
    F = g.field
    b = g.subs({"x": param[0], "y": param[1], "z": param[2]})
    if b.is_zero():
        raise ValueError("form vanishes on the parametrized curve")
    d = b.degree()
    u = U.strip([b.terms.get((a, d - a, 0, 0), F.zero()) for a in range(d + 1)])
    tmult = d - U.deg(u)
    return u, tmult


def is_mth_power_on_rational_curve(r: ResidueClass) -> bool:
    """Exact test on a line or a smooth conic with a rational point."""
    c = r.curve
    F = c.field
    m = r.modulus
    if not (c.is_line() or (c.is_conic() and c.is_rational())):
        raise ValueError("curve is not parametrizable by the implemented cases")
    if r.value.degree() != 0:
        raise ValueError("residue value is not a quotient of forms of equal degree")
    param = c.parametrization()
    num = U.const(r.value.const, F)
    den = U.const(1, F)
    tm = 0
    for g, k in r.value.factors:
        u, t = binary_restriction(g, param)
        tm += k * t
        if k > 0:
            num = U.mul(num, U.power(u, k, F), F)
        else:
            den = U.mul(den, U.power(u, -k, F), F)
    if tm % m:
        return False
    g = U.gcd(num, den, F)
    num = U.quo(num, g, F)
    den = U.quo(den, g, F)
    lc = F.div(num[-1], den[-1])
    if not F.is_mth_power(lc, m):
        return False
    for p in (num, den):
        if U.deg(p) > 0:
            _, parts = U.sqf_list(p, F)
            if any(k % m for _, k in parts):
                return False
    return True


def class_triviality(r: ResidueClass, seed=0):
    """TRIVIAL / NONTRIVIAL / UNDECIDED for a residue class.

    Exact on lines and rational conics; constants and explicit m-th powers
    are decided directly; otherwise an m-indivisible cluster multiplicity
    proves nontriviality and anything else is UNDECIDED.
    """
    c = r.curve
    if r.value.is_constant():
        return TRIVIAL if c.field.is_mth_power(r.value.const, r.modulus) else NONTRIVIAL
    if all(k % r.modulus == 0 for _, k in r.value.factors) and c.field.is_mth_power(r.value.const, r.modulus):
        return TRIVIAL  # an explicit m-th power
    if c.is_line() or (c.is_conic() and c.is_rational()):
        return TRIVIAL if is_mth_power_on_rational_curve(r) else NONTRIVIAL
    d = r.divisor(seed=seed)
    if not d.all_divisible_by(r.modulus):
        return NONTRIVIAL
    return UNDECIDED


def compare_residues(r1: ResidueClass, r2: ResidueClass, seed=0):
    """True / False / None (undecided) for equality of classes."""
    t = class_triviality(r1 / r2, seed=seed)
    return {TRIVIAL: True, NONTRIVIAL: False}.get(t)


def divisor_level_equal(r1: ResidueClass, r2: ResidueClass, seed=0):
    """The necessary condition: div(r1 / r2) is divisible by m."""
    return (r1 / r2).divisor(seed=seed).all_divisible_by(r1.modulus)
