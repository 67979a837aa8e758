"""Formal sums of m-symbols (a, b) over the function field of the plane.

Slots are stored as PowerProducts so that products of minors stay factored.
Simplification only applies valid relations: antisymmetry, bilinearity in
either slot, and triviality of (1, b), (c^m, b) and (a, (-a)^n).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .polycore.mgcd import gcd, squarefree_part
from .polycore.mpoly import MPoly
from .polycore.ratfn import RatFn
from .valuation.curves import PlaneCurve, certify_irreducible, rational_line_factors
from .valuation.residue import (
    NONTRIVIAL,
    TRIVIAL,
    UNDECIDED,
    PowerProduct,
    ResidueClass,
    class_triviality,
    strip_curve,
)

TAME, PAPER = "tame", "paper"


class SymbolError(ValueError):
    pass


def _slot(v, F=None):
    if isinstance(v, PowerProduct):
        return v
    if isinstance(v, RatFn):
        if v.is_zero():
            raise SymbolError("symbol entries must be nonzero")
        return PowerProduct.from_ratfn(v)
    if isinstance(v, MPoly):
        if v.is_zero():
            raise SymbolError("symbol entries must be nonzero")
        return PowerProduct(v.field, 1, [(v, 1)])
    if F is None:
        raise SymbolError("constant slot needs a field")
    if v == 0:
        raise SymbolError("symbol entries must be nonzero")
    return PowerProduct(F, v)


def _slot_key(p: PowerProduct):
    return str(p)


@dataclass(frozen=True)
class SymbolClass:
    """sum of coeff * (a, b) with coefficients mod m; empty = trivial class."""

    modulus: int
    terms: tuple = dc_field(default=())
    field: object = None

    def __post_init__(self):
        if self.modulus < 2:
            raise SymbolError("modulus must be at least 2")
        cleaned = []
        F = self.field
        for a, b, c in self.terms:
            if F is None:
                F = a.field if isinstance(a, (PowerProduct, RatFn, MPoly)) else None
            a, b = _slot(a, F), _slot(b, F)
            c %= self.modulus
            if c:
                cleaned.append((a, b, c))
        object.__setattr__(self, "terms", tuple(cleaned))
        if F is None and cleaned:
            F = cleaned[0][0].field
        object.__setattr__(self, "field", F)

    def is_empty(self):
        return not self.terms

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return negate(self)

    def __len__(self):
        return len(self.terms)

    def to_json(self):
        return {
            "m": self.modulus,
            "terms": [{"a": a.expand().to_json(), "b": b.expand().to_json(), "coeff": c} for a, b, c in self.terms],
        }

    @classmethod
    def from_json(cls, data, F):
        try:
            m = int(data["m"])
            raw = data["terms"]
        except (KeyError, TypeError, ValueError):
            raise SymbolError("symbol class JSON needs integer 'm' and a 'terms' list") from None
        terms = []
        for k, t in enumerate(raw):
            try:
                a = RatFn.parse(t["a"], F)
                b = RatFn.parse(t["b"], F)
                c = int(t.get("coeff", 1))
            except KeyError as exc:
                raise SymbolError(f"term {k}: missing key {exc}") from None
            terms.append((a, b, c))
        return symbol_sum(terms, m, F)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{'' if c == 1 else str(c) + '*'}({a}, {b})" for a, b, c in self.terms)


def _check_roots(F, m):
    if not F.has_roots_of_unity(m):
        raise SymbolError(f"field {F.name} lacks a primitive {m}-th root of unity")


def symbol(a, b, m: int) -> SymbolClass:
    """The single symbol (a, b) of modulus m."""
    F = next((v.field for v in (a, b) if isinstance(v, (RatFn, MPoly, PowerProduct))), None)
    if F is None:
        raise SymbolError("at least one symbol entry must be a polynomial or rational function")
    _check_roots(F, m)
    return SymbolClass(m, ((_slot(a, F), _slot(b, F), 1),), F)


def symbol_sum(terms, m, F):
    _check_roots(F, m)
    return SymbolClass(m, tuple((_slot(a, F), _slot(b, F), c) for a, b, c in terms), F)


def negate(s: SymbolClass) -> SymbolClass:
    return SymbolClass(s.modulus, tuple((a, b, -c) for a, b, c in s.terms), s.field)


def add(s1: SymbolClass, s2: SymbolClass, simplify_result=True) -> SymbolClass:
    if s1.modulus != s2.modulus:
        raise SymbolError(f"modulus mismatch: {s1.modulus} vs {s2.modulus}")
    F = s1.field or s2.field
    out = SymbolClass(s1.modulus, s1.terms + s2.terms, F)
    return simplify(out) if simplify_result else out


def _is_trivial_slot(p: PowerProduct, m):
    return p.is_constant() and p.field.is_mth_power(p.const, m)


def _is_neg_power(a: PowerProduct, b: PowerProduct):
    """True when b = (-a)^n for some integer n."""
    F = a.field
    if a.factors:
        ga, ka = a.factors[0]
        kb = dict(b.factors).get(ga)
        if kb is None or kb % ka:
            return False
        n = kb // ka
        return b == (a * PowerProduct(F, -1)) ** n
    if b.factors:
        return False
    na = F.red(-a.const)
    if F.is_finite:
        x = F.one()
        for _ in range(F.q - 1):
            if x == b.const:
                return True
            x = F.red(x * na)
        return False
    for n in range(-16, 17):
        if F.power(na, n) == b.const:
            return True
    return False


def simplify(s: SymbolClass) -> SymbolClass:
    """Apply the relations until nothing changes; deterministic order."""
    m = s.modulus
    F = s.field
    terms = [(a, b, c % m) for a, b, c in s.terms]
    while True:
        before = [(str(a), str(b), c) for a, b, c in terms]
        # orient slots
        oriented = []
        for a, b, c in terms:
            if _slot_key(a) > _slot_key(b):
                a, b, c = b, a, (-c) % m
            oriented.append((a, b, c))
        # sum coefficients of identical pairs
        acc = {}
        order = []
        for a, b, c in oriented:
            key = (_slot_key(a), _slot_key(b))
            if key not in acc:
                acc[key] = [a, b, 0]
                order.append(key)
            acc[key][2] = (acc[key][2] + c) % m
        terms = [tuple(acc[k]) for k in sorted(order)]
        # delete trivial terms
        terms = [
            (a, b, c) for a, b, c in terms
            if c and not _is_trivial_slot(a, m) and not _is_trivial_slot(b, m)
            and not _is_neg_power(a, b) and not _is_neg_power(b, a)
        ]
        # bilinear merge of equal-coefficient terms sharing a slot
        merged = True
        while merged:
            merged = False
            for i in range(len(terms)):
                for j in range(i + 1, len(terms)):
                    a1, b1, c1 = terms[i]
                    a2, b2, c2 = terms[j]
                    new = None
                    # (b, a) = -(a, b), so try the second term both ways round
                    for a2, b2, c2 in ((a2, b2, c2), (b2, a2, (-c2) % m)):
                        if c1 != c2:
                            continue
                        if a1 == a2:
                            new = (a1, b1 * b2, c1)
                        elif b1 == b2:
                            new = (a1 * a2, b1, c1)
                        if new:
                            break
                    if new is None:
                        continue
                    terms = terms[:i] + [new] + terms[i + 1:j] + terms[j + 1:]
                    merged = True
                    break
                if merged:
                    break
        after = [(str(a), str(b), c) for a, b, c in terms]
        if after == before:
            break
    return SymbolClass(m, tuple(terms), F)


# residues


def residue_symbol(s: SymbolClass, c: PlaneCurve, mode=TAME) -> ResidueClass:
    """Tame residue along c: product over terms of sign * a^v(b) * b^-v(a)."""
    if mode not in (TAME, PAPER):
        raise SymbolError(f"unknown residue mode {mode!r}")
    F = c.field
    m = s.modulus
    total = PowerProduct(F, 1)
    for a, b, coeff in s.terms:
        va, ua = a.unit_part(c)
        vb, ub = b.unit_part(c)
        if va == 0 and vb == 0:
            continue
        # a = pi^va ua, b = pi^vb ub  =>  a^vb / b^va = ua^vb / ub^va (pi cancels)
        val = ua ** vb * ub ** (-va)
        if mode == TAME and (va * vb) % 2:
            val = val * PowerProduct(F, -1)
        total = total * val ** coeff
    return ResidueClass(c, total, m)


def _coprime_base(polys):
    """Pairwise coprime squarefree factors whose products give every input up to units."""
    base = []
    for p in polys:
        if p.is_constant():
            continue
        p = squarefree_part(p)
        pending = [p]
        while pending:
            q = pending.pop()
            if q.is_constant():
                continue
            placed = False
            for i, b in enumerate(base):
                g = gcd(q, b)
                if g.is_constant():
                    continue
                del base[i]
                for piece in (g, b.exact_div(g), q.exact_div(g)):
                    if not piece.is_constant():
                        pending.append(squarefree_part(piece))
                placed = True
                break
            if not placed:
                base.append(q.monic())
    # deduplicate
    uniq = {}
    for b in base:
        uniq[str(b)] = b
    return [uniq[k] for k in sorted(uniq)]


class UndeclaredFactor(SymbolError):
    pass


def support_curves(s: SymbolClass, declared=(), assume_irreducible=False, seed=0):
    """Irreducible curves dividing some entry of s."""
    declared = list(declared)
    polys = []
    for a, b, _ in s.terms:
        for p in (a, b):
            polys.extend(g for g, _ in p.factors)
    base = _coprime_base(polys)
    curves = []
    for b in base:
        # split off declared curves first
        rest = b
        for d in declared:
            while not rest.is_constant() and d.f.divides(rest):
                rest = rest.exact_div(d.f)
                if d not in curves:
                    curves.append(d)
        if rest.is_constant():
            continue
        if not rest.is_homogeneous():
            raise SymbolError(f"entry factor {rest} is not a form; symbols live on the projective plane")
        for c in _irreducible_pieces(rest, assume_irreducible, seed):
            if c not in curves:
                curves.append(c)
    return curves


def _irreducible_pieces(g, assume_irreducible, seed):
    if certify_irreducible(g, seed=seed):
        return [PlaneCurve(g, trust="line-restriction", check_squarefree=False)]
    out = []
    if g.field.is_finite:
        lines, g = rational_line_factors(g)
        out = [PlaneCurve(ell, trust="line-restriction", check_squarefree=False) for ell in lines]
        if g.degree() < 1:
            return out
        if g.degree() <= 3:
            return out + [PlaneCurve(g, trust="no-rational-line", check_squarefree=False)]
        if certify_irreducible(g, seed=seed):
            return out + [PlaneCurve(g, trust="line-restriction", check_squarefree=False)]
    if assume_irreducible:
        return out + [PlaneCurve(g, trust="asserted", check_squarefree=False)]
    raise UndeclaredFactor(f"cannot certify {g} irreducible; declare its factors")


@dataclass
class ResidueProfile:
    """Curve -> nontrivial residue class, plus the status of every support curve."""

    modulus: int
    entries: dict
    status: dict

    def curves(self):
        return list(self.entries)

    def is_empty(self):
        return not self.entries

    def support_keys(self):
        return sorted(c.key for c in self.entries)

    def undecided(self):
        return [c for c, st in self.status.items() if st == UNDECIDED]

    def to_json(self):
        return {
            "m": self.modulus,
            "entries": [
                {"curve": c.key, "status": self.status[c], "residue": self.entries[c].value.to_json()}
                for c in sorted(self.entries, key=lambda c: c.key)
            ],
            "trivial_or_undecided": [
                {"curve": c.key, "status": st}
                for c, st in sorted(self.status.items(), key=lambda kv: kv[0].key)
                if c not in self.entries
            ],
        }


def residue_profile(s: SymbolClass, mode=TAME, declared=(), assume_irreducible=False, seed=0,
                    extra_curves=()) -> ResidueProfile:
    """Residues along every support curve; curves passing the triviality test are omitted.

    A residue is kept when it is provably nontrivial (exact test on rational
    curves, an m-indivisible cluster multiplicity otherwise).  Residues whose
    divisor is divisible by m on a non-rational curve are recorded as
    UNDECIDED in status and omitted from entries.
    """
    curves = support_curves(s, declared, assume_irreducible, seed)
    for c in extra_curves:
        if c not in curves:
            curves.append(c)
    entries, status = {}, {}
    for c in curves:
        r = residue_symbol(s, c, mode)
        st = class_triviality(r, seed=seed)
        status[c] = st
        if st == NONTRIVIAL:
            entries[c] = r
    return ResidueProfile(s.modulus, entries, status)


def is_unramified(s: SymbolClass, c: PlaneCurve, mode=TAME, seed=0):
    """TRIVIAL / NONTRIVIAL / UNDECIDED for the residue of s along c."""
    return class_triviality(residue_symbol(s, c, mode), seed=seed)


def profiles_agree(p1: ResidueProfile, p2: ResidueProfile, seed=0):
    """Compare two profiles curve by curve: True / False / None (undecided somewhere)."""
    curves = set(p1.entries) | set(p2.entries)
    verdict = True
    for c in curves:
        r1 = p1.entries.get(c)
        r2 = p2.entries.get(c)
        if r1 is None and r2 is None:
            continue
        if r1 is None:
            r1 = ResidueClass(c, PowerProduct(c.field, 1), p1.modulus)
        if r2 is None:
            r2 = ResidueClass(c, PowerProduct(c.field, 1), p2.modulus)
        st = class_triviality(r1 / r2, seed=seed)
        if st == NONTRIVIAL:
            return False
        if st == UNDECIDED:
            verdict = None
    return verdict


def prune(s: SymbolClass) -> SymbolClass:
    """Drop terms with a trivial slot, without merging anything."""
    m = s.modulus
    keep = tuple(
        (a, b, c) for a, b, c in s.terms
        if not _is_trivial_slot(a, m) and not _is_trivial_slot(b, m)
        and not _is_neg_power(a, b) and not _is_neg_power(b, a)
    )
    return SymbolClass(m, keep, s.field)


__all__ = [
    "SymbolClass", "ResidueProfile", "symbol", "symbol_sum", "add", "negate", "simplify",
    "residue_symbol", "residue_profile", "is_unramified", "prune", "support_curves", "profiles_agree",
    "TAME", "PAPER", "TRIVIAL", "NONTRIVIAL", "UNDECIDED", "SymbolError", "UndeclaredFactor",
    "strip_curve",
]
