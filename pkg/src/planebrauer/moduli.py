"""Dimension counts for pairs (plane curve, 2-torsion bundle) by resolution partition."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb


class PartitionError(ValueError):
    pass


def binom2(k):
    """C(k, 2) with the convention C(k, 2) = 0 for k < 2."""
    return k * (k - 1) // 2 if k >= 2 else 0


FAMILIES = ("ones", "twos", "three-ones", "trivial")


def families_of(parts):
    """Generic families containing the partition (set-theoretic; small e can give several)."""
    parts = tuple(parts)
    e = sum(parts)
    out = []
    if all(d == 1 for d in parts):
        out.append("ones")
    if all(d == 2 for d in parts):
        out.append("twos")
    if parts[0] == 3 and all(d == 1 for d in parts[1:]):
        out.append("three-ones")
    if parts == (e,):
        out.append("trivial")
    return out


def epsilon_for(e, parts):
    eps = {(e - d) % 2 for d in parts}
    if len(eps) != 1:
        raise PartitionError(f"parts {parts} mix parity")
    return eps.pop()


def _validate(e, parts):
    parts = tuple(int(d) for d in parts)
    if not parts or any(d <= 0 for d in parts):
        raise PartitionError("parts must be positive integers")
    if sum(parts) != e:
        raise PartitionError(f"parts {parts} do not sum to e = {e}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise PartitionError(f"parts {parts} are not weakly decreasing")
    eps = epsilon_for(e, parts)
    return parts, eps


@dataclass(frozen=True)
class PartitionRecord:
    e: int
    parts: tuple
    epsilon: int
    twists: tuple
    dim_L: int
    generic: bool
    families: tuple = dc_field(default=())

    @property
    def bound(self):
        return comb(self.e + 2, 2) - 9

    @property
    def label(self):
        return "+".join(str(d) for d in self.parts)

    def to_json(self):
        return {"e": self.e, "parts": list(self.parts), "epsilon": self.epsilon, "twists": list(self.twists),
                "dim_L": self.dim_L, "bound": self.bound, "generic": self.generic,
                "families": list(self.families)}


def moduli_dim(e, parts) -> PartitionRecord:
    parts, eps = _validate(e, parts)
    a = tuple((e - d - eps) // 2 for d in parts)
    n = len(parts)
    first = sum(binom2(e - a[i] - a[j] - eps + 2) for i in range(n) for j in range(i, n))
    second = sum(binom2(a[i] - a[j] + 2) for i in range(n) for j in range(n))
    fam = tuple(families_of(parts))
    return PartitionRecord(e, parts, eps, a, first - second - 8, bool(fam), fam)


def partitions_same_parity(e):
    """Weakly decreasing partitions of e whose parts share a parity, streamed."""
    for parity in (1, 0):
        def rec(remaining, largest):
            if remaining == 0:
                yield ()
                return
            start = min(remaining, largest)
            for d in range(start, 0, -1):
                if d % 2 != parity:
                    continue
                for rest in rec(remaining - d, d):
                    yield (d,) + rest
        yield from rec(e, e)


def appendix_terms(parts):
    """Each stage of the reduction from dim_L to the final sum, as exact numbers.

    Stages (all should be equal):
      gap      = C(e+2,2) - 9 - dim_L
      pairwise = (e^2+3e)/2 - sum_{i<=j} (d_i d_j + 3 d_j)/2 + sum C(f_k,2)
      offdiag  = sum_{i<j} (d_i d_j - 3 d_j)/2 + sum C(f_k,2)
      final    = sum C(f_k,2) + sum_j ((sum_{i<j} d_i) - 3(j-1)) d_j / 2
    plus the per-pair difference check C(s+2,2) - C(t+2,2) = (d_i d_j + 3 d_j)/2 with
    s = (d_i+d_j)/2, t = (d_i-d_j)/2, and the doubled-count check on the second sum.
    """
    e = sum(parts)
    rec = moduli_dim(e, parts)
    d = rec.parts
    n = len(d)
    mult = {}
    for v in d:
        mult[v] = mult.get(v, 0) + 1
    fsum = sum(binom2(f) for f in mult.values())
    half = Fraction(1, 2)
    pair_ok = all(
        binom2((d[i] + d[j]) // 2 + 2) - binom2((d[i] - d[j]) // 2 + 2) == (d[i] * d[j] + 3 * d[j]) * half
        for i in range(n) for j in range(i, n)
    )
    a, eps = rec.twists, rec.epsilon
    first = sum(binom2(e - a[i] - a[j] - eps + 2) for i in range(n) for j in range(i, n))
    second = sum(binom2(a[i] - a[j] + 2) for i in range(n) for j in range(n))
    regrouped = sum(binom2((d[i] + d[j]) // 2 + 2) - binom2((d[i] - d[j]) // 2 + 2)
                    for i in range(n) for j in range(i, n)) - fsum
    stages = {
        "gap": Fraction(rec.bound - rec.dim_L),
        "pairwise": Fraction(e * e + 3 * e, 2) - sum((d[i] * d[j] + 3 * d[j]) * half
                                                     for i in range(n) for j in range(i, n)) + fsum,
        "offdiag": sum(((d[i] * d[j] - 3 * d[j]) * half for i in range(n) for j in range(i + 1, n)),
                       Fraction(0)) + fsum,
        "final": fsum + sum((sum(d[:j]) - 3 * j) * d[j] * half for j in range(n)),
    }
    return {
        "parts": d,
        "stages": stages,
        "pair_difference_ok": pair_ok,
        "regrouping_ok": first - second == regrouped,
        "consistent": len(set(stages.values())) == 1 and pair_ok and first - second == regrouped,
    }


@dataclass
class CombinatoricsReport:
    e_max: int
    checked: int = 0
    counterexamples: list = dc_field(default_factory=list)
    equality: dict = dc_field(default_factory=dict)
    overlaps: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.counterexamples

    def to_json(self):
        return {
            "e_max": self.e_max,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
            "equality": {str(e): ["+".join(map(str, p)) for p in ps] for e, ps in self.equality.items()},
            "overlaps": [{"parts": "+".join(map(str, p)), "families": fam} for p, fam in self.overlaps],
        }


def verify_combinatorics(e_max) -> CombinatoricsReport:
    """dim_L <= C(e+2,2) - 9 for every same-parity partition, equality exactly on the generic families."""
    if e_max < 1:
        raise PartitionError("e_max must be at least 1")
    rep = CombinatoricsReport(e_max)
    for e in range(1, e_max + 1):
        eq = []
        for parts in partitions_same_parity(e):
            rec = moduli_dim(e, parts)
            rep.checked += 1
            terms = appendix_terms(parts)
            problems = []
            if rec.dim_L > rec.bound:
                problems.append("bound exceeded")
            if (rec.dim_L == rec.bound) != rec.generic:
                problems.append("equality does not match the generic families")
            if not terms["consistent"]:
                problems.append("reduction stages disagree")
            if problems:
                rep.counterexamples.append({"e": e, "parts": list(parts), "dim_L": rec.dim_L,
                                            "bound": rec.bound, "problems": problems})
            if rec.dim_L == rec.bound:
                eq.append(parts)
            if len(rec.families) > 1:
                rep.overlaps.append((parts, list(rec.families)))
        rep.equality[e] = eq
    return rep


@dataclass(frozen=True)
class EpsilonCase:
    e: int
    epsilon: int
    kind: str
    generic_partitions: tuple
    twist_to_theta: object
    note: str

    def to_json(self):
        return {"e": self.e, "epsilon": self.epsilon, "kind": self.kind,
                "generic_partitions": ["+".join(map(str, p)) for p in self.generic_partitions],
                "twist_to_theta": self.twist_to_theta, "note": self.note}


def epsilon_case(e, epsilon) -> EpsilonCase:
    """Which bundles a resolution with this (e, eps) describes, and the generic partitions."""
    if epsilon not in (0, 1):
        raise PartitionError("epsilon must be 0 or 1")
    if e < 1:
        raise PartitionError("e must be positive")
    ones = (1,) * e
    three = (3,) + (1,) * (e - 3) if e >= 3 else None
    theta = tuple(p for p in (ones, three) if p is not None)
    if e % 2 == 0 and epsilon == 0:
        return EpsilonCase(e, 0, "Jac(C)[2]", ((2,) * (e // 2),), None,
                           "L^2 = O_C; other even partitions only on special curves")
    if e % 2 == 0 and epsilon == 1:
        return EpsilonCase(e, 1, "theta characteristics", theta, (e - 4) // 2,
                           "L^2 = O_C(1); L((e-4)/2) is a theta characteristic; "
                           "1+...+1 for even, 3+1+...+1 for odd theta characteristics")
    if epsilon == 0:
        return EpsilonCase(e, 0, "theta characteristics", theta, (e - 3) // 2,
                           "L^2 = O_C; L((e-3)/2) is a theta characteristic; "
                           "1+...+1 for even, 3+1+...+1 for odd theta characteristics")
    return EpsilonCase(e, 1, "impossible", (), None,
                       "e odd and eps = 1 would need all parts even with odd sum")


# degree-2 K3 surfaces: partitions of 6

_K3_ROWS = (
    ((6,), "ℙ²", "trivial"),
    ((4, 2), "X", "even-special"),
    ((2, 2, 2), "(2,2) ⊂ ℙ²×ℙ²", "even-generic"),
    ((5, 1), "X", "odd-special"),
    ((3, 3), "X", "odd-special"),
    ((3, 1, 1, 1), "Bl_Π X ⊂ ℙ⁵, deg X = 3", "odd-theta"),
    ((1, 1, 1, 1, 1, 1), "(2,1) ⊂ ℙ⁵×ℙ²", "even-theta"),
)


@dataclass(frozen=True)
class K3Row:
    partition: str
    parameter_count: int
    square: str
    quadric_bundle: str
    tag: str
    generic: bool

    def to_json(self):
        return {"partition": self.partition, "parameter_count": self.parameter_count,
                "L_tensor_L": self.square, "quadric_bundle": self.quadric_bundle, "tag": self.tag,
                "generic": self.generic}


K3_HEADER = ("partition", "parameter_count", "L_tensor_L", "quadric_bundle", "tag")


def k3_catalog():
    rows = []
    for parts, bundle, tag in _K3_ROWS:
        rec = moduli_dim(6, parts)
        square = "O_C" if rec.epsilon == 0 else "O_C(1)"
        rows.append(K3Row(rec.label, rec.dim_L, square, bundle, tag, rec.generic))
    return rows


__all__ = [
    "PartitionRecord", "moduli_dim", "partitions_same_parity", "appendix_terms", "verify_combinatorics",
    "CombinatoricsReport", "EpsilonCase", "epsilon_case", "K3Row", "k3_catalog", "binom2", "families_of",
    "PartitionError", "K3_HEADER",
]
