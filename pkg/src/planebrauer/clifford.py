"""Diagonalization of symmetric matrices by principal minors and Clifford symbols.

A FormMatrix of homogeneous entries is read as the matrix of functions
m_ij / l^deg(m_ij) on the plane.  Scaling by l^D (D the largest entry
degree) gives a matrix N of forms of a single degree, so constant changes
of basis keep it homogeneous.  Principal minors of the conjugated N are
stored with every power of l removed; the function minor is then
minors[i] / l^ell_exps[i].
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .polycore.matrix import (
    FormMatrix,
    MPolyRing,
    bareiss_det,
    constant_det,
    identity,
)
from .polycore.mpoly import MPoly
from .symbolalg import SymbolClass, prune
from .valuation.curves import PlaneCurve, certify_irreducible
from .valuation.residue import (
    NONTRIVIAL,
    PowerProduct,
    ResidueClass,
    class_triviality,
)

SWEEP_COEFFS = (1, 2, -1, 3, -2)


class LadderError(ValueError):
    pass


class SingularMatrix(LadderError):
    pass


class RetryBudgetExhausted(LadderError):
    pass


def _strip_ell(g: MPoly, ell):
    k = 0
    if ell is None:
        return k, g
    while not g.is_constant():
        q, r = g.divmod(ell)
        if not r.is_zero():
            break
        g, k = q, k + 1
    return k, g


def _scaled_matrix(m: FormMatrix, ell):
    """(N, D): N_ij = m_ij * l^(D - deg m_ij), all entries of degree D."""
    entries = [v for r in m.entries for v in r if not v.is_zero()]
    if not entries:
        raise SingularMatrix("zero matrix")
    D = max(v.degree() for v in entries)
    rows = []
    for r in m.entries:
        row = []
        for v in r:
            row.append(v if v.is_zero() else v * ell ** (D - v.degree()))
        rows.append(tuple(row))
    return FormMatrix(tuple(rows)), D


def leading_minors(rows, F):
    """All leading principal minors by one fraction-free elimination, or None if a pivot vanishes."""
    n = len(rows)
    a = [list(r) for r in rows]
    out = []
    prev = MPoly.one(F)
    for k in range(n):
        piv = a[k][k]
        if piv.is_zero():
            return None
        out.append(piv)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]).exact_div(prev)
        prev = piv
    return out


def _const_leading_minors(A, F):
    return [constant_det([r[:i] for r in A[:i]], F) for i in range(1, len(A) + 1)]


def _evaluate(N: FormMatrix, pt):
    return [[v.evaluate(pt) if not v.is_zero() else 0 for v in r] for r in N.entries]


def _conj_const(A, P, F):
    n = len(A)
    AP = [[F.red(sum(A[i][k] * P[k][j] for k in range(n))) for j in range(n)] for i in range(n)]
    return [[F.red(sum(P[k][i] * AP[k][j] for k in range(n))) for j in range(n)] for i in range(n)]


def _sample_points(F, rng, count):
    base = [(1, 1, 1), (1, 2, 3), (2, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 2), (3, 1, -2)]
    for p in base:
        yield tuple(F.coerce(c) for c in p)
    for _ in range(count):
        yield tuple(F.random_element(rng, bound=50) for _ in range(3))


def _sweep(A, F):
    """Elementary additions e_i -> e_i + c e_j (j > i) making all leading minors nonzero."""
    n = len(A)
    P = identity(n, F)
    for i in range(n):
        cur = _conj_const(A, P, F)
        if constant_det([r[:i + 1] for r in cur[:i + 1]], F) != 0:
            continue
        found = False
        for j in range(i + 1, n):
            for c in SWEEP_COEFFS:
                c = F.coerce(c)
                trial = [row[:] for row in P]
                for r in range(n):
                    trial[r][i] = F.red(trial[r][i] + c * P[r][j])
                cur = _conj_const(A, trial, F)
                if constant_det([r[:i + 1] for r in cur[:i + 1]], F) != 0:
                    P = trial
                    found = True
                    break
            if found:
                break
        if not found:
            return None
    return P


@dataclass(frozen=True)
class MinorLadder:
    """A symmetric matrix after a constant change of basis with all principal minors nonzero.

    matrix: the input; transformed: P^T N P with N the degree-balanced matrix;
    minors[i-1]: principal_minor(transformed, i) with all factors of l removed;
    ell_strip[i-1]: how many factors of l were removed; ell_exps[i-1]: the power of l
    in the denominator of the i-th minor read as a function.
    """

    matrix: FormMatrix
    transformed: FormMatrix
    minors: tuple
    basis_change: tuple
    ell: object
    ell_strip: tuple
    ell_exps: tuple

    @property
    def n(self):
        return self.matrix.n

    @property
    def field(self):
        return self.matrix.field

    def function_minor(self, i) -> PowerProduct:
        """M_i as a degree-zero function (M_0 = 1)."""
        F = self.field
        if i == 0:
            return PowerProduct(F, 1)
        g = self.minors[i - 1]
        factors = [(g, 1)]
        if self.ell is not None and self.ell_exps[i - 1]:
            factors.append((self.ell, -self.ell_exps[i - 1]))
        return PowerProduct(F, 1, factors)

    def is_identity_change(self):
        return self.basis_change == tuple(map(tuple, identity(self.n, self.field)))

    def to_json(self):
        F = self.field
        return {
            "matrix": self.matrix.to_json(),
            "change": [[F.format(c) for c in r] for r in self.basis_change],
            "minors": [str(g) for g in self.minors],
            "ell": None if self.ell is None else str(self.ell),
            "ell_exps": list(self.ell_exps),
        }


def ensure_principal_minors(m: FormMatrix, ell=None, seed=0, budget=200) -> MinorLadder:
    """Constant change of basis making every leading principal minor nonzero.

    The identity is kept when it already works.  Otherwise a point with
    det != 0 is chosen, a sweep of elementary additions fixes the constant
    matrix there, and that change is used for the whole matrix; a seeded
    random search is the fallback.
    """
    F = m.field
    homogeneous = all(v.is_zero() or v.is_homogeneous() for r in m.entries for v in r)
    if homogeneous:
        if ell is None:
            ell = MPoly.var(F, "z")
        N, D = _scaled_matrix(m, ell)
    else:
        ell, N, D = None, m, 0
    n = m.n
    rows = N.rows()
    mins = leading_minors(rows, F)
    P = identity(n, F)
    if mins is None:
        rng = random.Random(seed)
        P = None
        points = 0
        for pt in _sample_points(F, rng, budget):
            A = _evaluate(N, pt)
            if constant_det(A, F) == 0:
                points += 1
                continue
            P = _sweep(A, F)
            if P is None:
                for _ in range(budget):
                    cand = [[F.random_element(rng, bound=5) for _ in range(n)] for _ in range(n)]
                    if constant_det(cand, F) == 0:
                        continue
                    if all(v != 0 for v in _const_leading_minors(_conj_const(A, cand, F), F)):
                        P = cand
                        break
            if P is not None:
                break
        if P is None:
            if points and N.determinant().is_zero():
                raise SingularMatrix("determinant is identically zero")
            raise RetryBudgetExhausted("no basis change with nonzero principal minors found")
        N = N.conjugate(P)
        mins = leading_minors(N.rows(), F)
        if mins is None:
            raise RetryBudgetExhausted("lifted basis change left a zero principal minor")
    stripped, strip = [], []
    for g in mins:
        k, h = _strip_ell(g, ell)
        strip.append(k)
        stripped.append(h)
    exps = tuple((i + 1) * D - strip[i] for i in range(n)) if ell is not None else (0,) * n
    return MinorLadder(
        matrix=m,
        transformed=N,
        minors=tuple(stripped),
        basis_change=tuple(tuple(r) for r in P),
        ell=ell,
        ell_strip=tuple(strip),
        ell_exps=exps,
    )


@dataclass(frozen=True)
class DiagonalForm:
    """[alpha_1, ..., alpha_n] kept factored; entries gives them as RatFn."""

    factored: tuple

    def __post_init__(self):
        if not self.factored:
            raise ValueError("empty diagonal form")
        object.__setattr__(self, "factored", tuple(PowerProduct.of(v) for v in self.factored))

    @classmethod
    def of(cls, values, field=None):
        return cls(tuple(PowerProduct.of(v, field) for v in values))

    @property
    def entries(self):
        return [p.expand() for p in self.factored]

    @property
    def field(self):
        return self.factored[0].field

    def __len__(self):
        return len(self.factored)

    def to_json(self):
        return [e.to_json() for e in self.entries]


def diagonalize(ladder: MinorLadder) -> DiagonalForm:
    """[M_1, M_2/M_1, ..., M_n/M_(n-1)] of the transformed matrix, as functions."""
    vals = []
    for i in range(1, ladder.n + 1):
        vals.append(ladder.function_minor(i) / ladder.function_minor(i - 1))
    return DiagonalForm(tuple(vals))


def clifford_symbols(d: DiagonalForm) -> SymbolClass:
    """Sum over i < j of (m_i, m_j), modulus 2.

    For n odd this is the even Clifford class, for n even the full one.
    Needs sqrt(-1) in the field.
    """
    F = d.field
    F.require_sqrt_minus_one()
    vals = d.factored
    terms = [(vals[i], vals[j], 1) for i in range(len(vals)) for j in range(i + 1, len(vals))]
    return prune(SymbolClass(2, tuple(terms), F))


def clifford_symbols_alternate(d: DiagonalForm) -> SymbolClass:
    """Even Clifford class of an odd-length form via [-m1 m2, ..., -m1 mn]."""
    n = len(d)
    if n % 2 == 0:
        raise ValueError("the alternate construction needs an odd number of entries")
    F = d.field
    F.require_sqrt_minus_one()
    if n == 1:
        return SymbolClass(2, (), F)
    m1 = d.factored[0]
    neg = PowerProduct(F, -1)
    return clifford_symbols(DiagonalForm(tuple(neg * m1 * mi for mi in d.factored[1:])))


def minor_valuations(ladder: MinorLadder, c: PlaneCurve):
    return [ladder.function_minor(i).valuation(c) for i in range(1, ladder.n + 1)]


def clifford_residue(ladder: MinorLadder, c: PlaneCurve) -> ResidueClass:
    """Class of prod M_i^(e_(i+1) - e_(i-1)) on c modulo squares, e_0 = e_(n+1) = 0."""
    n = ladder.n
    e = [0] + minor_valuations(ladder, c) + [0]
    total = PowerProduct(c.field, 1)
    for i in range(1, n + 1):
        k = e[i + 1] - e[i - 1]
        if k:
            total = total * ladder.function_minor(i) ** k
    v, unit = total.unit_part(c)
    if v != 0:
        raise LadderError(f"internal: residue product has valuation {v}")
    return ResidueClass(c, unit, 2)


def schur_witness(ladder: MinorLadder, i):
    """(M', Y) with M_(i+1) M_(i-1) = M_i M' - Y^2 for the transformed matrix (unstripped minors)."""
    n = ladder.n
    if not 1 <= i <= n - 1:
        raise IndexError(f"index {i} out of range 1..{n - 1}")
    rows = ladder.transformed.rows()
    F = ladder.field
    ring = MPolyRing(F)
    sub = [r[:i + 1] for r in rows[:i + 1]]

    def det_without(r_del, c_del):
        rr = [[v for cj, v in enumerate(row) if cj != c_del] for ri, row in enumerate(sub) if ri != r_del]
        return bareiss_det(rr, ring=ring) if rr else MPoly.one(F)

    mprime = det_without(i - 1, i - 1)
    y = det_without(i - 1, i)
    return mprime, y


def schur_square_check(ladder: MinorLadder, i, method="witness", factor=None, seed=0) -> bool:
    """Is M_(i+1) M_(i-1) a square modulo M_i (or modulo a declared factor of it)?

    method "witness": verify the Desnanot-Jacobi identity
    M_(i+1) M_(i-1) = M_i M' - Y^2 exactly; with sqrt(-1) in the field this
    exhibits the square (sqrt(-1) Y)^2.
    method "curve": on each irreducible factor of M_i (or on factor) test the
    class exactly on rational curves and by divisor evenness otherwise.
    """
    F = ladder.field
    N = ladder.transformed
    if method == "witness":
        mprime, y = schur_witness(ladder, i)
        full = lambda k: MPoly.one(F) if k == 0 else N.principal_minor(k)
        lhs = full(i + 1) * full(i - 1)
        rhs = full(i) * mprime - y * y
        return lhs == rhs and F.sqrt_minus_one() is not None
    if method != "curve":
        raise ValueError(f"unknown method {method!r}")
    if factor is not None:
        g = factor.f if isinstance(factor, PlaneCurve) else factor
        if not g.divides(ladder.minors[i - 1]):
            raise ValueError("declared factor does not divide M_i")
        curves = [factor if isinstance(factor, PlaneCurve) else PlaneCurve(g)]
    else:
        g = ladder.minors[i - 1]
        if g.is_constant():
            return True
        if not certify_irreducible(g, seed=seed):
            raise LadderError("M_i is not certifiably irreducible; declare a factor")
        curves = [PlaneCurve(g)]
    val = ladder.function_minor(i + 1) * ladder.function_minor(i - 1)
    for c in curves:
        v, unit = val.unit_part(c)
        if v % 2:
            return False
        if class_triviality(ResidueClass(c, unit, 2), seed=seed) == NONTRIVIAL:
            return False
    return True


def ladder_from_rows(rows, field, ell=None, seed=0):
    return ensure_principal_minors(FormMatrix.from_rows(rows, field), ell=ell, seed=seed)


__all__ = [
    "MinorLadder", "DiagonalForm", "ensure_principal_minors", "diagonalize", "clifford_symbols",
    "clifford_symbols_alternate", "clifford_residue", "schur_square_check", "schur_witness",
    "minor_valuations", "leading_minors", "LadderError", "SingularMatrix", "RetryBudgetExhausted",
    "ladder_from_rows",
]
