"""Symmetric resolutions of line bundles on plane curves and the classes they define.

A resolution is a symmetric matrix M of forms with deg m_ij = e - a_i - a_j - eps.
Its determinant cuts out the branch curve C of degree e; L = V(l) is the
line used to dehomogenize and lt = V(ltilde) the auxiliary line in f/ltilde^e.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field

from .clifford import MinorLadder, clifford_symbols, diagonalize, ensure_principal_minors
from .polycore import upoly as U
from .polycore.fields import FieldTag
from .polycore.matrix import FormMatrix, determinant, minor
from .polycore.mgcd import is_squarefree
from .polycore.mpoly import MPoly
from .polycore.parse import parse_poly
from .symbolalg import SymbolClass, residue_profile, residue_symbol
from .valuation.curves import TRUE, PlaneCurve, certify_irreducible, check_smooth
from .valuation.divisor import CurveDivisor, divisor_min, powerproduct_divisor
from .valuation.residue import (
    NONTRIVIAL,
    TRIVIAL,
    PowerProduct,
    ResidueClass,
    binary_restriction,
    class_triviality,
)


class ResolutionError(ValueError):
    pass


class AUResidueViolation(AssertionError):
    """A residue of the class A_U off C and L: a falsification, never absorbed."""


def _line_coeffs(g: MPoly):
    if g.degree() != 1 or not g.is_homogeneous():
        raise ResolutionError(f"{g} is not a line")
    return [g.terms.get(e, 0) for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))]


def _proportional(u, v, F):
    return all(F.red(u[i] * v[j] - u[j] * v[i]) == 0 for i in range(3) for j in range(3))


@dataclass(frozen=True)
class SymResolution:
    """Validated datum (M, a, eps, e, d, l, ltilde)."""

    matrix: FormMatrix
    twists: tuple
    epsilon: int
    degree_e: int
    partition: tuple
    line_ell: MPoly
    line_elltilde: MPoly
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def n(self):
        return self.matrix.n

    @property
    def field(self):
        return self.matrix.field

    @property
    def e(self):
        return self.degree_e

    @property
    def eps(self):
        return self.epsilon

    def det(self) -> MPoly:
        if "det" not in self._cache:
            self._cache["det"] = determinant(self.matrix)
        return self._cache["det"]

    def column_minor(self, i, j) -> MPoly:
        """M_ij: delete row i and column j (1-based)."""
        key = ("minor", i, j)
        if key not in self._cache:
            self._cache[key] = minor(self.matrix, i, j) if self.n > 1 else MPoly.one(self.field)
        return self._cache[key]

    def branch(self) -> PlaneCurve:
        if "curve" not in self._cache:
            self._cache["curve"] = branch_curve(self).curve
        return self._cache["curve"]

    def line(self) -> PlaneCurve:
        return PlaneCurve(self.line_ell, trust="line")

    def ladder(self, seed=0) -> MinorLadder:
        key = ("ladder", seed)
        if key not in self._cache:
            self._cache[key] = ensure_principal_minors(self.matrix, ell=self.line_ell, seed=seed)
        return self._cache[key]

    def to_json(self):
        F = self.field
        return {
            "field": F.name,
            "n": self.n,
            "e": self.degree_e,
            "eps": self.epsilon,
            "twists": list(self.twists),
            "entries": self.matrix.to_json(),
            "ell": str(self.line_ell),
            "elltilde": str(self.line_elltilde),
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            F = FieldTag.parse(data["field"])
            entries = data["entries"]
            twists = data["twists"]
            eps = int(data["eps"])
        except KeyError as exc:
            raise ResolutionError(f"fixture JSON is missing {exc}") from None
        m = FormMatrix.from_rows(entries, F)
        lines = (parse_poly(data.get("ell", "z"), F), parse_poly(data.get("elltilde", "x"), F))
        r = new_resolution(m, twists, eps, lines)
        if "e" in data and int(data["e"]) != r.degree_e:
            raise ResolutionError(f"declared e = {data['e']} but the degree law gives {r.degree_e}")
        if "n" in data and int(data["n"]) != r.n:
            raise ResolutionError(f"declared n = {data['n']} but the matrix has size {r.n}")
        return r


def new_resolution(matrix, twists, epsilon, lines=None) -> SymResolution:
    """Validate the degree law, parity, ordering and nondegeneracy."""
    if not isinstance(matrix, FormMatrix):
        raise ResolutionError("matrix must be a FormMatrix")
    F = matrix.field
    n = matrix.n
    twists = tuple(int(a) for a in twists)
    if len(twists) != n:
        raise ResolutionError(f"{len(twists)} twists for a {n}x{n} matrix")
    if any(a < 0 for a in twists):
        raise ResolutionError("twists must be nonnegative")
    if epsilon not in (0, 1):
        raise ResolutionError("epsilon must be 0 or 1")
    if lines is None:
        lines = (MPoly.var(F, "z"), MPoly.var(F, "x"))
    ell, elltilde = lines
    if _proportional(_line_coeffs(ell), _line_coeffs(elltilde), F):
        raise ResolutionError("the lines l and ltilde coincide")
    e = None
    for i in range(n):
        for j in range(n):
            v = matrix.entries[i][j]
            if v.is_zero():
                continue
            if not v.is_homogeneous() or any(t[3] for t in v.terms):
                raise ResolutionError(f"entry ({i + 1},{j + 1}) is not a form in x, y, z")
            cand = v.degree() + twists[i] + twists[j] + epsilon
            if e is None:
                e = cand
            elif cand != e:
                raise ResolutionError(
                    f"degree law violated at ({i + 1},{j + 1}): degree {v.degree()}, "
                    f"expected {e - twists[i] - twists[j] - epsilon}")
    if e is None:
        raise ResolutionError("zero matrix")
    parts = tuple(e - 2 * a - epsilon for a in twists)
    if any(d <= 0 for d in parts):
        raise ResolutionError(f"nonpositive diagonal degree in {parts}")
    if sum(parts) != e:
        raise ResolutionError(f"diagonal degrees {parts} do not sum to e = {e}")
    if len({d % 2 for d in parts}) > 1:
        raise ResolutionError(f"diagonal degrees {parts} mix parity")
    if any(parts[i] < parts[i + 1] for i in range(n - 1)):
        raise ResolutionError(f"diagonal degrees {parts} are not weakly decreasing")
    r = SymResolution(matrix, twists, epsilon, e, parts, ell, elltilde)
    if r.det().is_zero():
        raise ResolutionError("determinant is identically zero")
    return r


def resolution_from_rows(rows, field, twists, epsilon, ell="z", elltilde="x"):
    m = FormMatrix.from_rows(rows, field)
    return new_resolution(m, twists, epsilon, (parse_poly(ell, field), parse_poly(elltilde, field)))


@dataclass
class BranchReport:
    curve: PlaneCurve
    smooth: str
    singular_locus_witness: object = None

    def to_json(self):
        w = self.singular_locus_witness
        return {"curve": str(self.curve.f), "degree": self.curve.degree, "smooth": self.smooth,
                "witness": None if w is None else str(w)}


def branch_curve(r: SymResolution, seed=0) -> BranchReport:
    """V(det M) and its smoothness (exact over prime fields)."""
    if "branch" in r._cache:
        return r._cache["branch"]
    f = r.det()
    status, witness = check_smooth(f, seed=seed)
    # a smooth plane curve is irreducible, so smoothness certifies it
    if status == TRUE:
        curve = PlaneCurve(f, trust="smooth", check_squarefree=False)
    elif certify_irreducible(f.monic(), seed=seed):
        curve = PlaneCurve(f, trust="line-restriction", check_squarefree=False)
    else:
        curve = PlaneCurve(f, trust="asserted", check_squarefree=False)
    rep = BranchReport(curve, status, witness)
    r._cache["branch"] = rep
    r._cache["curve"] = curve
    return rep


def line_meets_transversally(r: SymResolution) -> bool:
    """L meets C in e distinct geometric points: f restricted to L is a squarefree binary form."""
    F = r.field
    try:
        u, tmult = binary_restriction(r.det(), r.line().parametrization())
    except ValueError:
        return False
    return tmult <= 1 and (U.deg(u) <= 0 or U.is_squarefree(u, F))


def brauer_class_AU(r: SymResolution, seed=0) -> SymbolClass:
    """The Clifford (n even) or even Clifford (n odd) class of M read over k(P^2)."""
    F = r.field
    F.require_sqrt_minus_one()
    if r.n == 1:
        return SymbolClass(2, (), F)
    return clifford_symbols(diagonalize(r.ladder(seed)))


def _c_residue_value(r: SymResolution, minor_index=None) -> PowerProduct:
    """M_nn / l^(e - d_n), or M_kk / l^deg for a substituted index (negative control)."""
    n = r.n
    k = n if minor_index is None else minor_index
    g = r.column_minor(k, k)
    F = r.field
    if g.is_zero():
        raise ResolutionError(f"minor M_{k}{k} vanishes identically")
    return PowerProduct(F, 1, [(g, 1), (r.line_ell, -g.degree())])


@dataclass
class AUResidueReport:
    profile: object            # full residue profile of the symbol class
    residue_C: ResidueClass     # class of M_nn / l^(e - d_n)
    symbol_residue_C: ResidueClass
    c_agreement: str            # TRIVIAL / UNDECIDED / NONTRIVIAL for the ratio of the two
    residue_L: ResidueClass
    i_L: object                 # 0, 1 or None
    third_curves: list

    @property
    def support_ok(self):
        return not self.third_curves

    @property
    def ok(self):
        return self.support_ok and self.c_agreement != NONTRIVIAL and self.i_L is not None

    def to_json(self):
        return {
            "support_within_C_L": self.support_ok,
            "residue_C": self.residue_C.value.to_json(),
            "symbol_route_agrees_on_C": self.c_agreement,
            "i_L": self.i_L,
            "third_curves": [str(c.f) for c in self.third_curves],
            "profile": self.profile.to_json(),
        }


def au_residue_report(r: SymResolution, seed=0) -> AUResidueReport:
    """Residues of A_U on every support curve, with both routes to the residue on C."""
    F = r.field
    C = r.branch()
    L = r.line()
    s = brauer_class_AU(r, seed)
    declared = [C, L]
    prof = residue_profile(s, declared=declared, seed=seed, extra_curves=declared)
    third = [c for c in prof.entries if c not in (C, L)]
    rc = ResidueClass(C, _c_residue_value(r).unit_part(C)[1], 2)
    sc = residue_symbol(s, C)
    agree = class_triviality(sc / rc, seed=seed)
    rl = residue_symbol(s, L)
    i_l = None
    if class_triviality(rl, seed=seed) == TRIVIAL:
        i_l = 0
    else:
        disc = PowerProduct(F, 1, [(r.det(), 1), (r.line_elltilde, -r.degree_e)])
        v, unit = disc.unit_part(L)
        if v % 2 == 0 and class_triviality(rl / ResidueClass(L, unit, 2), seed=seed) == TRIVIAL:
            i_l = 1
    return AUResidueReport(prof, rc, sc, agree, rl, i_l, third)


def residues_AU(r: SymResolution, seed=0):
    """Profile of A_U: class of M_nn / l^(e-d_n) at C and (f/ltilde^e)^i at L.

    Raises AUResidueViolation if the class ramifies on a third curve or the
    two routes to the residue on C disagree.
    """
    from .symbolalg import ResidueProfile

    rep = au_residue_report(r, seed)
    if rep.third_curves:
        raise AUResidueViolation(f"A_U ramifies on {[str(c.f) for c in rep.third_curves]}")
    if rep.c_agreement == NONTRIVIAL:
        raise AUResidueViolation("residue on C differs from M_nn / l^(e - d_n)")
    entries, status = {}, {}
    C = rep.residue_C.curve
    st_c = class_triviality(rep.residue_C, seed=seed)
    status[C] = st_c
    if r.n > 1 and st_c != TRIVIAL:
        entries[C] = rep.residue_C
    L = rep.residue_L.curve
    status[L] = class_triviality(rep.residue_L, seed=seed)
    if status[L] == NONTRIVIAL:
        entries[L] = rep.residue_L
    return ResidueProfile(2, entries, status)


def _divisor_of(C, forms, seed):
    return powerproduct_divisor(C, forms, seed=seed)


def weil_divisor(r: SymResolution, seed=0, column=None):
    """(D, twist): D = min over i of div_C(M_in) and twist = -(e - d_n - eps)/2 in units of L.

    column selects a different column j of minors (used by tangency_check).
    """
    C = r.branch()
    n = r.n
    j = n if column is None else column
    if n == 1:
        return CurveDivisor.zero(C), -(r.degree_e - r.partition[-1] - r.epsilon) // 2
    divs = []
    for i in range(1, n + 1):
        g = r.column_minor(i, j)
        if g.is_zero():
            continue
        if C.f.divides(g):
            raise ResolutionError(f"minor M_{i}{j} vanishes on C; the branch curve is singular")
        divs.append(_divisor_of(C, [(g, 1)], seed))
    if not divs:
        raise ResolutionError(f"all minors of column {j} vanish")
    D = divisor_min(divs)
    twist = r.degree_e - r.partition[-1] - r.epsilon
    if twist % 2:
        raise ResolutionError("e - d_n - eps is odd")
    return D, -twist // 2


def line_section(r: SymResolution, seed=0) -> CurveDivisor:
    """L cap C as a divisor on C."""
    return _divisor_of(r.branch(), [(r.line_ell, 1)], seed)


def tangency_check(r: SymResolution, j, seed=0) -> bool:
    """div_C(M_jj) = 2 min_i div_C(M_ij), cluster by cluster."""
    if not 1 <= j <= r.n:
        raise IndexError(f"column {j} out of range 1..{r.n}")
    C = r.branch()
    if r.n == 1:
        return True
    g = r.column_minor(j, j)
    D, _ = weil_divisor(r, seed, column=j)
    Z = _divisor_of(C, [(g, 1)], seed)
    return Z == D.scale(2)


@dataclass
class CompatibilityReport:
    passed: bool
    lhs: CurveDivisor       # div_C(M_nn / l^(e - d_n))
    rhs: CurveDivisor       # 2 D - eps (L cap C), D including its L-twist
    D: CurveDivisor
    twist: int
    minor_index: int
    symbol_route: str       # divisor-level agreement of the symbol residue on C

    @property
    def status(self):
        return "PASS" if self.passed else "FAIL"

    def to_json(self):
        return {"status": self.status, "minor_index": self.minor_index, "twist": self.twist,
                "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(), "D": self.D.to_json(),
                "symbol_route_on_C": self.symbol_route}


def compatibility_check(r: SymResolution, seed=0, minor_index=None, symbol_route=True) -> CompatibilityReport:
    """Check div_C(residue of A_U on C) = 2D - eps (L cap C) exactly as divisors.

    The residue is read as M_nn / l^(e - d_n); minor_index substitutes M_kk
    as a negative control.  With symbol_route the residue obtained from the
    symbol class is also compared on C (divisor level).
    """
    C = r.branch()
    n = r.n
    k = n if minor_index is None else minor_index
    LC = line_section(r, seed)
    D, twist = weil_divisor(r, seed)
    Dfull = D + LC.scale(twist) if twist else D
    rhs = Dfull.scale(2) - LC.scale(r.epsilon) if r.epsilon else Dfull.scale(2)
    if n == 1:
        lhs = LC.scale(0)
    else:
        val = _c_residue_value(r, k)
        lhs = powerproduct_divisor(C, list(val.factors), seed=seed)
    passed = lhs == rhs
    route = "skipped"
    if symbol_route and n > 1 and r.field.sqrt_minus_one() is not None:
        s = brauer_class_AU(r, seed)
        sc = residue_symbol(s, C)
        rc = ResidueClass(C, _c_residue_value(r, k).unit_part(C)[1], 2)
        route = class_triviality(sc / rc, seed=seed)
        if route == NONTRIVIAL:
            passed = False
    return CompatibilityReport(passed, lhs, rhs, D, twist, k, route)


# fixture generation


def partition_data(parts, eps=None):
    """(e, eps, twists) for a partition; eps is forced by parity unless e, d_i allow both."""
    parts = tuple(sorted((int(d) for d in parts), reverse=True))
    if not parts or any(d <= 0 for d in parts):
        raise ResolutionError("partition parts must be positive")
    e = sum(parts)
    if len({d % 2 for d in parts}) > 1:
        raise ResolutionError(f"partition {parts} mixes parity")
    forced = (e - parts[0]) % 2
    if eps is None:
        eps = forced
    elif eps != forced:
        raise ResolutionError(f"eps must be {forced} for partition {parts}")
    twists = tuple((e - d - eps) // 2 for d in parts)
    return e, eps, twists


def random_resolution(parts, field, rng, eps=None, ell="z", elltilde="x"):
    e, eps, twists = partition_data(parts, eps)
    n = len(twists)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            deg = e - twists[i] - twists[j] - eps
            v = MPoly.random_form(field, deg, rng) if deg >= 0 else MPoly.zero(field)
            rows[i][j] = rows[j][i] = v
    m = FormMatrix(tuple(tuple(r) for r in rows))
    return new_resolution(m, twists, eps, (parse_poly(ell, field), parse_poly(elltilde, field)))


class FixtureBudgetExhausted(RuntimeError):
    pass


def fixture_is_good(r: SymResolution, seed=0):
    """Smooth branch curve, transversal L, certifiable ladder minors and nonvanishing column."""
    if branch_curve(r, seed).smooth != TRUE:
        return False
    if not line_meets_transversally(r):
        return False
    lad = r.ladder(seed)
    for g in lad.minors[:-1]:
        if not g.is_constant() and (not is_squarefree(g) or not certify_irreducible(g.monic(), seed=seed)):
            return False
    return True


def gen_fixture(parts, field=None, seed=0, eps=None, budget=400, ell="z", elltilde="x") -> SymResolution:
    """Rejection-sample a resolution with the given partition until it is a good fixture."""
    F = field or FieldTag.prime(13)
    rng = random.Random(seed)
    for attempt in range(budget):
        try:
            r = random_resolution(parts, F, rng, eps, ell, elltilde)
        except ResolutionError:
            continue
        if fixture_is_good(r, seed=seed):
            return r
    raise FixtureBudgetExhausted(f"no good fixture for {parts} after {budget} attempts")


def example_cubic(a=2, b=1, field=None):
    """The symmetric 3x3 matrix of linear forms [[ax, bz, by], [bz, ay, bx], [by, bx, az]]."""
    F = field or FieldTag.rationals()
    rows = [[f"{a}*x", f"{b}*z", f"{b}*y"], [f"{b}*z", f"{a}*y", f"{b}*x"], [f"{b}*y", f"{b}*x", f"{a}*z"]]
    return resolution_from_rows(rows, F, (1, 1, 1), 0)


__all__ = [
    "SymResolution", "BranchReport", "new_resolution", "resolution_from_rows", "branch_curve",
    "brauer_class_AU", "residues_AU", "au_residue_report", "AUResidueReport", "weil_divisor",
    "tangency_check", "compatibility_check", "CompatibilityReport", "gen_fixture", "random_resolution",
    "partition_data", "fixture_is_good", "line_section", "line_meets_transversally", "example_cubic",
    "ResolutionError", "AUResidueViolation", "FixtureBudgetExhausted",
]
