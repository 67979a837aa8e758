"""Fraction-free determinants and symmetric matrices of forms."""

from __future__ import annotations

from dataclasses import dataclass

from . import upoly as U
from .fields import FieldTag
from .mpoly import MPoly


class MPolyRing:
    """Ring operations on MPoly used by the generic elimination code."""

    def __init__(self, field):
        self.field = field
        self.zero = MPoly.zero(field)
        self.one = MPoly.one(field)

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def exact_div(a, b):
        return a.exact_div(b)


class UPolyRing:
    """Ring operations on dense univariate polynomials (lists)."""

    def __init__(self, field):
        self.field = field
        self.zero = []
        self.one = U.const(1, field)

    def mul(self, a, b):
        return U.mul(a, b, self.field)

    def sub(self, a, b):
        return U.sub(a, b, self.field)

    def neg(self, a):
        return U.neg(a, self.field)

    def exact_div(self, a, b):
        return U.quo(a, b, self.field)


class FieldRing:
    """Field elements as a ring, for constant matrices."""

    def __init__(self, field):
        self.field = field
        self.zero = field.zero()
        self.one = field.one()

    def mul(self, a, b):
        return self.field.red(a * b)

    def sub(self, a, b):
        return self.field.red(a - b)

    def neg(self, a):
        return self.field.red(-a)

    def exact_div(self, a, b):
        return self.field.div(a, b)


def bareiss_det(rows, zero=None, one=None, exact_div=None, ring=None):
    """Determinant of a square matrix over an integral domain, fraction free.

    Either pass a ring adapter (MPolyRing, UPolyRing, FieldRing) or, for
    MPoly entries, the zero, one and exact_div callables.
    """
    if ring is None:
        field = zero.field
        ring = MPolyRing(field)
    n = len(rows)
    if n == 0:
        return ring.one
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = ring.one
    mul, sub, div = ring.mul, ring.sub, ring.exact_div
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return ring.zero
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                num = sub(mul(row_i[j], akk), mul(aik, row_k[j]))
                row_i[j] = div(num, prev) if num else num
            row_i[k] = ring.zero
        prev = akk
    det = a[n - 1][n - 1]
    return det if sign == 1 else ring.neg(det)


def constant_det(rows, field: FieldTag):
    return bareiss_det(rows, ring=FieldRing(field))


def constant_inverse(rows, field: FieldTag):
    """Inverse of a constant square matrix by Gauss-Jordan elimination."""
    n = len(rows)
    red = field.red
    a = [list(r) + [field.one() if i == j else field.zero() for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = field.inv(a[c][c])
        a[c] = [red(v * inv) for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [red(v - f * w) for v, w in zip(a[r], a[c])]
    return [row[n:] for row in a]


def constant_mul(a, b, field: FieldTag):
    red = field.red
    n, m, p = len(a), len(b), len(b[0])
    return [[red(sum(a[i][k] * b[k][j] for k in range(m))) for j in range(p)] for i in range(n)]


def transpose(a):
    return [list(r) for r in zip(*a)]


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class FormMatrix:
    """Symmetric n x n matrix of polynomials.  Indices in the public API are 1-based."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise ValueError("empty matrix")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        field = rows[0][0].field
        for i in range(n):
            for j in range(n):
                if rows[i][j].field != field:
                    raise ValueError("entries over different fields")
                if j > i and rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def from_rows(cls, rows, field=None, check_symmetric=True):
        from .parse import parse_poly
        conv = []
        for r in rows:
            conv.append(tuple(parse_poly(v, field) if isinstance(v, str) else
                              (v if isinstance(v, MPoly) else MPoly.const(field, v)) for v in r))
        if not check_symmetric:
            return _unchecked(conv)
        return cls(tuple(conv))

    @property
    def n(self):
        return len(self.entries)

    @property
    def field(self):
        return self.entries[0][0].field

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]

    def rows(self):
        return [list(r) for r in self.entries]

    def _check_index(self, *idx):
        for i in idx:
            if not 1 <= i <= self.n:
                raise IndexOutOfRange(f"index {i} out of range 1..{self.n}")

    def determinant(self):
        return determinant(self)

    def minor(self, i, j):
        return minor(self, i, j)

    def principal_minor(self, i):
        return principal_minor(self, i)

    def conjugate(self, P):
        """P^T M P for a constant invertible matrix P (list of rows of field elements)."""
        n = self.n
        F = self.field
        zero = MPoly.zero(F)
        # M P
        mp = [[zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = zero
                for k in range(n):
                    if P[k][j] != 0 and self.entries[i][k]:
                        acc = acc + self.entries[i][k].scale(P[k][j])
                mp[i][j] = acc
        out = [[zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                acc = zero
                for k in range(n):
                    if P[k][i] != 0 and mp[k][j]:
                        acc = acc + mp[k][j].scale(P[k][i])
                out[i][j] = acc
                out[j][i] = acc
        return FormMatrix(tuple(tuple(r) for r in out))

    def to_json(self):
        return [[str(v) for v in r] for r in self.entries]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.entries) + "]"


def _unchecked(rows):
    m = FormMatrix.__new__(FormMatrix)
    object.__setattr__(m, "entries", tuple(tuple(r) for r in rows))
    return m


def determinant(m) -> MPoly:
    """Fraction-free determinant of a FormMatrix or a square list of MPoly rows."""
    rows = m.rows() if isinstance(m, FormMatrix) else [list(r) for r in m]
    if not rows:
        raise ValueError("empty matrix")
    F = rows[0][0].field
    return bareiss_det(rows, ring=MPolyRing(F))


def minor(m: FormMatrix, delete_row, delete_col) -> MPoly:
    """Determinant with row delete_row and column delete_col removed (1-based)."""
    m._check_index(delete_row, delete_col)
    rows = [
        [v for j, v in enumerate(r, start=1) if j != delete_col]
        for i, r in enumerate(m.entries, start=1)
        if i != delete_row
    ]
    if not rows:
        return MPoly.one(m.field)
    return bareiss_det(rows, ring=MPolyRing(m.field))


def principal_minor(m: FormMatrix, i) -> MPoly:
    """Upper-left i x i determinant M_i (1-based; M_0 = 1)."""
    if i == 0:
        return MPoly.one(m.field)
    m._check_index(i)
    rows = [list(r[:i]) for r in m.entries[:i]]
    return bareiss_det(rows, ring=MPolyRing(m.field))


def identity(n, field):
    return [[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]
