"""Exact rational scalars and exact dense linear algebra.

Scalars are ``fractions.Fraction`` throughout (always in lowest terms,
positive denominator).  On top of that this module provides p-adic
valuations, Bernoulli numbers, the coefficients b_n relating even zeta
letters to powers of the weight-2 letter, fraction-free determinants,
exact rank/kernel computations and the 2-adic invertibility certificate
for the level-lowering matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, inf
from typing import Iterable, Sequence

Q = Fraction

#: Valuation of 0.  Kept as a genuine +infinity so that minima over matrix
#: columns behave correctly; never an integer sentinel.
INFINITY = inf


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def nu_p(p: int, q) -> int | float:
    """p-adic valuation of a rational number; ``INFINITY`` for q = 0."""
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError(f"nu_p requires a prime, got {p!r}")
    q = Q(q)
    if q == 0:
        return INFINITY
    n = 0
    num = abs(q.numerator)
    while num % p == 0:
        num //= p
        n += 1
    den = q.denominator
    while den % p == 0:
        den //= p
        n -= 1
    return n


_BERNOULLI: list[Fraction] = [Q(1), Q(-1, 2)]


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number, convention B_1 = -1/2.  Memoized."""
    if k < 0:
        raise ValueError("Bernoulli index must be >= 0")
    while len(_BERNOULLI) <= k:
        m = len(_BERNOULLI)
        # recurrence sum_{j=0}^{m} binom(m+1, j) B_j = 0
        s = sum(comb(m + 1, j) * _BERNOULLI[j] for j in range(m))
        _BERNOULLI.append(Q(-s, m + 1))
    return _BERNOULLI[k]


def b_coeff(n: int) -> Fraction:
    """The rational b_n = (-1)^(n+1) B_{2n} 24^n / (2 (2n)!).

    These express even single letters through powers of the weight-2 one:
    b_1 = 1, b_2 = 2/5, b_3 = 8/35, ...
    """
    if n < 1:
        raise ValueError("b_coeff requires n >= 1")
    return (-1) ** (n + 1) * bernoulli(2 * n) * Q(24**n, 2 * factorial(2 * n))


# ---------------------------------------------------------------------------
# Dense matrices over Q


@dataclass(frozen=True)
class QMatrix:
    """Dense row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(n, m, tuple(Q(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(Q(1) if i == j else Q(0)
                               for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, n: int, m: int) -> "QMatrix":
        return cls(n, m, (Q(0),) * (n * m))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_csv(self) -> str:
        return "\n".join(",".join(str(x) for x in self.row(i))
                         for i in range(self.rows))

    def to_json(self) -> str:
        return json.dumps([[str(x) for x in self.row(i)]
                           for i in range(self.rows)])

    @classmethod
    def from_json(cls, text: str) -> "QMatrix":
        return cls.from_rows([[Q(x) for x in row] for row in json.loads(text)])


def det_exact(mat: QMatrix) -> Fraction:
    """Exact determinant via fraction-free Bareiss elimination.

    Denominators are cleared column-wise first so the elimination runs on
    integers; the scaling is divided back out at the end.
    """
    if mat.rows != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    n = mat.rows
    if n == 0:
        return Q(1)
    m = mat.to_lists()
    scale = Q(1)
    for j in range(n):
        denlcm = 1
        for i in range(n):
            d = m[i][j].denominator
            denlcm = denlcm * d // _gcd(denlcm, d)
        if denlcm != 1:
            scale *= denlcm
            for i in range(n):
                m[i][j] *= denlcm
    a = [[int(x) for x in row] for row in m]

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Q(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Q(sign * a[n - 1][n - 1]) / scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def rank_and_kernel(mat: QMatrix) -> tuple[int, list[tuple]]:
    """Exact rank and a canonical basis of the right kernel.

    Kernel vectors are scaled so that their first nonzero entry is 1.
    """
    red = RowReducer()
    for i in range(mat.rows):
        red.add({j: x for j, x in enumerate(mat.row(i)) if x})
    kernel = red.kernel_basis(mat.cols)
    return red.rank, kernel


def two_adic_certificate(mat: QMatrix) -> bool:
    """Sufficient 2-adic criterion for invertibility.

    True iff (i) every entry strictly below the diagonal has 2-adic
    valuation >= 1 and (ii) each diagonal entry realizes the minimal
    valuation of its column and that minimum is <= 0.  True implies the
    matrix is invertible.
    """
    if mat.rows != mat.cols:
        raise ValueError("certificate requires a square matrix")
    n = mat.rows
    vals = [[nu_p(2, mat[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            if not vals[i][j] >= 1:
                return False
    for j in range(n):
        col_min = min(vals[i][j] for i in range(n))
        if vals[j][j] != col_min or not vals[j][j] <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Incremental sparse row echelon


class RowReducer:
    """Incremental sparse Gaussian elimination over Q.

    Rows are dicts mapping column keys to nonzero Fractions.  Column keys
    must be mutually comparable (ints, or tuples of equal shape).  Each
    added row is reduced against all previous pivot rows; pivots are
    normalized to 1.  ``reduce`` then yields a canonical residue: two
    inputs are congruent modulo the row space iff their residues coincide.
    """

    def __init__(self):
        self.pivot_rows: dict = {}   # pivot column -> normalized row
        self._order: list = []       # pivot columns in insertion order

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: dict) -> dict:
        out = {c: Q(v) for c, v in row.items() if v}
        while True:
            hit = None
            for c in out:
                if c in self.pivot_rows and (hit is None or c < hit):
                    hit = c
            if hit is None:
                return out
            coeff = out.pop(hit)
            for c2, v2 in self.pivot_rows[hit].items():
                if c2 == hit:
                    continue
                new = out.get(c2, 0) - coeff * v2
                if new:
                    out[c2] = new
                else:
                    out.pop(c2, None)

    def add(self, row: dict) -> bool:
        """Reduce ``row`` and record it as a new pivot if independent."""
        res = self.reduce(row)
        if not res:
            return False
        piv = min(res)
        inv = res[piv]
        self.pivot_rows[piv] = {c: v / inv for c, v in res.items()}
        self._order.append(piv)
        return True

    def finalize_rref(self) -> None:
        """Back-substitute so pivot rows contain no other pivot columns."""
        for piv in reversed(self._order):
            row = self.pivot_rows[piv]
            extra = [c for c in row if c != piv and c in self.pivot_rows]
            if not extra:
                continue
            self.pivot_rows[piv] = {
                **{piv: Q(1)},
                **self.reduce({c: v for c, v in row.items() if c != piv}),
            }

    def kernel_basis(self, ncols: int) -> list[tuple]:
        """Canonical kernel basis when the columns are 0..ncols-1."""
        self.finalize_rref()
        free = [c for c in range(ncols) if c not in self.pivot_rows]
        basis = []
        for f in free:
            vec = [Q(0)] * ncols
            vec[f] = Q(1)
            for piv, row in self.pivot_rows.items():
                if f in row:
                    vec[piv] = -row[f]
            lead = next(x for x in vec if x)
            basis.append(tuple(x / lead for x in vec))
        return basis
