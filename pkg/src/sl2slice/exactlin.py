"""Exact integer and Laurent-polynomial linear algebra.

Everything here works with Python ints, so nothing overflows.  Matrices are
immutable :class:`IntMatrix` values; the Smith normal form returns the
unimodular transforms alongside the diagonal so callers can recover kernels
and cokernel generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import DimensionError

__all__ = [
    "IntMatrix",
    "LaurentPoly",
    "AbelianInvariants",
    "det",
    "smith_normal_form",
    "cokernel",
    "alexander_polynomial",
    "block_circulant",
    "branched_cover_homology",
    "cyclic_cover_homology",
]


@dataclass(frozen=True)
class IntMatrix:
    """Row-major integer matrix with arbitrary-precision entries."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> IntMatrix:
        data = [list(r) for r in rows]
        if not data:
            return cls(0, cols or 0, ())
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DimensionError("ragged rows")
        return cls(len(data), width, tuple(itertools.chain.from_iterable(data)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def blocks(cls, grid: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
        """Assemble a matrix from a rectangular grid of equally sized blocks."""
        out = []
        for block_row in grid:
            height = block_row[0].rows
            for i in range(height):
                out.append([x for b in block_row for x in b.row(i)])
        return cls.from_rows(out)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __rmul__(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        return IntMatrix(self.rows, other.cols, tuple(
            sum(a * b for a, b in zip(self.row(i), c)) for i in range(self.rows) for c in cols
        ))

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product; works for Fraction or complex vectors too."""
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        return [sum(a * v for a, v in zip(self.row(i), vec)) for i in range(self.rows)]

    def _same_shape(self, other: IntMatrix):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


def det(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = _as_matrix(M)
    if not M.is_square:
        raise DimensionError(f"determinant of non-square {M.shape} matrix")
    n = M.rows
    a = M.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_normal_form(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(P, D, Q)`` with ``P @ M @ Q == D``.

    P and Q are unimodular and D is diagonal with nonnegative entries forming
    a divisibility chain.  Pivots are the smallest nonzero magnitude in the
    active block, ties broken by (row, col); the output is deterministic.
    """
    M = _as_matrix(M)
    m, n = M.shape
    a = M.tolist()
    P = IntMatrix.identity(m).tolist()
    Q = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in Q:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        P[dst] = [x + k * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for r in a:
            r[dst] += k * r[src]
        for r in Q:
            r[dst] += k * r[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty |= a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            P[t] = [-x for x in P[t]]

    return IntMatrix.from_rows(P, m), IntMatrix.from_rows(a, n), IntMatrix.from_rows(Q, n)


@dataclass(frozen=True)
class AbelianInvariants:
    """Finitely generated abelian group ``Z^free_rank + sum Z/d_i``."""

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` when the group is infinite."""
        return prod(self.torsion) if self.free_rank == 0 else None

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def cokernel(M) -> AbelianInvariants:
    """Invariants of ``Z^rows / (column span of M)``."""
    M = _as_matrix(M)
    _, D, _ = smith_normal_form(M)
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    rank = sum(1 for d in diag if d)
    return AbelianInvariants(tuple(d for d in diag if d > 1), M.rows - rank)


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial ``sum coefficients[i] * t**(lowest_exponent + i)``.

    Stored coefficients never start or end with zero; the zero polynomial has
    no coefficients and ``lowest_exponent == 0``.
    """

    lowest_exponent: int = 0
    coefficients: tuple[int, ...] = field(default=())

    def __post_init__(self):
        c = [int(x) for x in self.coefficients]
        low = self.lowest_exponent
        while c and c[-1] == 0:
            c.pop()
        lead = 0
        while lead < len(c) and c[lead] == 0:
            lead += 1
        c = c[lead:]
        low = low + lead if c else 0
        object.__setattr__(self, "coefficients", tuple(c))
        object.__setattr__(self, "lowest_exponent", low)

    @classmethod
    def monomial(cls, coeff: int, exponent: int) -> LaurentPoly:
        return cls(exponent, (coeff,))

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> LaurentPoly:
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1)))

    def terms(self) -> dict[int, int]:
        return {self.lowest_exponent + i: c for i, c in enumerate(self.coefficients) if c}

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def highest_exponent(self) -> int:
        return self.lowest_exponent + len(self.coefficients) - 1

    @property
    def span(self) -> int:
        """Difference between highest and lowest exponent (-1 for zero)."""
        return len(self.coefficients) - 1

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _lift(other)
        terms = self.terms()
        for e, c in other.terms().items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly.from_dict(terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.lowest_exponent, tuple(-c for c in self.coefficients))

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return self + (-_lift(other))

    def __rsub__(self, other: int) -> LaurentPoly:
        return _lift(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _lift(other)
        if self.is_zero or other.is_zero:
            return LaurentPoly()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return LaurentPoly(self.lowest_exponent + other.lowest_exponent, tuple(out))

    __rmul__ = __mul__

    def __call__(self, x):
        """Evaluate at ``x`` (int, Fraction, float or complex)."""
        if self.is_zero:
            return 0
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        e = self.lowest_exponent
        if e >= 0:
            return acc * x ** e
        if isinstance(x, int):
            x = Fraction(x)
        return acc / x ** (-e)

    def normalized(self) -> LaurentPoly:
        """Multiply by ``+-t^k`` so the lowest term is a positive constant."""
        if self.is_zero:
            return self
        sign = 1 if self.coefficients[0] > 0 else -1
        return LaurentPoly(0, tuple(sign * c for c in self.coefficients))

    def __str__(self):
        if self.is_zero:
            return "0"
        out = []
        for e in sorted(self.terms(), reverse=True):
            c = self.terms()[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for s, b in out[1:]:
            text += f" {s} {b}"
        return text


def _lift(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly(0, (int(x),))


def alexander_polynomial(V, U) -> LaurentPoly:
    """``det(t U - V)`` computed exactly.

    The determinant has degree at most ``size`` in ``t``; it is sampled at
    ``t = 0..size`` with exact integer determinants and recovered by Newton
    interpolation over the rationals.
    """
    V, U = _as_matrix(V), _as_matrix(U)
    if not (V.is_square and U.is_square) or V.shape != U.shape:
        raise DimensionError(f"V {V.shape} and U {U.shape} must be square of equal size")
    m = V.rows
    xs = list(range(m + 1))
    ys = [Fraction(det(x * U - V)) for x in xs]
    # divided differences, then expand the Newton form into monomials
    dd = ys[:]
    for level in range(1, m + 1):
        for i in range(m, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    coeffs = [Fraction(0)]
    for i in range(m, -1, -1):
        # coeffs <- coeffs * (t - xs[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs
        for k, c in enumerate(coeffs):
            shifted[k] -= xs[i] * c
        shifted[0] += dd[i]
        coeffs = shifted
    if any(c.denominator != 1 for c in coeffs):
        raise AssertionError("non-integral interpolation of an integer determinant")
    return LaurentPoly(0, tuple(int(c) for c in coeffs))


def block_circulant(V, U, n: int) -> IntMatrix:
    """Block matrix with ``V`` on the diagonal and ``-U`` at block (i, i+1 mod n)."""
    V, U = _as_matrix(V), _as_matrix(U)
    if n < 2:
        raise ValueError(f"cover degree must be at least 2, got {n}")
    if not (V.is_square and U.is_square) or V.shape != U.shape:
        raise DimensionError(f"V {V.shape} and U {U.shape} must be square of equal size")
    size = V.rows
    zero = IntMatrix.zeros(size, size)
    grid = []
    for i in range(n):
        row = [zero] * n
        row[i] = V
        row[(i + 1) % n] = -U
        grid.append(row)
    if size == 0:
        return IntMatrix.zeros(0, 0)
    return IntMatrix.blocks(grid)


def branched_cover_homology(V, U, n: int) -> AbelianInvariants:
    """First homology of the n-fold cyclic branched cover."""
    return cokernel(block_circulant(V, U, n))


def cyclic_cover_homology(V, U, n: int) -> AbelianInvariants:
    """First homology of the n-fold unbranched cyclic cover of the exterior.

    The meridian lift contributes one extra generator and no relations, so
    the relation matrix is ``A`` stacked over a zero row.
    """
    A = block_circulant(V, U, n)
    stacked = IntMatrix(A.rows + 1, A.cols, A.entries + (0,) * A.cols)
    return cokernel(stacked)


def is_unimodular(M) -> bool:
    M = _as_matrix(M)
    return M.is_square and abs(det(M)) == 1


def content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
