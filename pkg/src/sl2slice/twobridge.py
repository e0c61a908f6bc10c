"""Riley representations of two-bridge knot groups at t = -1.

The group is ``<x, y | w x = y w>``.  With ``s`` a square root of t, Riley's
representatives are

    x -> [[s, 1/s], [0, 1/s]],    y -> [[s, 0], [-u s, 1/s]],

and the admissible u are the roots of the greatest common divisor of the
entries of ``rho(w) rho(x) - rho(y) rho(w)``.  The square root is fixed to
``s = i`` for t = -1; ``s = 1`` (parabolic representations) is also supported
so that non-metabelian examples can be built.

Polynomials are exact over the Gaussian rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import ComputationError, InvalidKnotData, ParameterError
from .presentation import Presentation, parse_word, two_bridge_group
from .reps import Representation, abelian_rep, character_sample, is_metabelian
from .sl2 import EPS_REL, Sl2, Word, matrix_order


@dataclass(frozen=True, slots=True)
class GaussQ:
    """Exact Gaussian rational ``re + im*i``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, x) -> GaussQ:
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(Fraction(x))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, o: GaussQ) -> GaussQ:
        return GaussQ(self.re + o.re, self.im + o.im)

    def __sub__(self, o: GaussQ) -> GaussQ:
        return GaussQ(self.re - o.re, self.im - o.im)

    def __neg__(self) -> GaussQ:
        return GaussQ(-self.re, -self.im)

    def __mul__(self, o: GaussQ) -> GaussQ:
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def inverse(self) -> GaussQ:
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussQ(self.re / n, -self.im / n)

    def __truediv__(self, o: GaussQ) -> GaussQ:
        return self * o.inverse()

    def __complex__(self):
        return complex(float(self.re), float(self.im))


ZERO = GaussQ()
UNIT = GaussQ(Fraction(1))
IMAG = GaussQ(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class GaussianPoly:
    """Polynomial in u with Gaussian rational coefficients, lowest degree first."""

    coefficients: tuple[GaussQ, ...] = ()

    def __post_init__(self):
        c = [GaussQ.of(x) for x in self.coefficients]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def const(cls, x) -> GaussianPoly:
        return cls((GaussQ.of(x),))

    @classmethod
    def u(cls) -> GaussianPoly:
        return cls((ZERO, UNIT))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> GaussQ:
        return self.coefficients[-1] if self.coefficients else ZERO

    def __add__(self, o: GaussianPoly) -> GaussianPoly:
        a, b = self.coefficients, o.coefficients
        n = max(len(a), len(b))
        return GaussianPoly(tuple((a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)))

    def __neg__(self) -> GaussianPoly:
        return GaussianPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, o: GaussianPoly) -> GaussianPoly:
        return self + (-o)

    def __mul__(self, o: GaussianPoly) -> GaussianPoly:
        a, b = self.coefficients, o.coefficients
        if not a or not b:
            return GaussianPoly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
        return GaussianPoly(tuple(out))

    def scale(self, k: GaussQ) -> GaussianPoly:
        return GaussianPoly(tuple(c * k for c in self.coefficients))

    def divmod(self, o: GaussianPoly) -> tuple[GaussianPoly, GaussianPoly]:
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coefficients)
        q = [ZERO] * max(len(r) - len(o.coefficients) + 1, 0)
        inv_lead = o.leading.inverse()
        dq = o.degree
        for k in range(len(r) - 1, dq - 1, -1):
            c = r[k] * inv_lead
            if not c:
                continue
            q[k - dq] = c
            for i, oc in enumerate(o.coefficients):
                r[k - dq + i] = r[k - dq + i] - c * oc
        return GaussianPoly(tuple(q)), GaussianPoly(tuple(r))

    def monic(self) -> GaussianPoly:
        return self.scale(self.leading.inverse()) if self.coefficients else self

    def __call__(self, u: complex) -> complex:
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * u + complex(c)
        return acc

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.coefficients)

    def integer_coefficients(self) -> list[int]:
        """Coefficients lowest degree first; raises if any is non-real or non-integral."""
        out = []
        for c in self.coefficients:
            if c.im != 0 or c.re.denominator != 1:
                raise ComputationError(f"coefficient {complex(c)} is not a real integer")
            out.append(int(c.re))
        return out

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            if c.im == 0:
                mag, neg = abs(c.re), c.re < 0
                coef = "" if mag == 1 and k else str(mag)
            else:
                neg = False
                coef = f"({complex(c)})"
            mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
            term = coef + mono
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        return " ".join(parts)


def poly_gcd(a: GaussianPoly, b: GaussianPoly) -> GaussianPoly:
    """Monic gcd over Q(i); gcd(0, 0) is 0."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


# symbolic Riley matrices

Mat = tuple[GaussianPoly, GaussianPoly, GaussianPoly, GaussianPoly]


def _mat_mul(A: Mat, B: Mat) -> Mat:
    return (A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3], A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3])


def _sqrt_t(sqrt_t) -> GaussQ:
    s = GaussQ.of(sqrt_t)
    if s not in (IMAG, UNIT):
        raise ParameterError("sqrt(t) must be i (t = -1) or 1 (t = 1)")
    return s


def riley_matrices(sqrt_t=1j) -> tuple[Mat, Mat, Mat, Mat]:
    """Symbolic X, Y and their inverses as matrices over Q(i)[u]."""
    s = _sqrt_t(sqrt_t)
    si = s.inverse()
    C = GaussianPoly.const
    u = GaussianPoly.u()
    zero = GaussianPoly()
    X = (C(s), C(si), zero, C(si))
    Xi = (C(si), -C(si), zero, C(s))
    Y = (C(s), zero, -(u.scale(s)), C(si))
    Yi = (C(si), zero, u.scale(s), C(s))
    return X, Y, Xi, Yi


def riley_assignment_minus1(u: complex) -> tuple[Sl2, Sl2]:
    """``X = [[i, -i], [0, -i]]`` and ``Y = [[i, 0], [-i u, -i]]``."""
    return riley_assignment(u, 1j)


def riley_assignment(u: complex, sqrt_t: complex = 1j) -> tuple[Sl2, Sl2]:
    s = complex(sqrt_t)
    return Sl2(s, 1 / s, 0, 1 / s), Sl2(s, 0, -u * s, 1 / s)


def _word_matrix(w: Word, sqrt_t) -> Mat:
    X, Y, Xi, Yi = riley_matrices(sqrt_t)
    table = {1: X, -1: Xi, 2: Y, -2: Yi}
    one, zero = GaussianPoly.const(1), GaussianPoly()
    out: Mat = (one, zero, zero, one)
    for x in w:
        out = _mat_mul(out, table[x])
    return out


def riley_defect(w: Word, sqrt_t=1j) -> Mat:
    """Entries of ``rho(w) rho(x) - rho(y) rho(w)`` as polynomials in u."""
    X, Y, _, _ = riley_matrices(sqrt_t)
    W = _word_matrix(w, sqrt_t)
    a, b = _mat_mul(W, X), _mat_mul(Y, W)
    return tuple(p - q for p, q in zip(a, b))


def riley_polynomial(w: Word, sqrt_t=1j) -> GaussianPoly:
    """Monic gcd of the defect entries."""
    D = riley_defect(w, sqrt_t)
    if all(p.is_zero() for p in D):
        raise InvalidKnotData("rho(w) x = y rho(w) holds identically; the word is degenerate")
    g = GaussianPoly()
    for p in D:
        g = poly_gcd(g, p)
    return g


# knots

@dataclass(frozen=True)
class TwoBridgeKnot:
    """A two-bridge knot given by its relator word w in x (=1) and y (=2).

    The determinant ``p`` is derived as ``2 deg phi(-1, u) + 1``; a declared
    value must agree with it.
    """

    word: Word
    name: str = ""
    declared_p: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if isinstance(self.word, str):
            object.__setattr__(self, "word", parse_word(self.word, ("x", "y")))
        if not self.word:
            raise InvalidKnotData("two-bridge relator word must be nonempty")
        if any(g > 2 for g in self.word.generators()):
            raise InvalidKnotData("two-bridge words use only x and y")
        if self.declared_p is not None and self.declared_p != self.p:
            raise InvalidKnotData(f"declared determinant {self.declared_p} but the word gives {self.p}")

    @cached_property
    def riley(self) -> GaussianPoly:
        return riley_polynomial_minus1(self)

    @property
    def p(self) -> int:
        return 2 * self.riley.degree + 1

    @cached_property
    def group(self) -> Presentation:
        return two_bridge_group(self.word)


def riley_polynomial_minus1(K: TwoBridgeKnot | Word) -> GaussianPoly:
    """phi_K(-1, u), normalized monic with integer coefficients."""
    w = K.word if isinstance(K, TwoBridgeKnot) else K
    g = riley_polynomial(w, 1j)
    g.integer_coefficients()
    return g


def closed_form_roots(p: int) -> list[float]:
    """``u_k = 2 cos(2 k pi / p) - 2`` for k = 1..(p-1)/2."""
    if int(p) != p or p < 3 or p % 2 == 0:
        raise ParameterError(f"p must be an odd integer >= 3, got {p!r}")
    return [2 * math.cos(2 * k * math.pi / p) - 2 for k in range(1, (p - 1) // 2 + 1)]


def expand_roots(roots: Sequence[float]) -> np.ndarray:
    """Coefficients (lowest first) of the monic polynomial with the given roots."""
    return np.polynomial.polynomial.polyfromroots(roots).real


def numeric_roots(f: GaussianPoly) -> list[complex]:
    """Companion-matrix roots of f followed by one Newton step each, sorted by real part."""
    if f.degree < 1:
        return []
    coeffs = [complex(c) for c in f.coefficients]
    df = np.polynomial.polynomial.polyder(coeffs)
    roots = []
    for r in np.roots(coeffs[::-1]):
        d = np.polynomial.polynomial.polyval(r, df)
        if d != 0:
            r = r - np.polynomial.polynomial.polyval(r, coeffs) / d
        roots.append(complex(r))
    return sorted(roots, key=lambda z: (z.real, z.imag))


@dataclass(frozen=True)
class FactorizationReport:
    polynomial: GaussianPoly
    p: int
    roots: tuple[complex, ...]
    closed_form: tuple[float, ...]
    max_defect: float
    min_gap: float
    coefficient_error: float
    root_error: float

    def ok(self, defect_tol: float = 1e-9, gap_tol: float = 1e-6, coeff_tol: float = 1e-6) -> bool:
        return (
            self.max_defect <= defect_tol
            and (self.min_gap > gap_tol or len(self.closed_form) < 2)
            and self.coefficient_error <= coeff_tol
            and self.root_error <= coeff_tol
        )


def factorization_check(K: TwoBridgeKnot) -> FactorizationReport:
    """Compare phi_K(-1, u) with the product of ``u - u_k`` over the closed-form roots."""
    f = K.riley
    p = K.p
    closed = closed_form_roots(p) if p >= 3 else []
    D = riley_defect(K.word, 1j)
    max_defect = max((abs(e(u)) for u in closed for e in D), default=0.0)
    ordered = sorted(closed)
    min_gap = min((b - a for a, b in zip(ordered, ordered[1:])), default=math.inf)
    exact = np.array([float(c.re) for c in f.coefficients])
    coeff_err = float(np.max(np.abs(exact - expand_roots(closed)))) if closed else abs(exact[0] - 1)
    roots = numeric_roots(f)
    root_err = max((abs(a - b) for a, b in zip(roots, ordered)), default=0.0)
    return FactorizationReport(f, p, tuple(roots), tuple(closed), max_defect, min_gap, coeff_err, root_err)


def riley_rep(K: TwoBridgeKnot, u: complex, sqrt_t: complex = 1j) -> Representation:
    X, Y = riley_assignment(u, sqrt_t)
    return Representation(K.group, (X, Y))


def explicit_metabelian_reps(K: TwoBridgeKnot, tol: float = EPS_REL) -> list[Representation]:
    """The representatives rho_1..rho_{(p-1)/2} followed by the abelian phi_i."""
    out = []
    for k, u in enumerate(closed_form_roots(K.p) if K.p >= 3 else [], start=1):
        rho = riley_rep(K, u)
        if rho.relation_residual > tol:
            raise ComputationError(f"rho_{k} fails the relator with residual {rho.relation_residual:.3g}")
        if not is_metabelian(rho):
            raise ComputationError(f"rho_{k} is not fixed by the involution")
        out.append(rho)
    out.append(abelian_rep(K.group, 1j))
    return out


def gamma_matrix(rep: Representation) -> Sl2:
    """Image of ``x y^-1``, which generates the branched double cover's group."""
    return rep.evaluate(Word((1, -2)))


def gamma_order_check(rep: Representation, p: int, tol: float = EPS_REL) -> int:
    M = gamma_matrix(rep)
    n = matrix_order(M, p, tol)
    if n is None or p % n:
        raise ComputationError(f"rho(x y^-1) has no order dividing {p}")
    return n


def distinct_samples(reps: Sequence[Representation], tol: float = EPS_REL) -> bool:
    samples = [character_sample(r) for r in reps]
    return all(not a.close_to(b, tol) for i, a in enumerate(samples) for b in samples[i + 1:])
