"""2x2 complex matrices, quaternion constants and free-group words.

Matrices are small immutable value objects with plain complex entries; 2x2
products in pure Python are faster than going through numpy for the short
words this package evaluates.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

EPS_DET = 1e-9
EPS_REL = 1e-8


@dataclass(frozen=True, slots=True)
class Sl2:
    """The matrix ``[[a, b], [c, d]]``."""

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def from_array(cls, m) -> Sl2:
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @classmethod
    def diag(cls, lam: complex) -> Sl2:
        return cls(lam, 0j, 0j, 1 / lam)

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def trace(self) -> complex:
        return self.a + self.d

    def inv(self) -> Sl2:
        dt = self.det()
        return Sl2(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def __matmul__(self, o: Sl2) -> Sl2:
        return Sl2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> Sl2:
        return Sl2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, k: complex) -> Sl2:
        return Sl2(k * self.a, k * self.b, k * self.c, k * self.d)

    __rmul__ = __mul__

    def __add__(self, o: Sl2) -> Sl2:
        return Sl2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: Sl2) -> Sl2:
        return Sl2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __pow__(self, n: int) -> Sl2:
        base = self if n >= 0 else self.inv()
        out, n = ONE, abs(n)
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def norm(self) -> float:
        """Frobenius norm."""
        return math.sqrt(abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2)

    def conj_by(self, P: Sl2) -> Sl2:
        """``P @ self @ P^-1``."""
        return P @ self @ P.inv()

    def is_central(self, tol: float = EPS_REL) -> bool:
        return min(dist(self, ONE), dist(self, -ONE)) <= tol


ONE = Sl2(1, 0, 0, 1)
QUAT_I = Sl2(1j, 0, 0, -1j)
QUAT_J = Sl2(0, 1, -1, 0)
QUAT_K = Sl2(0, 1j, 1j, 0)


def mul(A: Sl2, B: Sl2) -> Sl2:
    return A @ B


def inv(A: Sl2) -> Sl2:
    return A.inv()


def trace(A: Sl2) -> complex:
    return A.trace()


def dist(A: Sl2, B: Sl2) -> float:
    """Frobenius distance between two matrices."""
    return (A - B).norm()


def dist_up_to_sign(A: Sl2, B: Sl2) -> float:
    return min(dist(A, B), dist(A, -B))


def check_det(A: Sl2, tol: float = EPS_DET) -> Sl2:
    if abs(A.det() - 1) > tol:
        raise ValueError(f"determinant {A.det():.3g} differs from 1 by more than {tol:g}")
    return A


def matrix_order(A: Sl2, max_n: int, tol: float = EPS_REL) -> int | None:
    """Smallest ``n <= max_n`` with ``A^n`` within ``tol`` of the identity."""
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    power = ONE
    for n in range(1, max_n + 1):
        power = power @ A
        if dist(power, ONE) <= tol:
            return n
    return None


def rotation(angle: float) -> Sl2:
    """``diag(e^{i angle}, e^{-i angle})``."""
    return Sl2.diag(cmath.exp(1j * angle))


@dataclass(frozen=True)
class Word:
    """Freely reduced word: ``+i`` is generator i (1-based), ``-i`` its inverse."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        out: list[int] = []
        for x in self.letters:
            x = int(x)
            if x == 0:
                raise ValueError("0 is not a generator letter")
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        object.__setattr__(self, "letters", tuple(out))

    @classmethod
    def gen(cls, i: int, power: int = 1) -> Word:
        return cls((i if power > 0 else -i,) * abs(power))

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def inverse(self) -> Word:
        return Word(tuple(-x for x in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def generators(self) -> set[int]:
        return {abs(x) for x in self.letters}

    def exponent_sum(self, i: int) -> int:
        return sum(1 if x == i else -1 for x in self.letters if abs(x) == i)

    def substitute(self, images: Mapping[int, Word] | Sequence[Word]) -> Word:
        """Replace generator ``i`` by ``images[i]`` (1-based for mappings, 0-based for sequences)."""
        seq = not isinstance(images, Mapping)
        out: list[int] = []
        for x in self.letters:
            key = abs(x) - 1 if seq else abs(x)
            try:
                img = images[key]
            except (KeyError, IndexError):
                raise LookupError(f"generator {abs(x)} has no image") from None
            out.extend(img.letters if x > 0 else img.inverse().letters)
        return Word(tuple(out))

    def cyclic_forms(self) -> set[tuple[int, ...]]:
        """All cyclic rotations of the cyclically reduced word."""
        w = list(self.letters)
        while len(w) > 1 and w[0] == -w[-1]:
            w = w[1:-1]
        return {tuple(w[i:] + w[:i]) for i in range(max(len(w), 1))}

    def format(self, labels: Sequence[str]) -> str:
        """Space-separated syllables such as ``x1^2 x2^-1``; the empty word is ``1``."""
        if not self.letters:
            return "1"
        parts = []
        for x, run in itertools.groupby(self.letters):
            k = len(list(run)) * (1 if x > 0 else -1)
            name = labels[abs(x) - 1]
            parts.append(name if k == 1 else f"{name}^{k}")
        return " ".join(parts)


def evaluate_word(assignment: Sequence[Sl2] | Mapping[int, Sl2], w: Word | Iterable[int]) -> Sl2:
    """Left-to-right product of assigned matrices; the empty word gives the identity.

    ``assignment`` is indexed by 0-based position for sequences and by the
    1-based generator index for mappings.
    """
    seq = not isinstance(assignment, Mapping)
    out = ONE
    for x in w:
        key = abs(x) - 1 if seq else abs(x)
        try:
            m = assignment[key]
        except (KeyError, IndexError):
            raise LookupError(f"generator {abs(x)} has no assigned matrix") from None
        out = out @ (m if x > 0 else m.inv())
    return out
