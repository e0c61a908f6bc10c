"""Finitely presented groups: Lin presentations, their cyclic lifts, two-bridge groups.

Lift generators follow the naming ``x{i}_{j}`` (copy j of x_i) and ``mu_n``.
Lift relators are ordered by copy j and then by i, so abelianizing the
relators of the branched lift reproduces ``block_circulant(V, U, n)`` row for
row.  Copy j of a word corresponds to conjugation by ``mu^-j`` in the knot
group; the deck transformation ``tau`` shifts copies j -> j+1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import DataConsistencyError, DimensionError, InvalidKnotData
from .exactlin import IntMatrix, det
from .sl2 import Word

_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class Presentation:
    """Generators by label plus relators; a relator is a word equal to 1.

    ``abelianization`` gives the image in Z of each generator when the group is
    a knot group, ``meridian`` is the 1-based index of a meridian generator,
    ``deck`` lists the image word of each generator under the covering
    transformation (lifts only) and ``cover`` is the degree of the lift.
    """

    generator_labels: tuple[str, ...]
    relators: tuple[Word, ...]
    abelianization: tuple[int, ...] | None = None
    meridian: int | None = None
    deck: tuple[Word, ...] | None = None
    cover: int | None = None
    name: str = ""
    lin: LinPresentation | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.generator_labels)
        if len(set(self.generator_labels)) != n:
            raise ValueError("generator labels must be distinct")
        for r in self.relators:
            bad = [g for g in r.generators() if g > n]
            if bad:
                raise ValueError(f"relator references generator {bad[0]} but only {n} exist")
        if self.abelianization is not None and len(self.abelianization) != n:
            raise DimensionError("abelianization needs one value per generator")
        if self.meridian is not None and not 1 <= self.meridian <= n:
            raise ValueError("meridian index out of range")
        if self.deck is not None and len(self.deck) != n:
            raise DimensionError("deck action needs one image per generator")

    @property
    def generator_count(self) -> int:
        return len(self.generator_labels)

    def index(self, label: str) -> int:
        """1-based index of a generator label."""
        try:
            return self.generator_labels.index(label) + 1
        except ValueError:
            raise LookupError(f"unknown generator {label!r}") from None

    def parse(self, text: str) -> Word:
        return parse_word(text, self.generator_labels)

    def format(self, w: Word) -> str:
        return w.format(self.generator_labels)

    def relator_matrix(self) -> IntMatrix:
        """Exponent sums of each relator (rows) in each generator (columns)."""
        n = self.generator_count
        return IntMatrix.from_rows([[r.exponent_sum(g) for g in range(1, n + 1)] for r in self.relators], n)


def parse_word(text: str, labels: Sequence[str]) -> Word:
    """Parse ``"x1 x2^-1 mu"``; ``^k`` powers are expanded, ``1`` or ``""`` is the empty word."""
    lookup = {lab: i + 1 for i, lab in enumerate(labels)}
    letters: list[int] = []
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m or m.group(1) not in lookup:
            raise LookupError(f"cannot read {tok!r} as a generator of {tuple(labels)}")
        g = lookup[m.group(1)]
        k = int(m.group(2)) if m.group(2) is not None else 1
        letters.extend([g if k > 0 else -g] * abs(k))
    return Word(tuple(letters))


def word_from_exponents(row: Sequence[int]) -> Word:
    """``x1^row[0] x2^row[1] ...`` as a word."""
    letters: list[int] = []
    for i, e in enumerate(row, start=1):
        letters.extend([i if e > 0 else -i] * abs(int(e)))
    return Word(tuple(letters))


def _exponent_matrix(words: Sequence[Word], size: int) -> IntMatrix:
    return IntMatrix.from_rows([[w.exponent_sum(g) for g in range(1, size + 1)] for w in words], size)


@dataclass(frozen=True)
class LinPresentation:
    """Seifert data of a knot together with the relator words it induces.

    ``alpha[i]`` and ``beta[i]`` are words in x_1..x_2g with exponent-sum
    matrices ``V = Q^T T`` and ``U = Q T``; the knot group is
    ``<x_1..x_2g, mu | mu alpha_i mu^-1 = beta_i>``.
    """

    genus: int
    alpha: tuple[Word, ...]
    beta: tuple[Word, ...]
    seifert_Q: IntMatrix
    gluing_T: IntMatrix

    def __post_init__(self):
        m = 2 * self.genus
        if self.genus < 0:
            raise InvalidKnotData("genus must be non-negative")
        if self.seifert_Q.shape != (m, m) or self.gluing_T.shape != (m, m):
            raise DimensionError(f"Q and T must be {m}x{m} for genus {self.genus}")
        if len(self.alpha) != m or len(self.beta) != m:
            raise DimensionError(f"need {m} alpha and {m} beta words")
        for w in (*self.alpha, *self.beta):
            if any(g > m for g in w.generators()):
                raise InvalidKnotData("relation words may only use x_1..x_2g")
        if abs(det(self.gluing_T)) != 1:
            raise InvalidKnotData("gluing matrix T must be unimodular")
        V, U = derive_VU(self)
        if abs(det(V - U)) != 1:
            raise InvalidKnotData("|det(V - U)| must be 1 for a knot in a homology sphere")

    @classmethod
    def from_matrices(cls, Q, T=None) -> LinPresentation:
        """Build words ``alpha_i = x^(row i of V)``, ``beta_i = x^(row i of U)`` from Q and T."""
        Q = Q if isinstance(Q, IntMatrix) else IntMatrix.from_rows(Q)
        m = Q.rows
        if m % 2:
            raise DimensionError("Seifert matrix must have even size")
        T = IntMatrix.identity(m) if T is None else (T if isinstance(T, IntMatrix) else IntMatrix.from_rows(T, m))
        V, U = Q.T @ T, Q @ T
        alpha = tuple(word_from_exponents(V.row(i)) for i in range(m))
        beta = tuple(word_from_exponents(U.row(i)) for i in range(m))
        return cls(m // 2, alpha, beta, Q, T)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(1, 2 * self.genus + 1)) + ("mu",)

    @property
    def V(self) -> IntMatrix:
        return self.seifert_Q.T @ self.gluing_T

    @property
    def U(self) -> IntMatrix:
        return self.seifert_Q @ self.gluing_T


def derive_VU(lp: LinPresentation) -> tuple[IntMatrix, IntMatrix]:
    """Return ``(Q^T T, Q T)`` after checking them against the word exponent sums."""
    m = 2 * lp.genus
    V = lp.seifert_Q.T @ lp.gluing_T
    U = lp.seifert_Q @ lp.gluing_T
    if _exponent_matrix(lp.alpha, m) != V:
        raise DataConsistencyError("exponent sums of alpha words differ from Q^T T")
    if _exponent_matrix(lp.beta, m) != U:
        raise DataConsistencyError("exponent sums of beta words differ from Q T")
    return V, U


@lru_cache(maxsize=256)
def knot_group(lp: LinPresentation) -> Presentation:
    m = 2 * lp.genus
    mu = Word((m + 1,))
    rels = tuple(mu * a * mu.inverse() * b.inverse() for a, b in zip(lp.alpha, lp.beta))
    return Presentation(
        generator_labels=lp.labels,
        relators=rels,
        abelianization=(0,) * m + (1,),
        meridian=m + 1,
        name="knot group",
        lin=lp,
    )


def _lift_word(w: Word, j: int, m: int) -> Word:
    """Copy j of a word in x_1..x_m: x_i becomes generator ``j*m + i``."""
    return Word(tuple((abs(x) + j * m) * (1 if x > 0 else -1) for x in w))


def _lift_labels(m: int, n: int) -> tuple[str, ...]:
    return tuple(f"x{i}_{j}" for j in range(n) for i in range(1, m + 1))


def _check_n(n: int):
    if int(n) != n or n < 2:
        raise ValueError(f"cover degree must be an integer >= 2, got {n!r}")


@lru_cache(maxsize=256)
def lift_cn(lp: LinPresentation, n: int) -> Presentation:
    """Presentation of the n-fold cyclic cover of the knot exterior.

    Relators ``alpha^(j) = beta^(j+1)`` for j < n-1 and
    ``mu_n alpha^(n-1) mu_n^-1 = beta^(0)``.
    """
    _check_n(n)
    m = 2 * lp.genus
    mu = Word((m * n + 1,))
    rels = []
    for j in range(n):
        for a, b in zip(lp.alpha, lp.beta):
            lhs = _lift_word(a, j, m)
            if j == n - 1:
                lhs = mu * lhs * mu.inverse()
            rels.append(lhs * _lift_word(b, (j + 1) % n, m).inverse())
    # tau is conjugation by mu^-1 downstairs; on the last copy it wraps through mu_n
    deck = [Word((g + m,)) for g in range(1, m * (n - 1) + 1)]
    deck += [mu.inverse() * Word((i,)) * mu for i in range(1, m + 1)]
    deck.append(mu)
    return Presentation(
        generator_labels=_lift_labels(m, n) + ("mu_n",),
        relators=tuple(rels),
        abelianization=None,
        meridian=m * n + 1,
        deck=tuple(deck),
        cover=n,
        name=f"C_{n}",
        lin=lp,
    )


@lru_cache(maxsize=256)
def lift_sigman(lp: LinPresentation, n: int) -> Presentation:
    """Presentation of the n-fold cyclic branched cover: ``alpha^(j) = beta^(j+1 mod n)``."""
    _check_n(n)
    m = 2 * lp.genus
    rels = tuple(
        _lift_word(a, j, m) * _lift_word(b, (j + 1) % n, m).inverse()
        for j in range(n)
        for a, b in zip(lp.alpha, lp.beta)
    )
    deck = tuple(Word(((g + m - 1) % (m * n) + 1,)) for g in range(1, m * n + 1))
    return Presentation(
        generator_labels=_lift_labels(m, n),
        relators=rels,
        deck=deck,
        cover=n,
        name=f"Sigma_{n}",
        lin=lp,
    )


def tau_action(pres: Presentation, w: Word, power: int = 1) -> Word:
    """Apply the covering transformation ``power`` times (power >= 0)."""
    if pres.deck is None:
        raise ValueError(f"presentation {pres.name or '?'} carries no deck transformation")
    if power < 0:
        raise ValueError("only non-negative powers of tau are supported")
    for _ in range(power):
        w = w.substitute(pres.deck)
    return w


def abelianization_exponent(pres: Presentation, w: Word) -> int:
    """Image of w under the abelianization of a knot group onto Z."""
    if pres.abelianization is None:
        raise ValueError(f"presentation {pres.name or '?'} has no abelianization to Z")
    ab = pres.abelianization
    return sum(ab[abs(x) - 1] * (1 if x > 0 else -1) for x in w)


def two_bridge_group(w: Word | str) -> Presentation:
    """``<x, y | w x w^-1 y^-1>`` with both generators meridians."""
    labels = ("x", "y")
    if isinstance(w, str):
        w = parse_word(w, labels)
    if any(g > 2 for g in w.generators()):
        raise ValueError("two-bridge words use only x and y")
    x, y = Word((1,)), Word((2,))
    rel = w * x * w.inverse() * y.inverse()
    return Presentation(labels, (rel,), abelianization=(1, 1), meridian=1, name="two-bridge")
