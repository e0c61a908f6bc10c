"""Built-in two-bridge knots.

Each word w is the Schubert normal form word of the two-bridge knot b(p, q)
with q odd: ``w = x^e1 y^e2 x^e3 ... y^e(p-1)`` where ``e_i = (-1)^floor(i q / p)``.
The group is ``<x, y | w x = y w>``.  Every entry records the fraction it came
from and the knot-table Alexander polynomial; ``fox_alexander`` recomputes the
latter from the word so the registry checks itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import LaurentPoly
from .sl2 import Word
from .twobridge import TwoBridgeKnot


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    p: int
    q: int
    word: str
    alexander: tuple[int, ...]  # normalized coefficients, lowest degree first

    def knot(self) -> TwoBridgeKnot:
        return TwoBridgeKnot(self.word, name=self.name, declared_p=self.p)


REGISTRY: dict[str, RegistryEntry] = {
    e.name: e
    for e in [
        RegistryEntry("3_1", 3, 1, "x y", (1, -1, 1)),
        RegistryEntry("4_1", 5, 3, "x y^-1 x^-1 y", (1, -3, 1)),
        RegistryEntry("5_1", 5, 1, "x y x y", (1, -1, 1, -1, 1)),
        RegistryEntry("5_2", 7, 3, "x y x^-1 y^-1 x y", (2, -3, 2)),
        RegistryEntry("6_1", 9, 7, "x y^-1 x y^-1 x^-1 y x^-1 y", (2, -5, 2)),
        RegistryEntry("6_2", 11, 3, "x y x y^-1 x^-1 y^-1 x^-1 y x y", (1, -3, 3, -3, 1)),
        RegistryEntry("6_3", 13, 5, "x y x^-1 y^-1 x^-1 y x y^-1 x^-1 y^-1 x y", (1, -3, 5, -3, 1)),
        RegistryEntry("7_1", 7, 1, "x y x y x y", (1, -1, 1, -1, 1, -1, 1)),
        RegistryEntry("7_2", 11, 5, "x y x^-1 y^-1 x y x^-1 y^-1 x y", (3, -5, 3)),
    ]
}


def get(name: str) -> TwoBridgeKnot:
    try:
        return REGISTRY[name].knot()
    except KeyError:
        raise LookupError(f"no two-bridge knot named {name!r}; known: {', '.join(REGISTRY)}") from None


def schubert_word(p: int, q: int) -> Word:
    if p < 3 or p % 2 == 0 or q % 2 == 0 or not 0 < q < p:
        raise ValueError("need odd p >= 3 and odd 0 < q < p")
    return Word(tuple((1 if i % 2 else 2) * (-1) ** ((i * q) // p) for i in range(1, p)))


def fox_alexander(w: Word) -> LaurentPoly:
    """Normalized Alexander polynomial of ``<x, y | w x w^-1 y^-1>`` via the Fox derivative in y."""
    r = w * Word((1,)) * w.inverse() * Word((-2,))
    terms: dict[int, int] = {}
    e = 0
    for x in r:
        if x == 2:
            terms[e] = terms.get(e, 0) + 1
        elif x == -2:
            terms[e - 1] = terms.get(e - 1, 0) - 1
        e += 1 if x > 0 else -1
    return LaurentPoly.from_dict(terms).normalized()
