import random
import sys

import pytest

from sl2slice.exactlin import IntMatrix, det
from sl2slice.presentation import LinPresentation

TREFOIL_Q = [[1, 0], [-1, 1]]


def symplectic_seifert(rng: random.Random, g: int, bound: int = 2) -> IntMatrix:
    """Random Q with Q - Q^T the standard symplectic form, so |det(Q^T - Q)| = 1."""
    m = 2 * g
    q = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1):
            q[i][j] = rng.randint(-bound, bound)
    for i in range(m):
        for j in range(i + 1, m):
            sym = 1 if (i % 2 == 0 and j == i + 1) else 0
            q[i][j] = q[j][i] + sym
    return IntMatrix.from_rows(q, m)


def random_unimodular(rng: random.Random, m: int, bound: int = 3, steps: int = 4) -> IntMatrix:
    while True:
        t = [[int(i == j) for j in range(m)] for i in range(m)]
        for _ in range(steps):
            i, j = rng.sample(range(m), 2) if m > 1 else (0, 0)
            if i == j:
                break
            k = rng.choice([-1, 1])
            for c in range(m):
                t[i][c] += k * t[j][c]
        if rng.random() < 0.5 and m:
            t[0] = [-x for x in t[0]]
        if all(abs(x) <= bound for row in t for x in row):
            T = IntMatrix.from_rows(t, m)
            assert abs(det(T)) == 1
            return T


def random_lin(rng: random.Random, g: int | None = None, max_det: int | None = None) -> LinPresentation:
    while True:
        gg = rng.randint(1, 3) if g is None else g
        Q = symplectic_seifert(rng, gg)
        T = random_unimodular(rng, 2 * gg)
        lp = LinPresentation.from_matrices(Q, T)
        if max_det is None or abs(det(lp.V + lp.U)) <= max_det:
            return lp


@pytest.fixture
def trefoil():
    return LinPresentation.from_matrices(TREFOIL_Q)


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
