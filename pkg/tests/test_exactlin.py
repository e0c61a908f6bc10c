import cmath
from fractions import Fraction

import pytest
import sympy

from sl2slice.errors import DimensionError
from sl2slice.exactlin import (
    AbelianInvariants,
    IntMatrix,
    LaurentPoly,
    alexander_polynomial,
    block_circulant,
    branched_cover_homology,
    cokernel,
    cyclic_cover_homology,
    det,
    smith_normal_form,
)

V3 = IntMatrix.from_rows([[1, -1], [0, 1]])
U3 = IntMatrix.from_rows([[1, 0], [-1, 1]])
EMPTY = IntMatrix.zeros(0, 0)


def rand_matrix(rng, rows, cols, bound=5):
    return IntMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols)


def test_det_examples():
    assert det(IntMatrix.identity(2)) == 1
    assert det(IntMatrix.from_rows([[1, 0], [-1, 1]])) == 1
    assert det(V3 + U3) == 3
    assert det(EMPTY) == 1


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det(IntMatrix.zeros(2, 3))


def test_det_matches_sympy(rng):
    for n in range(1, 7):
        M = rand_matrix(rng, n, n)
        assert det(M) == sympy.Matrix(M.tolist()).det()


def test_det_is_exact_for_large_entries():
    M = IntMatrix.from_rows([[10**30, 1], [1, 10**30]])
    assert det(M) == 10**60 - 1


def _check_snf(M):
    P, D, Q = smith_normal_form(M)
    assert P @ M @ Q == D
    assert abs(det(P)) == 1 and abs(det(Q)) == 1
    k = min(M.rows, M.cols)
    for i in range(M.rows):
        for j in range(M.cols):
            if i != j:
                assert D[i, j] == 0
    diag = [D[i, i] for i in range(k)]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    return diag


def test_snf_zero_matrix():
    M = IntMatrix.zeros(2, 3)
    P, D, Q = smith_normal_form(M)
    assert D == M and P == IntMatrix.identity(2) and Q == IntMatrix.identity(3)


def test_snf_diag_2_3():
    assert _check_snf(IntMatrix.from_rows([[2, 0], [0, 3]])) == [1, 6]


def test_snf_trefoil_block_matrix():
    assert _check_snf(block_circulant(V3, U3, 2)) == [1, 1, 1, 3]


def test_snf_random_against_sympy(rng):
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    for _ in range(40):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        M = rand_matrix(rng, r, c)
        diag = _check_snf(M)
        S = sympy_snf(sympy.Matrix(M.tolist()), domain=sympy.ZZ)
        theirs = [abs(int(S[i, i])) for i in range(min(r, c))]
        assert sorted(diag) == sorted(theirs)


def test_snf_is_deterministic(rng):
    M = rand_matrix(rng, 4, 4)
    assert smith_normal_form(M) == smith_normal_form(M)


def test_abelian_invariants():
    inv = AbelianInvariants((3,), 0)
    assert inv.order == 3 and str(inv) == "Z/3"
    assert AbelianInvariants((), 0).is_trivial
    assert AbelianInvariants((2, 4), 1).order is None
    with pytest.raises(ValueError):
        AbelianInvariants((2, 3), 0)


def test_cokernel_drops_units():
    assert cokernel(IntMatrix.from_rows([[1, 0], [0, 6]])) == AbelianInvariants((6,), 0)
    assert cokernel(IntMatrix.zeros(2, 1)) == AbelianInvariants((), 2)


def test_laurent_normalization_and_arithmetic():
    z = LaurentPoly(5, (0, 0))
    assert z.is_zero and z.lowest_exponent == 0 and z.coefficients == ()
    p = LaurentPoly(-1, (0, 1, -1, 0))
    assert p.lowest_exponent == 0 and p.coefficients == (1, -1)
    t = LaurentPoly.monomial(1, 1)
    assert (t - 1) * (t - 1) + t == LaurentPoly(0, (1, -1, 1))
    assert LaurentPoly(-2, (3, 1)).normalized() == LaurentPoly(0, (3, 1))
    assert LaurentPoly(0, (-1, 3, -1)).normalized() == LaurentPoly(0, (1, -3, 1))
    assert str(LaurentPoly(0, (1, -1, 1))) == "t^2 - t + 1"


def test_laurent_mul_distributes(rng):
    def rp():
        return LaurentPoly(rng.randint(-3, 3), tuple(rng.randint(-4, 4) for _ in range(rng.randint(0, 4))))

    for _ in range(50):
        a, b, c = rp(), rp(), rp()
        assert a * (b + c) == a * b + a * c
        x = Fraction(rng.randint(1, 5), rng.randint(1, 5))
        assert (a * b)(x) == a(x) * b(x)


def test_alexander_trefoil():
    D = alexander_polynomial(V3, U3)
    assert D == LaurentPoly(0, (1, -1, 1))
    assert D(-1) == 3 and D(1) == 1


def test_alexander_unknot():
    assert alexander_polynomial(EMPTY, EMPTY) == LaurentPoly(0, (1,))


def test_alexander_size_mismatch():
    with pytest.raises(DimensionError):
        alexander_polynomial(V3, IntMatrix.identity(4))


def test_alexander_matches_sympy_det(rng):
    from conftest import random_lin

    t = sympy.symbols("t")
    for _ in range(10):
        lp = random_lin(rng)
        ours = alexander_polynomial(lp.V, lp.U)
        M = t * sympy.Matrix(lp.U.tolist()) - sympy.Matrix(lp.V.tolist())
        theirs = sympy.Poly(M.det(), t).all_coeffs()[::-1]
        assert ours.terms() == {i: int(c) for i, c in enumerate(theirs) if c}
        assert abs(ours(1)) == 1
        assert ours(-1) % 2 == 1


def test_block_circulant_layout():
    A = block_circulant(V3, U3, 2)
    assert A.tolist() == [
        [1, -1, -1, 0],
        [0, 1, 1, -1],
        [-1, 0, 1, -1],
        [1, -1, 0, 1],
    ]
    one = IntMatrix.identity(1)
    assert block_circulant(one, one, 3).tolist() == [[1, -1, 0], [0, 1, -1], [-1, 0, 1]]


def test_block_circulant_needs_n_ge_2():
    with pytest.raises(ValueError):
        block_circulant(V3, U3, 1)


def test_block_circulant_det_identity(rng):
    from conftest import random_lin

    for _ in range(10):
        lp = random_lin(rng, g=rng.randint(1, 2))
        delta = alexander_polynomial(lp.V, lp.U)
        for n in range(2, 6):
            prod = 1
            for j in range(n):
                prod *= delta(cmath.exp(2j * cmath.pi * j / n))
            assert abs(det(block_circulant(lp.V, lp.U, n))) == round(abs(prod))


def test_branched_cover_homology_trefoil():
    assert branched_cover_homology(V3, U3, 2) == AbelianInvariants((3,), 0)
    assert branched_cover_homology(V3, U3, 6).free_rank >= 1
    assert branched_cover_homology(EMPTY, EMPTY, 4).is_trivial


def test_cyclic_cover_homology():
    assert cyclic_cover_homology(V3, U3, 2) == AbelianInvariants((3,), 1)
    assert cyclic_cover_homology(EMPTY, EMPTY, 3) == AbelianInvariants((), 1)


def test_cyclic_adds_one_free_summand(rng):
    from conftest import random_lin

    for _ in range(15):
        lp = random_lin(rng)
        n = rng.randint(2, 6)
        b = branched_cover_homology(lp.V, lp.U, n)
        c = cyclic_cover_homology(lp.V, lp.U, n)
        assert c.free_rank == b.free_rank + 1 and c.torsion == b.torsion


def test_double_cover_order_is_odd(rng):
    from conftest import random_lin

    for _ in range(20):
        lp = random_lin(rng)
        h = branched_cover_homology(lp.V, lp.U, 2)
        assert h.free_rank == 0 and h.order % 2 == 1
        assert h.order == abs(det(lp.V + lp.U))


def test_kernel_vectors_have_zero_block_sum(rng):
    from conftest import random_lin

    from sl2slice.presentation import LinPresentation

    cases = [(LinPresentation.from_matrices([[1, 0], [-1, 1]]), 6)]
    cases += [(random_lin(rng, g=1), rng.choice([2, 3, 4, 6])) for _ in range(30)]
    checked = 0
    for lp, n in cases:
        A = sympy.Matrix(block_circulant(lp.V, lp.U, n).tolist())
        m = lp.V.rows
        VmU = sympy.Matrix((lp.V - lp.U).tolist())
        for vec in A.nullspace():
            total = sum((vec[j * m:(j + 1) * m, :] for j in range(n)), sympy.zeros(m, 1))
            assert VmU * total == sympy.zeros(m, 1)
            assert total == sympy.zeros(m, 1)
            checked += 1
    assert checked > 0


def test_snf_speed_on_desk_scale(rng):
    import time

    M = rand_matrix(rng, 40, 40, bound=3)
    t0 = time.perf_counter()
    _check_snf(M)
    assert time.perf_counter() - t0 < 1.0
