import cmath
import math
from fractions import Fraction
from pathlib import Path

import pytest

from sl2slice.errors import InvalidKnotData, ParameterError, SliceMismatchError
from sl2slice.exactlin import IntMatrix, det
from sl2slice.presentation import knot_group, lift_sigman, two_bridge_group
from sl2slice.reps import (
    Representation,
    abelian_rep,
    character_sample,
    dihedral_solutions,
    enumerate_dihedral,
    equivariance_residual,
    images_commute,
    in_slice,
    involution_iota,
    is_irreducible,
    is_metabelian,
    phi_n,
    slice_search,
    slice_trace,
    tau_equivariance,
    trivial_rep,
    two_to_one_probe,
    verify,
)
from sl2slice.sl2 import ONE, QUAT_J, Sl2, dist, matrix_order

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def random_conjugator(rng):
    a, b, c = (complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3))
    a += 1.5
    return Sl2(a, b, c, (1 + b * c) / a)


def reducible_nonabelian(lp):
    """mu -> diag(lam, 1/lam), x_i -> [[1, b_i], [0, 1]] with (lam^2 V - U) b = 0 (trefoil only)."""
    lam = cmath.exp(1j * math.pi / 6)
    # for the trefoil, lam^2 V - U has kernel spanned by (1, 1 - lam^-2)
    b = (1, 1 - lam**-2)
    imgs = tuple(Sl2(1, bi, 0, 1) for bi in b) + (Sl2.diag(lam),)
    return Representation(knot_group(lp), imgs)


def test_verify_trivial(trefoil):
    rr = verify(trivial_rep(knot_group(trefoil)))
    assert rr.max_residual == 0 and rr.ok


def test_verify_abelian_phi(trefoil):
    rep = abelian_rep(knot_group(trefoil), cmath.exp(0.37j))
    assert rep.relation_residual <= 1e-12


def test_verify_riley_trefoil():
    B = two_bridge_group("x y")
    rep = Representation(B, (Sl2(1j, -1j, 0, -1j), Sl2(1j, 0, 3j, -1j)))
    assert verify(rep).ok
    assert len(verify(rep).per_relator) == 1


def test_missing_generator_is_lookup_error(trefoil):
    G = knot_group(trefoil)
    with pytest.raises(LookupError):
        Representation.from_mapping(G, {"x1": ONE, "x2": ONE})
    with pytest.raises(LookupError):
        Representation(G, (ONE,))


def test_determinant_guard(trefoil):
    with pytest.raises(ValueError):
        Representation(knot_group(trefoil), (ONE, ONE, Sl2(2, 0, 0, 1)))


def test_character_sample_trivial(trefoil):
    s = character_sample(trivial_rep(knot_group(trefoil)))
    assert len(s.words) == 3 + 3 + 1
    assert all(t == 2 for t in s.traces)


def test_character_sample_conjugation_invariant(trefoil, rng):
    rep = enumerate_dihedral(trefoil).nontrivial[0]
    for _ in range(5):
        other = rep.conjugate(random_conjugator(rng))
        assert character_sample(rep).close_to(character_sample(other), 1e-8)


def test_iota_is_an_involution(trefoil):
    rep = enumerate_dihedral(trefoil).nontrivial[0]
    assert involution_iota(involution_iota(rep)) == rep
    assert dist(involution_iota(rep)["mu"], -QUAT_J) == 0


def test_iota_of_abelian(trefoil):
    G = knot_group(trefoil)
    lam = cmath.exp(0.4j)
    a = involution_iota(abelian_rep(G, lam))
    b = abelian_rep(G, -lam)
    assert max(dist(x, y) for x, y in zip(a.images, b.images)) < 1e-15


def test_iota_flips_slice(trefoil):
    rep = reducible_nonabelian(trefoil)
    assert slice_trace(involution_iota(rep)) == -slice_trace(rep)


def test_slice_trace_values(trefoil):
    G = knot_group(trefoil)
    assert slice_trace(enumerate_dihedral(trefoil).nontrivial[0]) == 0
    assert abs(slice_trace(abelian_rep(G, 1j))) < 1e-15
    assert slice_trace(abelian_rep(G, 1)) == 2
    assert in_slice(abelian_rep(G, 1j), 0)
    assert not in_slice(abelian_rep(G, 1), 0)


def test_slice_trace_needs_meridian(trefoil):
    S = lift_sigman(trefoil, 2)
    with pytest.raises(ParameterError):
        slice_trace(trivial_rep(S))


def test_irreducibility(trefoil):
    G = knot_group(trefoil)
    assert not is_irreducible(abelian_rep(G, cmath.exp(0.3j)))
    assert not is_irreducible(trivial_rep(G))
    assert is_irreducible(enumerate_dihedral(trefoil).nontrivial[0])
    assert not is_irreducible(reducible_nonabelian(trefoil))


def test_metabelian_flags(trefoil):
    G = knot_group(trefoil)
    assert is_metabelian(enumerate_dihedral(trefoil).nontrivial[0])
    assert is_metabelian(abelian_rep(G, cmath.exp(0.3j)))
    assert is_metabelian(reducible_nonabelian(trefoil))


def test_figure_eight_geometric_is_not_metabelian():
    from sl2slice.registry import get
    from sl2slice.twobridge import riley_rep

    K = get("4_1")
    omega = cmath.exp(2j * math.pi / 3)
    rho = riley_rep(K, omega, sqrt_t=1)
    assert rho.relation_residual < 1e-10
    assert is_irreducible(rho)
    assert abs(slice_trace(rho) - 2) < 1e-12
    assert not is_metabelian(rho)


def test_dihedral_trefoil(trefoil):
    en = enumerate_dihedral(trefoil)
    assert len(en.solutions) == 3 and en.class_count == 1
    assert en.representatives[1] == (Fraction(1, 3), Fraction(2, 3))
    for rep in en.representations:
        assert rep.relation_residual <= 1e-8


def test_dihedral_unknot():
    from sl2slice.presentation import LinPresentation

    e = IntMatrix.zeros(0, 0)
    en = enumerate_dihedral(LinPresentation(0, (), (), e, e))
    assert len(en.solutions) == 1 and en.class_count == 0


def test_dihedral_rejects_singular():
    z = IntMatrix.zeros(2, 2)
    with pytest.raises(InvalidKnotData):
        dihedral_solutions(z, z)


def test_dihedral_solutions_are_exact(rng):
    from conftest import random_lin

    for _ in range(20):
        lp = random_lin(rng, max_det=400)
        sols, reps = dihedral_solutions(lp.V, lp.U)
        W = lp.V + lp.U
        d = abs(det(W))
        assert len(sols) == d and len({s.theta for s in sols}) == d
        assert len(reps) - 1 == (d - 1) // 2
        for s in sols:
            assert all(0 <= t < 1 for t in s.theta)
            assert all(v.denominator == 1 for v in W.apply(s.theta))


def test_dihedral_classes_have_distinct_characters(rng):
    from conftest import random_lin

    for _ in range(10):
        en = enumerate_dihedral(random_lin(rng, max_det=200))
        samples = [character_sample(r) for r in en.representations]
        for i in range(len(samples)):
            for j in range(i + 1, len(samples)):
                assert not samples[i].close_to(samples[j], 1e-6)


def test_phi_of_abelian_is_trivial(trefoil):
    G = knot_group(trefoil)
    for n, k in [(2, 1), (3, 1), (4, 3), (5, 2)]:
        rep = abelian_rep(G, cmath.exp(1j * math.pi * k / n))
        out = phi_n(rep, n, k)
        assert all(dist(A, ONE) < 1e-12 for A in out.images)


def test_phi_trefoil_dihedral(trefoil):
    rho = enumerate_dihedral(trefoil).nontrivial[0]
    out = phi_n(rho, 2, 1)
    assert out.relation_residual <= 1e-8
    assert images_commute(out)
    assert matrix_order(out["x1_0"], 10) == 3
    other = phi_n(involution_iota(rho), 2, 1)
    assert max(dist(a, b) for a, b in zip(out.images, other.images)) == 0


def test_phi_infers_k(trefoil):
    rho = enumerate_dihedral(trefoil).nontrivial[0]
    assert phi_n(rho, 2).images == phi_n(rho, 2, 1).images


def test_phi_slice_mismatch(trefoil):
    rho = enumerate_dihedral(trefoil).nontrivial[0]
    with pytest.raises(SliceMismatchError):
        phi_n(rho, 3, 1)
    with pytest.raises(SliceMismatchError):
        phi_n(rho, 2, 0)
    with pytest.raises(ParameterError):
        phi_n(rho, 2, 5)


def test_phi_of_reducible_nonabelian(trefoil):
    rho = reducible_nonabelian(trefoil)
    assert rho.relation_residual < 1e-12
    out = phi_n(rho, 6, 1)
    assert out.relation_residual <= 1e-7
    assert not all(dist(A, ONE) < 1e-8 for A in out.images)
    C = tau_equivariance(out)
    assert C is not None
    # the image is reducible, so C is only determined up to its centralizer
    assert equivariance_residual(out, rho["mu"].inv()) <= 1e-8
    assert equivariance_residual(out, C) <= 1e-8


def test_equivariance_of_abelian_double_cover_reps(trefoil):
    for rho in enumerate_dihedral(trefoil).representations:
        out = phi_n(rho, 2, 1)
        assert tau_equivariance(out) is not None
        assert equivariance_residual(out, QUAT_J) <= 1e-8
        C = tau_equivariance(out)
        assert abs(C.det() - 1) < 1e-12


def test_equivariance_counterexample(trefoil):
    S = lift_sigman(trefoil, 3)
    signs = {"x1_0": 1, "x1_1": -1, "x1_2": -1, "x2_0": -1, "x2_1": 1, "x2_2": -1}
    rep = Representation.from_mapping(S, {k: v * ONE for k, v in signs.items()})
    assert rep.relation_residual == 0
    assert rep["x1_0"].trace() != rep["x1_1"].trace()
    assert tau_equivariance(rep) is None


def test_equivariance_of_lifts_matches_meridian(rng):
    from conftest import random_lin

    for _ in range(10):
        lp = random_lin(rng, max_det=100)
        for rho in enumerate_dihedral(lp).nontrivial:
            out = phi_n(rho, 2, 1)
            C = tau_equivariance(out)
            assert C is not None
            assert equivariance_residual(out, rho["mu"]) <= 1e-8


def test_conjugated_lift_stays_equivariant(trefoil, rng):
    rho = reducible_nonabelian(trefoil)
    out = phi_n(rho, 6, 1).conjugate(random_conjugator(rng))
    assert tau_equivariance(out) is not None


def test_slice_search_on_trefoil_finds_only_fixed_points(trefoil):
    found = slice_search(trefoil, attempts=20, seed=0)
    # the only irreducible slice character is the dihedral one
    assert len(found) == 1
    assert character_sample(found[0]).close_to(character_sample(enumerate_dihedral(trefoil).nontrivial[0]), 1e-8)
    for rho in found:
        assert in_slice(rho, 0) and rho.relation_residual <= 1e-8
        w = two_to_one_probe(rho)
        assert w.metabelian and w.fixed_point and w.lift_gap == 0


def test_slice_search_trace_one(trefoil):
    for rho in slice_search(trefoil, c=1.0, attempts=4, seed=1):
        assert abs(slice_trace(rho) - 1) < 1e-12
        assert rho.relation_residual <= 1e-8


def test_two_to_one_witness_off_fixed_points():
    from sl2slice.knotdata import load_knot

    lp = load_knot(DATA / "genus2.json").lin
    found = slice_search(lp, attempts=15, seed=1)
    witnesses = [two_to_one_probe(rho) for rho in found]
    off = [w for w in witnesses if not w.metabelian]
    assert off, "expected a non-metabelian slice representation"
    for w in off:
        assert w.character_gap > 1e-3 and w.lift_gap <= 1e-8
    for w in witnesses:
        if w.metabelian:
            assert w.fixed_point
