import json

import pytest

from sl2slice.errors import ParameterError
from sl2slice.pretzel import (
    H,
    S1,
    S2,
    S3,
    BrieskornGroup,
    NonEquivariantError,
    RepParams,
    all_params,
    build_rep,
    equivariance_certificate,
    surjectivity_report,
    tau2_action,
)
from sl2slice.presentation import Presentation
from sl2slice.reps import Representation, character_sample, equivariance_residual, is_irreducible
from sl2slice.sl2 import ONE, QUAT_K, Sl2, Word, dist

G237 = BrieskornGroup(2, 3, 7)


def first_irreducible(G):
    for prm in all_params(G):
        if prm.guards_hold(G):
            try:
                return prm, build_rep(G, prm)
            except ParameterError:
                continue
    raise AssertionError("no irreducible representation found")


def test_group_validation():
    for bad in [(1, 3, 5), (2, 4, 5), (3, 5, 9), (2.5, 3, 5)]:
        with pytest.raises(ParameterError):
            BrieskornGroup(*bad)
    assert BrieskornGroup(3, 5, 7).presentation.cover == 2


def test_params_validation():
    with pytest.raises(ParameterError):
        RepParams(0, 0, 0, 0)


def test_guard_rejections():
    G = BrieskornGroup(3, 5, 7)
    # eps = 1, m1 = 0 gives a = 1
    with pytest.raises(ParameterError):
        build_rep(G, RepParams(1, 0, 1, 1))
    # eps = -1, m3 = 3 gives gamma = 2 cos(pi) = -2
    with pytest.raises(ParameterError):
        build_rep(G, RepParams(-1, 0, 0, 3))


def test_build_rep_traces_and_powers():
    G = BrieskornGroup(3, 5, 7)
    prm = RepParams(-1, 0, 1, 2)
    rep = build_rep(G, prm)
    a, beta, gamma = prm.values(G)
    assert rep.relation_residual <= 1e-8
    assert abs(rep["s2"].trace() - beta) < 1e-12
    assert abs(rep["s3"].trace() - gamma) < 1e-12
    assert abs(rep["s1"].trace() - (a + 1 / a)) < 1e-12
    assert dist(rep["s1"] ** 3, -ONE) < 1e-12
    assert dist(rep["h"], -ONE) == 0
    assert is_irreducible(rep)


def test_k_certificate_in_normal_form():
    _, rep = first_irreducible(G237)
    assert equivariance_residual(rep, QUAT_K) < 1e-12
    assert dist(equivariance_certificate(rep), QUAT_K) == 0


def test_certificate_after_conjugation():
    _, rep = first_irreducible(BrieskornGroup(3, 5, 7))
    P = Sl2(1.3, 0.4 - 0.2j, -0.7j, (1 + (0.4 - 0.2j) * (-0.7j)) / 1.3)
    moved = rep.conjugate(P)
    assert equivariance_residual(moved, QUAT_K) > 1e-3
    C = equivariance_certificate(moved)
    assert equivariance_residual(moved, C) <= 1e-9
    assert dist(C @ C, -ONE) < 1e-9 or dist(C @ C, ONE) < 1e-9


def test_trivial_rep_is_certified():
    G = BrieskornGroup(3, 5, 7)
    rep = Representation(G.presentation, (ONE, ONE, ONE, ONE))
    assert rep.relation_residual == 0
    assert equivariance_residual(rep, equivariance_certificate(rep)) == 0


def test_non_equivariant_raises():
    # three unrelated matrices on the free group with the same involution
    G = BrieskornGroup(3, 5, 7)
    free = Presentation(("s1", "s2", "s3", "h"), (), deck=G.presentation.deck, cover=2)
    imgs = (Sl2(2, 1, 1, 1), Sl2(1, 0, 3, 1), Sl2(1, 2j, 0.5, 1 + 1j), ONE)
    with pytest.raises(NonEquivariantError):
        equivariance_certificate(Representation(free, imgs))


def test_tau2_is_an_involution_on_reps():
    G = BrieskornGroup(3, 5, 7)
    _, rep = first_irreducible(G)
    for g in (S1, S2, S3, H):
        twice = tau2_action(tau2_action(g))
        assert dist(rep.evaluate(twice), rep.evaluate(g)) < 1e-10


def test_tau2_preserves_relators():
    G = BrieskornGroup(2, 3, 7)
    _, rep = first_irreducible(G)
    for r in G.presentation.relators:
        assert dist(rep.evaluate(tau2_action(r)), ONE) < 1e-10


def test_tau2_images():
    assert tau2_action(S1) == S1.inverse()
    assert tau2_action(H) == H
    t2 = tau2_action(S1 * S2)
    assert t2 == Word((-1,)) * Word((1, -2, -1))


def test_m1_flip_gives_same_character():
    G = BrieskornGroup(3, 5, 7)
    prm = RepParams(-1, 0, 1, 2)
    flipped = RepParams(-1, (-prm.m1 - 1) % 3, 1, 2)
    a = character_sample(build_rep(G, prm))
    b = character_sample(build_rep(G, flipped))
    assert a.close_to(b, 1e-8)


@pytest.mark.parametrize("pqr, admissible, distinct", [((2, 3, 7), 24, 3), ((3, 5, 7), 96, 12)])
def test_surjectivity(pqr, admissible, distinct):
    rep = surjectivity_report(*pqr)
    assert rep.ok
    assert len(rep.built) == admissible
    assert len(rep.irreducible) == admissible
    assert rep.distinct_characters == distinct
    s = json.loads(rep.to_json())["summary"]
    assert s["certified"] == s["irreducible"]
    assert "eps" in rep.table().splitlines()[0]


def test_characters_are_real():
    G = BrieskornGroup(2, 3, 7)
    for prm in all_params(G):
        if prm.guards_hold(G):
            for t in character_sample(build_rep(G, prm)).traces:
                assert abs(complex(t).imag) < 1e-9
