"""Representations of presentations into SL2(C).

Covers relator verification, character samples, the sign-twist involution,
meridian slices, irreducibility and metabelian tests, binary dihedral
enumeration, the lifting map to branched covers and the search for a matrix
intertwining a lifted representation with its deck-transformed copy.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import ComputationError, InvalidKnotData, ParameterError, SliceMismatchError
from .exactlin import det, smith_normal_form
from .presentation import LinPresentation, Presentation, knot_group, lift_sigman, tau_action
from .sl2 import EPS_DET, EPS_REL, ONE, QUAT_J, Sl2, Word, check_det, dist, evaluate_word

EPS_LINE = 1e-6


@dataclass(frozen=True)
class ResidualReport:
    per_relator: tuple[float, ...]
    max_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.max_residual <= self.tol


@dataclass(frozen=True)
class Representation:
    """Images of the generators of ``presentation``, in generator order."""

    presentation: Presentation
    images: tuple[Sl2, ...]
    det_tol: float = field(default=EPS_DET, compare=False)

    def __post_init__(self):
        if len(self.images) != self.presentation.generator_count:
            missing = self.presentation.generator_labels[len(self.images):]
            raise LookupError(f"no image assigned to generator(s) {', '.join(missing) or '?'}")
        for lab, A in zip(self.presentation.generator_labels, self.images):
            try:
                check_det(A, self.det_tol)
            except ValueError as exc:
                raise ValueError(f"image of {lab}: {exc}") from None

    @classmethod
    def from_mapping(cls, pres: Presentation, assignment: Mapping[str, Sl2], **kw) -> Representation:
        missing = [lab for lab in pres.generator_labels if lab not in assignment]
        if missing:
            raise LookupError(f"no image assigned to generator(s) {', '.join(missing)}")
        extra = set(assignment) - set(pres.generator_labels)
        if extra:
            raise LookupError(f"unknown generator(s) {', '.join(sorted(extra))}")
        return cls(pres, tuple(assignment[lab] for lab in pres.generator_labels), **kw)

    def __getitem__(self, label: str | int) -> Sl2:
        i = self.presentation.index(label) if isinstance(label, str) else label
        return self.images[i - 1]

    def as_dict(self) -> dict[str, Sl2]:
        return dict(zip(self.presentation.generator_labels, self.images))

    def evaluate(self, w: Word | str) -> Sl2:
        if isinstance(w, str):
            w = self.presentation.parse(w)
        return evaluate_word(self.images, w)

    @cached_property
    def relator_residuals(self) -> tuple[float, ...]:
        return tuple(dist(self.evaluate(r), ONE) for r in self.presentation.relators)

    @property
    def relation_residual(self) -> float:
        return max(self.relator_residuals, default=0.0)

    def verify(self, tol: float = EPS_REL) -> ResidualReport:
        return ResidualReport(self.relator_residuals, self.relation_residual, tol)

    def conjugate(self, P: Sl2) -> Representation:
        """The representation ``g -> P rho(g) P^-1``."""
        Pi = P.inv()
        return Representation(self.presentation, tuple(P @ A @ Pi for A in self.images), self.det_tol)


def verify(rep: Representation, tol: float = EPS_REL) -> ResidualReport:
    return rep.verify(tol)


def trivial_rep(pres: Presentation) -> Representation:
    return Representation(pres, (ONE,) * pres.generator_count)


def abelian_rep(pres: Presentation, lam: complex) -> Representation:
    """The diagonal representation sending each generator g to ``diag(lam, 1/lam)^ab(g)``."""
    if pres.abelianization is None:
        raise ParameterError("abelian_rep needs a presentation with an abelianization to Z")
    D = Sl2.diag(lam)
    return Representation(pres, tuple(D**e for e in pres.abelianization))


# characters

@dataclass(frozen=True)
class CharacterSample:
    words: tuple[Word, ...]
    traces: tuple[complex, ...]

    def distance(self, other: CharacterSample) -> float:
        if self.words != other.words:
            raise ValueError("samples were taken on different word sets")
        return max((abs(a - b) for a, b in zip(self.traces, other.traces)), default=0.0)

    def close_to(self, other: CharacterSample, tol: float = EPS_REL) -> bool:
        return self.distance(other) <= tol


def sample_words(n: int) -> tuple[Word, ...]:
    """Generators, then products g_i g_j (i < j), then g_i g_j g_k (i < j < k)."""
    gens = range(1, n + 1)
    words = [Word((i,)) for i in gens]
    words += [Word(c) for c in itertools.combinations(gens, 2)]
    words += [Word(c) for c in itertools.combinations(gens, 3)]
    return tuple(words)


def character_sample(rep: Representation) -> CharacterSample:
    words = sample_words(rep.presentation.generator_count)
    return CharacterSample(words, tuple(rep.evaluate(w).trace() for w in words))


# involution and slices

def involution_iota(rep: Representation) -> Representation:
    """Twist by the sign character: each image is multiplied by ``(-1)^ab(g)``."""
    ab = rep.presentation.abelianization
    if ab is None:
        raise ParameterError("the involution needs a knot-group presentation with abelianization")
    return Representation(rep.presentation, tuple(-A if e % 2 else A for A, e in zip(rep.images, ab)), rep.det_tol)


def slice_trace(rep: Representation) -> complex:
    m = rep.presentation.meridian
    if m is None:
        raise ParameterError("presentation has no meridian generator")
    return rep.images[m - 1].trace()


def in_slice(rep: Representation, c: complex = 0.0, tol: float = EPS_REL) -> bool:
    return abs(slice_trace(rep) - c) <= tol


# irreducibility

def _eigenlines(A: Sl2) -> list[np.ndarray]:
    tr = A.trace()
    disc = cmath.sqrt(tr * tr - 4 * A.det())
    lines = []
    for lam in {(tr + disc) / 2, (tr - disc) / 2}:
        v1 = np.array([A.b, lam - A.a])
        v2 = np.array([lam - A.d, A.c])
        v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        nv = np.linalg.norm(v)
        if nv > 0:
            lines.append(v / nv)
    return lines


def _line_invariant(A: Sl2, v: np.ndarray, tol: float) -> bool:
    Av = A.to_array() @ v
    n = np.linalg.norm(Av)
    if n == 0:
        return True
    return abs(v[0] * Av[1] - v[1] * Av[0]) / n <= tol


def is_irreducible(rep: Representation, tol: float = EPS_LINE) -> bool:
    """True when no line in C^2 is invariant under every generator image."""
    noncentral = [A for A in rep.images if not A.is_central(EPS_REL)]
    if not noncentral:
        return False
    for A in noncentral:
        for v in _eigenlines(A):
            if all(_line_invariant(B, v, tol) for B in noncentral):
                return False
    return True


def is_metabelian(rep: Representation, tol: float = EPS_REL) -> bool:
    """Reducible representations count as metabelian; irreducible ones must be fixed by iota."""
    if not is_irreducible(rep):
        return True
    return character_sample(rep).close_to(character_sample(involution_iota(rep)), tol)


def images_commute(rep: Representation, tol: float = EPS_REL) -> bool:
    return all(dist(A @ B, B @ A) <= tol for A, B in itertools.combinations(rep.images, 2))


# binary dihedral representations

@dataclass(frozen=True)
class DihedralSolution:
    """Angles ``theta`` (in turns) with ``(V+U) theta`` integral, and the class index of +-theta."""

    theta: tuple[Fraction, ...]
    class_id: int

    @property
    def is_trivial(self) -> bool:
        return not any(self.theta)


@dataclass(frozen=True)
class DihedralEnumeration:
    solutions: tuple[DihedralSolution, ...]
    representatives: tuple[tuple[Fraction, ...], ...]
    representations: tuple[Representation, ...]

    @property
    def class_count(self) -> int:
        """Number of nontrivial conjugacy classes."""
        return len(self.representatives) - 1

    @property
    def nontrivial(self) -> tuple[Representation, ...]:
        return self.representations[1:]


def _negate(theta: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    return tuple((-t) % 1 for t in theta)


def dihedral_solutions(V, U) -> tuple[list[DihedralSolution], list[tuple[Fraction, ...]]]:
    """All theta in (Q/Z)^2g with ``(V+U) theta = 0 mod 1``, with class representatives.

    Class 0 is the trivial solution; the remaining classes are ordered by their
    representative, which is the lexicographically smaller of theta and -theta.
    """
    W = V + U
    if det(W) == 0:
        raise InvalidKnotData("det(V + U) = 0, so this is not a knot in a homology sphere")
    m = W.rows
    _, D, Q = smith_normal_form(W)
    diag = [D[i, i] for i in range(m)]
    L = max(diag, default=1)  # the last invariant factor is divisible by all others
    scale = [L // d for d in diag]
    rows = [[Q[r, c] * scale[c] for c in range(m)] for r in range(m)]
    thetas = []
    for a in itertools.product(*(range(d) for d in diag)):
        thetas.append(tuple(Fraction(sum(q * x for q, x in zip(row, a)) % L, L) for row in rows))
    reps = sorted({min(t, _negate(t)) for t in thetas})
    cls = {r: i for i, r in enumerate(reps)}
    sols = sorted((DihedralSolution(t, cls[min(t, _negate(t))]) for t in thetas), key=lambda s: (s.class_id, s.theta))
    return sols, reps


def dihedral_rep(pres: Presentation, theta: Sequence[Fraction]) -> Representation:
    """``x_i -> diag(e^{2 pi i theta_i}, e^{-2 pi i theta_i})``, ``mu -> j``."""
    images = tuple(Sl2.diag(cmath.exp(2j * math.pi * float(t))) for t in theta) + (QUAT_J,)
    return Representation(pres, images)


def enumerate_dihedral(lp: LinPresentation | Presentation) -> DihedralEnumeration:
    if isinstance(lp, Presentation):
        if lp.lin is None:
            raise ParameterError("dihedral enumeration needs Lin data")
        pres, lp = lp, lp.lin
    else:
        pres = knot_group(lp)
    sols, reps = dihedral_solutions(lp.V, lp.U)
    return DihedralEnumeration(tuple(sols), tuple(reps), tuple(dihedral_rep(pres, t) for t in reps))


# lifting to the branched cover

def infer_k(c: complex, n: int) -> int:
    """The k in 0..n whose ``2 cos(k pi / n)`` is nearest to c."""
    return min(range(n + 1), key=lambda k: abs(c - 2 * math.cos(k * math.pi / n)))


def phi_n(rep: Representation, n: int, k: int | None = None, tol: float = EPS_REL) -> Representation:
    """Lift a knot-group representation to the n-fold branched cover.

    Requires ``tr rho(mu) = 2 cos(k pi / n)`` and ``rho(mu)^n = (-1)^k``.  Copy j
    of x_i is sent to ``rho(mu^-j x_i mu^j)``.
    """
    pres = rep.presentation
    lp = pres.lin
    if lp is None or pres.meridian is None or pres.cover is not None:
        raise ParameterError("phi_n takes a representation of a Lin knot group")
    M = rep.images[pres.meridian - 1]
    c = M.trace()
    if k is None:
        k = infer_k(c, n)
    if not 0 <= k <= n:
        raise ParameterError(f"k must lie in 0..{n}")
    target = 2 * math.cos(k * math.pi / n)
    if abs(c - target) > tol:
        raise SliceMismatchError(f"tr rho(mu) = {c:.6g} but the k={k} slice needs {target:.6g}")
    sign = -1 if k % 2 else 1
    if dist(M**n, sign * ONE) > tol:
        raise SliceMismatchError(f"rho(mu)^{n} is not {sign:+d}")
    m = 2 * lp.genus
    Mi = M.inv()
    images = []
    conj_l, conj_r = ONE, ONE
    for _ in range(n):
        images.extend(conj_l @ X @ conj_r for X in rep.images[:m])
        conj_l, conj_r = conj_l @ Mi, M @ conj_r
    out = Representation(lift_sigman(lp, n), tuple(images), rep.det_tol)
    if out.relation_residual > 10 * tol:
        raise ComputationError(f"lifted representation has residual {out.relation_residual:.3g}")
    return out


def equivariance_residual(rep: Representation, C: Sl2) -> float:
    """``max_g |rho(tau g) - C rho(g) C^-1|``."""
    pres = rep.presentation
    Ci = C.inv()
    return max(
        (dist(rep.evaluate(tau_action(pres, Word((g,)))), C @ A @ Ci) for g, A in enumerate(rep.images, 1)),
        default=0.0,
    )


def _intertwiner_system(rep: Representation) -> np.ndarray:
    pres = rep.presentation
    eye = np.eye(2)
    blocks = []
    for g, B in enumerate(rep.images, 1):
        A = rep.evaluate(tau_action(pres, Word((g,)))).to_array()
        # row-major vec(A C - C B) = (A kron I - I kron B^T) vec(C)
        blocks.append(np.kron(A, eye) - np.kron(eye, B.to_array().T))
    return np.vstack(blocks) if blocks else np.zeros((1, 4))


def tau_equivariance(rep: Representation, tol: float = EPS_REL, seed: int = 0) -> Sl2 | None:
    """A determinant-one C with ``rho(tau g) = C rho(g) C^-1`` for all g, or None."""
    if rep.presentation.deck is None:
        raise ParameterError("representation is not over a lifted presentation")
    A = _intertwiner_system(rep)
    _, s, vh = np.linalg.svd(A)
    s = np.concatenate([s, np.zeros(4 - len(s))])
    scale = max(1.0, s[0])
    null = vh[s <= 1e-7 * scale].conj()
    if len(null) == 0:
        return None
    cands = list(null)
    cands += [a + b for a, b in itertools.combinations(null, 2)]
    rng = np.random.default_rng(seed)
    for _ in range(8 if len(null) > 1 else 0):
        cands.append(rng.normal(size=len(null)) @ null + 1j * (rng.normal(size=len(null)) @ null))

    def det_of(v):
        v = v / np.linalg.norm(v)
        return abs(v[0] * v[3] - v[1] * v[2])

    best = max(cands, key=det_of)
    if det_of(best) < 1e-6:
        return None
    C = Sl2(*(complex(x) for x in best))
    C = C * (1 / cmath.sqrt(C.det()))
    if equivariance_residual(rep, C) > tol:
        return None
    return C


# numerical search in a slice

def slice_meridian(c: complex = 0.0) -> Sl2:
    """Fixed trace-c image for the meridian: j when c = 0, otherwise ``[[c, -1], [1, 0]]``."""
    return QUAT_J if c == 0 else Sl2(c, -1, 1, 0)


_ADJ = np.array([[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]])


def _slice_system(G: Presentation, m: int, mu: Sl2, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Residuals and analytic Jacobian for the unknown images ``z`` (four entries per generator).

    Inverse letters use the adjugate, so the system is polynomial; together
    with the determinant equations it has the same solutions.
    """
    X = z.reshape(m, 4)
    mats = [x.reshape(2, 2) for x in X] + [mu.to_array()]
    adjs = [(_ADJ @ x).reshape(2, 2) for x in X] + [mu.inv().to_array()]
    res, rows = [], []
    eye = np.eye(2, dtype=complex)
    for r in G.relators:
        letters = list(r)
        facs = [mats[x - 1] if x > 0 else adjs[-x - 1] for x in letters]
        prefix = [eye]
        for F in facs:
            prefix.append(prefix[-1] @ F)
        suffix = [eye]
        for F in reversed(facs):
            suffix.append(F @ suffix[-1])
        suffix.reverse()
        M = prefix[-1]
        res += [M[0, 0] - 1, M[0, 1], M[1, 0], M[1, 1] - 1]
        Jr = np.zeros((4, 4 * m), dtype=complex)
        for k, x in enumerate(letters):
            g = abs(x) - 1
            if g >= m:
                continue
            P, S = prefix[k], suffix[k + 1]
            # d(P E_rs S)_ij = P_ir S_sj, one column per entry (r, s) of the letter's matrix
            D = np.einsum("ir,sj->ijrs", P, S).reshape(4, 4)
            Jr[:, 4 * g:4 * g + 4] += D if x > 0 else D @ _ADJ
        rows.append(Jr)
    for g, x in enumerate(X):
        res.append(x[0] * x[3] - x[1] * x[2] - 1)
        Jd = np.zeros((1, 4 * m), dtype=complex)
        Jd[0, 4 * g:4 * g + 4] = [x[3], -x[2], -x[1], x[0]]
        rows.append(Jd)
    return np.array(res, dtype=complex), np.vstack(rows)


def _levenberg_marquardt(system, z: np.ndarray, max_iter: int, target: float) -> tuple[np.ndarray, float]:
    lam = 1e-2
    f, J = system(z)
    cost = np.linalg.norm(f)
    for _ in range(max_iter):
        if cost < target:
            break
        A, g = J.conj().T @ J, J.conj().T @ f
        while True:
            zn = z + np.linalg.solve(A + lam * np.eye(len(z)), -g)
            fn, Jn = system(zn)
            cn = np.linalg.norm(fn)
            if cn < cost:
                z, f, J, cost = zn, fn, Jn, cn
                lam = max(lam / 3, 1e-12)
                break
            lam *= 4
            if lam > 1e12:
                return z, cost
    return z, cost


def slice_search(
    lp: LinPresentation,
    c: complex = 0.0,
    attempts: int = 20,
    seed: int = 0,
    max_iter: int = 200,
    tol: float = EPS_REL,
) -> list[Representation]:
    """Irreducible representations with ``tr rho(mu) = c`` found by damped Newton from random starts.

    The meridian is pinned to ``slice_meridian(c)`` and the other images are
    solved for.  Results are verified, irreducible and pairwise distinct as
    characters; the search is heuristic and makes no completeness claim.
    """
    G = knot_group(lp)
    m = 2 * lp.genus
    mu = slice_meridian(c)
    rng = np.random.default_rng(seed)
    found: list[Representation] = []
    samples: list[CharacterSample] = []
    for _ in range(attempts):
        z0 = 0.7 * (rng.normal(size=4 * m) + 1j * rng.normal(size=4 * m))
        z, cost = _levenberg_marquardt(lambda v: _slice_system(G, m, mu, v), z0, max_iter, 1e-13)
        if cost > 1e-10:
            continue
        mats = [Sl2(*(complex(x) for x in z[4 * i:4 * i + 4])) for i in range(m)]
        mats = [A * (1 / cmath.sqrt(A.det())) for A in mats]
        rep = Representation(G, tuple(mats) + (mu,))
        if rep.relation_residual > tol or not is_irreducible(rep):
            continue
        s = character_sample(rep)
        if any(s.close_to(t, 1e-6) for t in samples):
            continue
        found.append(rep)
        samples.append(s)
    return found


@dataclass(frozen=True)
class TwoToOneWitness:
    """Compares rho with iota(rho): their characters and their lifts to the double cover."""

    metabelian: bool
    character_gap: float
    lift_gap: float

    @property
    def fixed_point(self) -> bool:
        return self.character_gap <= EPS_LINE


def two_to_one_probe(rep: Representation, tol: float = EPS_REL) -> TwoToOneWitness:
    """rho and iota(rho) always lift to the same double-cover representation; off the
    metabelian locus their characters differ, so the lift is 2:1 there."""
    other = involution_iota(rep)
    gap = character_sample(rep).distance(character_sample(other))
    a, b = phi_n(rep, 2, 1, tol), phi_n(other, 2, 1, tol)
    lift_gap = max((dist(x, y) for x, y in zip(a.images, b.images)), default=0.0)
    return TwoToOneWitness(is_metabelian(rep), gap, lift_gap)
