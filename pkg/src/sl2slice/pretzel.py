"""Brieskorn groups, their SL2(C) representations and the deck involution.

The double branched cover of the (p, q, r) pretzel knot is the Brieskorn
manifold with fundamental group

    <s1, s2, s3, h | s1^p h, s2^q h, s3^r h, [s_i, h], s1 s2 s3>.

In the generators ``t1 = s1``, ``t2 = s1 s2`` the covering involution inverts
t1 and t2 and fixes h.  Representations are built in the normal form
``t1 -> diag(a, 1/a)``, ``t2 -> [[s, t], [-t, v]]`` where conjugation by
``k = [[0, i], [i, 0]]`` realizes the involution.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import asdict, dataclass, field
from math import gcd

from .errors import ComputationError, ParameterError
from .presentation import Presentation
from .reps import Representation, character_sample, is_irreducible, tau_equivariance, equivariance_residual
from .sl2 import ONE, QUAT_K, EPS_REL, Sl2, Word

S1, S2, S3, H = (Word((i,)) for i in range(1, 5))


class NonEquivariantError(ComputationError):
    """No matrix intertwines a representation with its pull-back by the involution."""


def _comm(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


def tau2_images() -> tuple[Word, ...]:
    return (
        S1.inverse(),
        S1 * S2.inverse() * S1.inverse(),
        S1 * S2 * S3.inverse() * S2.inverse() * S1.inverse(),
        H,
    )


@dataclass(frozen=True)
class BrieskornGroup:
    p: int
    q: int
    r: int
    presentation: Presentation = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p, q, r = self.p, self.q, self.r
        if any(int(x) != x or x < 2 for x in (p, q, r)):
            raise ParameterError(f"p, q, r must be integers >= 2, got {(p, q, r)}")
        if gcd(p, q) != 1 or gcd(q, r) != 1 or gcd(p, r) != 1:
            raise ParameterError(f"p, q, r must be pairwise coprime, got {(p, q, r)}")
        rels = (
            S1**p * H,
            S2**q * H,
            S3**r * H,
            _comm(S1, H),
            _comm(S2, H),
            _comm(S3, H),
            S1 * S2 * S3,
        )
        pres = Presentation(("s1", "s2", "s3", "h"), rels, deck=tau2_images(), cover=2, name=f"Sigma({p},{q},{r})")
        object.__setattr__(self, "presentation", pres)


def tau2_action(w: Word) -> Word:
    """Substitute the involution's image for each letter of a word in s1, s2, s3, h."""
    return w.substitute(tau2_images())


@dataclass(frozen=True)
class RepParams:
    """``rho(h) = epsilon``; m1, m2, m3 pick the eigenvalue of s1 and the traces of s2, s3."""

    epsilon: int
    m1: int
    m2: int
    m3: int

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ParameterError("epsilon must be +1 or -1")

    @property
    def delta(self) -> int:
        return 1 if self.epsilon == -1 else 0

    def values(self, G: BrieskornGroup) -> tuple[complex, float, float]:
        """``(a, beta, gamma)`` with ``a^p = epsilon`` and the target traces of s2 and s3."""
        d = self.delta
        a = cmath.exp(1j * math.pi * (2 * self.m1 + d) / G.p)
        beta = 2 * math.cos(math.pi * (2 * self.m2 + d) / G.q)
        gamma = 2 * math.cos(math.pi * (2 * self.m3 + d) / G.r)
        return a, beta, gamma

    def guards_hold(self, G: BrieskornGroup, tol: float = 1e-9) -> bool:
        a, beta, gamma = self.values(G)
        return abs(a - 1) > tol and abs(a + 1) > tol and abs(abs(beta) - 2) > tol and abs(abs(gamma) - 2) > tol


def build_rep(G: BrieskornGroup, params: RepParams, require_irreducible: bool = True, tol: float = EPS_REL) -> Representation:
    a, beta, gamma = params.values(G)
    if abs(a - 1 / a) < 1e-12:
        raise ParameterError(f"a = {a:.6g} equals its inverse; the trace system is singular")
    if not params.guards_hold(G):
        raise ParameterError(f"{params} violates the a != +-1, traces != +-2 guards")
    # s + v = gamma, s/a + a v = beta
    s = (a * gamma - beta) / (a - 1 / a)
    v = gamma - s
    t = cmath.sqrt(1 - s * v)
    if abs(t) < 1e-12 and require_irreducible:
        raise ParameterError(f"{params} gives a reducible representation (1 - s v = 0)")
    T1 = Sl2.diag(a)
    T2 = Sl2(s, t, -t, v)
    images = (T1, T1.inv() @ T2, T2.inv(), params.epsilon * ONE)
    rep = Representation(G.presentation, images)
    if rep.relation_residual > tol:
        raise ParameterError(f"{params} is inadmissible: relator residual {rep.relation_residual:.3g}")
    return rep


def _normal_form_conjugator(rep: Representation) -> Sl2 | None:
    """G with ``G rho G^-1`` in the normal form, or None if rho(t1), rho(t2) do not allow it."""
    A = rep.images[0]
    tr = A.trace()
    disc = cmath.sqrt(tr * tr - 4)
    if abs(disc) < 1e-9:
        return None
    lam1, lam2 = (tr + disc) / 2, (tr - disc) / 2
    cols = []
    for lam in (lam1, lam2):
        v1, v2 = (A.b, lam - A.a), (lam - A.d, A.c)
        v = v1 if abs(v1[0]) + abs(v1[1]) >= abs(v2[0]) + abs(v2[1]) else v2
        cols.append(v)
    P = Sl2(cols[0][0], cols[1][0], cols[0][1], cols[1][1])
    if abs(P.det()) < 1e-12:
        return None
    P = P * (1 / cmath.sqrt(P.det()))
    T2 = P.inv() @ rep.images[0] @ rep.images[1] @ P
    if abs(T2.b) < 1e-12 or abs(T2.c) < 1e-12:
        return None
    g = cmath.sqrt(cmath.sqrt(-T2.c / T2.b))
    D = Sl2.diag(g)
    return D @ P.inv()


def equivariance_certificate(rep: Representation, tol: float = 1e-9) -> Sl2:
    """C with ``rho(tau2 g) = C rho(g) C^-1`` for every generator g.

    Tries ``k`` directly, then ``G^-1 k G`` for the conjugator G to normal
    form, then the identity for central images, then the generic solver.
    """
    cands = [QUAT_K]
    G = _normal_form_conjugator(rep)
    if G is not None:
        cands.append(G.inv() @ QUAT_K @ G)
    cands.append(ONE)
    for C in cands:
        if equivariance_residual(rep, C) <= tol:
            return C
    C = tau_equivariance(rep, tol)
    if C is None:
        raise NonEquivariantError("no intertwiner with the involution's pull-back exists")
    return C


@dataclass
class ParamRecord:
    epsilon: int
    m1: int
    m2: int
    m3: int
    status: str
    residual: float | None = None
    irreducible: bool | None = None
    certified: bool | None = None
    certificate_residual: float | None = None


@dataclass
class SurjectivityReport:
    p: int
    q: int
    r: int
    records: list[ParamRecord]
    distinct_characters: int

    @property
    def built(self) -> list[ParamRecord]:
        return [x for x in self.records if x.status == "built"]

    @property
    def irreducible(self) -> list[ParamRecord]:
        return [x for x in self.built if x.irreducible]

    @property
    def all_verified(self) -> bool:
        return all(x.residual is not None and x.residual <= EPS_REL for x in self.built)

    @property
    def all_certified(self) -> bool:
        return all(x.certified for x in self.irreducible)

    @property
    def ok(self) -> bool:
        return bool(self.built) and self.all_verified and self.all_certified

    def summary(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "parameters": len(self.records),
            "admissible": len(self.built),
            "irreducible": len(self.irreducible),
            "certified": sum(1 for x in self.irreducible if x.certified),
            "distinct_characters": self.distinct_characters,
            "all_verified": self.all_verified,
            "all_irreducible_equivariant": self.all_certified,
        }

    def to_json(self) -> str:
        return json.dumps({"summary": self.summary(), "records": [asdict(x) for x in self.records]}, indent=2)

    def table(self) -> str:
        lines = [f"{'eps':>4} {'m1':>3} {'m2':>3} {'m3':>3}  {'status':<8} {'residual':>10}  irr  equiv"]
        for x in self.records:
            if x.status != "built":
                lines.append(f"{x.epsilon:>4} {x.m1:>3} {x.m2:>3} {x.m3:>3}  {x.status:<8}")
                continue
            lines.append(
                f"{x.epsilon:>4} {x.m1:>3} {x.m2:>3} {x.m3:>3}  {x.status:<8} {x.residual:>10.3e}"
                f"  {'yes' if x.irreducible else 'no ':<4} {'yes' if x.certified else 'no'}"
            )
        return "\n".join(lines)


def all_params(G: BrieskornGroup):
    for eps in (1, -1):
        for m1 in range(G.p):
            for m2 in range(G.q):
                for m3 in range(G.r):
                    yield RepParams(eps, m1, m2, m3)


def surjectivity_report(p: int, q: int, r: int, tol: float = 1e-9) -> SurjectivityReport:
    """Sweep every parameter tuple and certify equivariance of each irreducible representation."""
    G = BrieskornGroup(p, q, r)
    records = []
    samples = []
    for prm in all_params(G):
        rec = ParamRecord(prm.epsilon, prm.m1, prm.m2, prm.m3, "guard")
        if prm.guards_hold(G):
            try:
                rep = build_rep(G, prm, require_irreducible=False)
            except ParameterError:
                rec.status = "rejected"
            else:
                rec.status = "built"
                rec.residual = rep.relation_residual
                rec.irreducible = is_irreducible(rep)
                if rec.irreducible:
                    samples.append(character_sample(rep))
                try:
                    C = equivariance_certificate(rep, tol)
                    rec.certified = True
                    rec.certificate_residual = equivariance_residual(rep, C)
                except NonEquivariantError:
                    rec.certified = False
        records.append(rec)
    distinct: list = []
    for s in samples:
        if not any(s.close_to(d, 1e-6) for d in distinct):
            distinct.append(s)
    return SurjectivityReport(p, q, r, records, len(distinct))
