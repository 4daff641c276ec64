"""Normal forms of ``n = 2`` triples on every stratum of the base plane.

Regular real strata diagonalize ``A`` (increasing eigenvalues) and rescale
so that ``|b_i| = |c_i| = sqrt|mu_i^2 - 1|``.  The nonreal stratum uses a
rotation-dilation ``A`` with ``B = diag(1, -1)``.  Over the branch locus the
representative is the closed-orbit (GIT) representative, which may lie only
in the closure of the input's orbit; ``realizing`` is then ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .base_plane import (
    GAMMA_1,
    GAMMA_D,
    GAMMA_M1,
    L,
    Stratum,
    base_from_triple,
    classify_base,
    real_eigenvalues,
)
from .matcore import DEFAULT_TOL, max_norm
from .signatures import Sign, eigvec_2x2
from .wonenburger import WonenburgerTriple, assemble, gl_action, validate_triple


@dataclass(frozen=True, eq=False)
class NormalForm:
    stratum: Stratum
    params: tuple
    signs: tuple
    representative: WonenburgerTriple
    realizing: np.ndarray | None

    @property
    def matrix(self) -> np.ndarray:
        return assemble(self.representative)

    def to_dict(self) -> dict:
        return {
            "stratum": str(self.stratum),
            "params": list(self.params),
            "signs": [str(s) for s in self.signs],
            "representative": self.representative.to_dict(),
            "realizing": None if self.realizing is None else self.realizing.tolist(),
        }


def _orient(v):
    # fix the sign of a vector so its largest entry is positive
    return v if v[np.argmax(np.abs(v))] > 0 else -v


def _sgn(x) -> Sign:
    return Sign.POSITIVE if x > 0 else Sign.NEGATIVE


def _angle(mu: float) -> float:
    """``theta`` with ``mu = cos theta`` (elliptic) or ``|mu| = cosh theta``."""
    if abs(mu) < 1.0:
        return math.acos(mu)
    return math.acosh(abs(mu))


def _diag_triple(mus, bs, cs) -> WonenburgerTriple:
    return WonenburgerTriple(np.diag(mus), np.diag(bs), np.diag(cs))


def _realizes(R, t, rep, atol=1e-6) -> np.ndarray | None:
    if R is None:
        return None
    img = gl_action(R, t)
    return R if img.allclose(rep, atol * max(1.0, max_norm(rep.A, rep.B, rep.C))) else None


def _eigenbasis(t: WonenburgerTriple, mus):
    """``R0`` with ``R0 A R0^-1 = diag(mus)`` and the transformed diagonals of B, C."""
    P = np.column_stack([_orient(eigvec_2x2(t.A, mu)) for mu in mus])
    R0 = np.linalg.inv(P)
    b = np.diag(R0 @ t.B @ R0.T)
    c = np.diag(P.T @ t.C @ P)
    return R0, b, c


def _regular(t, stratum, mus):
    R0, b, c = _eigenbasis(t, mus)
    k = [math.sqrt(abs(mu * mu - 1.0)) for mu in mus]
    signs = tuple(_sgn(x) for x in b)
    hyp = [1.0 if abs(mu) > 1 else -1.0 for mu in mus]
    bs = [float(s.value + "1") * ki for s, ki in zip(signs, k)]
    cs = [h * bi for h, bi in zip(hyp, bs)]
    rep = _diag_triple(mus, bs, cs)
    D = np.diag(np.abs(c / b) ** 0.25)
    return NormalForm(stratum, tuple(_angle(mu) for mu in mus), signs, rep, _realizes(D @ R0, t, rep))


def _parabolic_wall(t, stratum, mus, eps):
    R0, b, c = _eigenbasis(t, mus)
    j = int(np.argmin([abs(mu - eps) for mu in mus]))
    o = 1 - j
    mus = list(mus)
    mus[j] = eps
    mu = mus[o]
    k = math.sqrt(abs(mu * mu - 1.0))
    s = _sgn(b[o])
    bs, cs = [0.0, 0.0], [0.0, 0.0]
    bs[o] = float(s.value + "1") * k
    cs[o] = bs[o] * (1.0 if abs(mu) > 1 else -1.0)
    rep = _diag_triple(mus, bs, cs)
    signs = [Sign.ZERO, Sign.ZERO]
    signs[o] = s
    d = np.ones(2)
    d[o] = abs(c[o] / b[o]) ** 0.25
    return NormalForm(stratum, (_angle(mu),), tuple(signs), rep, _realizes(np.diag(d) @ R0, t, rep))


def _double(t, stratum, mu, tol):
    k = math.sqrt(abs(mu * mu - 1.0))
    w, V = np.linalg.eigh(0.5 * (t.B + t.B.T))
    order = np.argsort(-w, kind="stable")
    Q = np.array([_orient(V[:, i]) for i in order])
    signs = tuple(_sgn(w[i]) for i in order)
    bs = [float(s.value + "1") * k for s in signs]
    cs = [bi * (1.0 if abs(mu) > 1 else -1.0) for bi in bs]
    rep = _diag_triple([mu, mu], bs, cs)
    R = None
    if max_norm(t.A - mu * np.eye(2)) <= 1e3 * math.sqrt(tol) * max(1.0, max_norm(t.A)):
        b = np.diag(Q @ t.B @ Q.T)
        c = np.diag(Q @ t.C @ Q.T)
        R = np.diag(np.abs(c / b) ** 0.25) @ Q
    return NormalForm(stratum, (_angle(mu),), signs, rep, _realizes(R, t, rep))


def _nonreal(t, stratum):
    A = t.A
    tau = A[0, 0] + A[1, 1]
    delta = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    re = 0.5 * tau
    im = math.sqrt(max(delta - re * re, 0.0))
    mu = complex(re, im)
    v1 = np.array([A[0, 1], mu - A[0, 0]])
    v2 = np.array([mu - A[1, 1], A[1, 0]])
    v = v1 if np.vdot(v1, v1).real >= np.vdot(v2, v2).real else v2
    # A [x, -y] = [x, -y] [[re, -im], [im, re]]
    P = np.column_stack([v.real, -v.imag])
    R0 = np.linalg.inv(P)
    Bp = R0 @ t.B @ R0.T
    p, q = 0.5 * (Bp[0, 0] - Bp[1, 1]), 0.5 * (Bp[0, 1] + Bp[1, 0])
    rho = math.hypot(p, q)
    phi = 0.5 * math.atan2(q, p)
    # rotation taking the +rho eigenline of Bp to the first axis
    Q = np.array([[math.cos(phi), math.sin(phi)], [-math.sin(phi), math.cos(phi)]])
    R = Q @ R0 / math.sqrt(rho)
    if R[0, 0] + R[1, 1] < 0:
        R = -R
    r, theta = math.sqrt(delta), math.atan2(im, re)
    Ar = np.array([[re, -im], [im, re]])
    Bn = np.diag([1.0, -1.0])
    rep = WonenburgerTriple(Ar, Bn, Bn @ (Ar @ Ar - np.eye(2)))
    return NormalForm(stratum, (r, theta), (), rep, _realizes(R, t, rep))


_SINGULAR_A = {
    L.P_2_1: np.diag([1.0, 1.0]),
    L.P_M2_1: np.diag([-1.0, -1.0]),
    L.P_0_M1: np.diag([1.0, -1.0]),
}


def _singular(t, stratum):
    A0 = _SINGULAR_A[stratum.label]
    rep = WonenburgerTriple(A0, np.zeros((2, 2)), np.zeros((2, 2)))
    R = np.eye(2)
    if stratum.label is L.P_0_M1:
        P = np.column_stack([_orient(eigvec_2x2(t.A, 1.0)), _orient(eigvec_2x2(t.A, -1.0))])
        R = np.linalg.inv(P)
    return NormalForm(stratum, (), (), rep, _realizes(R, t, rep))


def normal_form(t: WonenburgerTriple, tol: float = DEFAULT_TOL) -> NormalForm:
    """Representative of the GIT class of ``t`` with its parameters and sign pattern."""
    t = validate_triple(t.A, t.B, t.C, tol)
    p = base_from_triple(t)
    stratum = classify_base(p, tol)
    label = stratum.label
    if label is L.N:
        return _nonreal(t, stratum)
    if label in _SINGULAR_A:
        return _singular(t, stratum)
    if label in GAMMA_D:
        return _double(t, stratum, 0.5 * p.tau, tol)
    mus = real_eigenvalues(p.tau, p.delta)
    if label in GAMMA_1:
        return _parabolic_wall(t, stratum, mus, 1.0)
    if label in GAMMA_M1:
        return _parabolic_wall(t, stratum, mus, -1.0)
    return _regular(t, stratum, mus)
