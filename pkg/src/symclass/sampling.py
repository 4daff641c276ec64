"""Random valid triples over a prescribed stratum.

Each sample is a normal-form seed with random parameters and signs, moved by
a random ``GL_2`` element whose condition number is at most 100.  Seeds over
the branch locus include the non-closed orbits (Jordan-type ``A``, or
``b`` nonzero with ``c`` zero over the ``+-1`` eigenline).
"""

from __future__ import annotations

import math

import numpy as np

from .base_plane import GAMMA_1, GAMMA_D, L, StratumLabel
from .wonenburger import WonenburgerTriple, gl_action

_ELL = (-0.95, 0.95)
_POS = (1.05, 3.0)
_NEG = (-3.0, -1.05)

_REGION_RANGES = {
    L.E2: (_ELL, _ELL),
    L.EH_PLUS: (_ELL, _POS),
    L.EH_MINUS: (_NEG, _ELL),
    L.H_PP: (_POS, _POS),
    L.H_MP: (_NEG, _POS),
    L.H_MM: (_NEG, _NEG),
}

# range of the eigenvalue other than +-1 on each parabolic arc
_WALL_OTHER = {
    L.G1_1: _NEG, L.G1_2: _ELL, L.G1_3: _POS,
    L.GM1_1: _NEG, L.GM1_2: _ELL, L.GM1_3: _POS,
}

_GD_RANGE = {L.GD1: _NEG, L.GD2: _ELL, L.GD3: _POS}


def random_R(rng, max_cond: float = 100.0) -> np.ndarray:
    """``U diag(s) V^T`` with random orthogonal ``U, V`` and ``s_max/s_min <= max_cond``."""
    U, _ = np.linalg.qr(rng.standard_normal((2, 2)))
    V, _ = np.linalg.qr(rng.standard_normal((2, 2)))
    half = 0.5 * math.log10(max_cond)
    s = 10.0 ** rng.uniform(-half, half, size=2)
    return U @ np.diag(s) @ V.T


def _rand_sign(rng) -> float:
    return 1.0 if rng.random() < 0.5 else -1.0


def diagonal_seed(mus, signs) -> WonenburgerTriple:
    """Normal-form triple with ``A = diag(mus)`` and ``sign(b_i) = signs[i]``."""
    k = [math.sqrt(abs(m * m - 1.0)) for m in mus]
    bs = [s * ki for s, ki in zip(signs, k)]
    cs = [b * (1.0 if abs(m) > 1 else -1.0) for b, m in zip(bs, mus)]
    return WonenburgerTriple(np.diag(mus), np.diag(bs), np.diag(cs))


def nonreal_seed(r: float, theta: float) -> WonenburgerTriple:
    A = r * np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    B = np.diag([1.0, -1.0])
    return WonenburgerTriple(A, B, B @ (A @ A - np.eye(2)))


def jordan_seed(mu: float, b1: float, b2: float) -> WonenburgerTriple:
    """Jordan-type ``A = [[mu, 1], [0, mu]]`` with ``|mu| != 1`` and ``b1 != 0``."""
    c1 = (mu * mu - 1.0) / b1
    c2 = (2.0 * mu - b2 * c1) / b1
    return WonenburgerTriple(
        np.array([[mu, 1.0], [0.0, mu]]),
        np.array([[b2, b1], [b1, 0.0]]),
        np.array([[0.0, c1], [c1, c2]]),
    )


def _distinct(rng, r1, r2, gap=0.05):
    while True:
        a, b = rng.uniform(*r1), rng.uniform(*r2)
        if abs(a - b) > gap:
            return sorted((a, b))


def _mag(rng) -> float:
    return 10.0 ** rng.uniform(-0.5, 0.5)


def _singular_seed(label, rng) -> WonenburgerTriple:
    z = np.zeros((2, 2))
    if label is L.P_0_M1:
        bs, cs = [0.0, 0.0], [0.0, 0.0]
        for i in range(2):
            pick = rng.integers(3)
            if pick == 1:
                bs[i] = _rand_sign(rng) * _mag(rng)
            elif pick == 2:
                cs[i] = _rand_sign(rng) * _mag(rng)
        return WonenburgerTriple(np.diag([1.0, -1.0]), np.diag(bs), np.diag(cs))
    eps = 1.0 if label is L.P_2_1 else -1.0
    kind = rng.integers(4)
    if kind == 0:
        t = WonenburgerTriple(np.eye(2), z, z)
    elif kind == 1:
        # B C = 0 through complementary supports
        t = WonenburgerTriple(np.eye(2), np.diag([_rand_sign(rng) * _mag(rng), 0.0]),
                              np.diag([0.0, _rand_sign(rng) * _mag(rng)]))
    elif kind == 2:
        S = rng.standard_normal((2, 2))
        t = WonenburgerTriple(np.eye(2), z, S + S.T)
    else:
        # Jordan type with b1 = 0 and b2 c1 = 2
        b2 = _rand_sign(rng) * _mag(rng)
        t = WonenburgerTriple(np.array([[1.0, 1.0], [0.0, 1.0]]), np.array([[b2, 0.0], [0.0, 0.0]]),
                              np.array([[0.0, 2.0 / b2], [2.0 / b2, rng.standard_normal()]]))
    if eps < 0:
        # (-A, B, C) satisfies the same equations
        t = WonenburgerTriple(-t.A, t.B, t.C)
    return t


def seed_triple(stratum, rng, signs=None, jordan=None) -> WonenburgerTriple:
    """Untransformed seed over ``stratum`` (see :func:`random_triple`)."""
    label = StratumLabel(getattr(stratum, "label", stratum))
    if label in _REGION_RANGES:
        mus = _distinct(rng, *_REGION_RANGES[label])
        signs = signs or (_rand_sign(rng), _rand_sign(rng))
        return diagonal_seed(mus, signs)
    if label is L.N:
        return nonreal_seed(rng.uniform(0.3, 2.0), rng.uniform(0.1, math.pi - 0.1))
    if label in GAMMA_D:
        mu = rng.uniform(*_GD_RANGE[label])
        if jordan is None:
            jordan = rng.random() < 0.25
        if jordan:
            return jordan_seed(mu, _rand_sign(rng) * _mag(rng), rng.standard_normal())
        if signs is None:
            signs = [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)][rng.integers(3)]
        return diagonal_seed([mu, mu], signs)
    if label in _WALL_OTHER:
        eps = 1.0 if label in GAMMA_1 else -1.0
        mu = rng.uniform(*_WALL_OTHER[label])
        k = math.sqrt(abs(mu * mu - 1.0))
        s = (signs or (_rand_sign(rng),))[0]
        b_o = s * k
        c_o = b_o * (1.0 if abs(mu) > 1 else -1.0)
        pick = rng.integers(3)
        b_e = _rand_sign(rng) * _mag(rng) if pick == 1 else 0.0
        c_e = _rand_sign(rng) * _mag(rng) if pick == 2 else 0.0
        return WonenburgerTriple(np.diag([eps, mu]), np.diag([b_e, b_o]), np.diag([c_e, c_o]))
    return _singular_seed(label, rng)


def random_triple(stratum, rng=None, signs=None, jordan=None, max_cond: float = 100.0) -> WonenburgerTriple:
    """A random valid triple whose base point lies on ``stratum``.

    ``signs`` fixes the B-signs of the seed (two entries for regions and
    double walls, one for the elliptic or hyperbolic eigenvalue on the
    ``+-1`` arcs).  ``jordan`` forces or forbids a Jordan-type ``A`` over
    the double walls.
    """
    rng = np.random.default_rng(rng)
    seed = seed_triple(stratum, rng, signs, jordan)
    return gl_action(random_R(rng, max_cond), seed)
