"""B-signatures, Krein signatures, stability verdicts and Floquet monodromies.

Two independent routes to the sign of an elliptic eigenvalue live here:

* :func:`krein_signature` restricts the Hermitian form ``G(x, y) = <-iJx, y>``
  to a generalized eigenspace of the assembled matrix;
* :func:`krein_from_btype` reads the sign of the scalar by which ``B`` acts on
  the corresponding eigenline of ``A``.

They agree on every elliptic eigenvalue ``lambda = mu + i sqrt(1 - mu^2)``
(positive imaginary part), the conjugate carrying the opposite sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .base_plane import GAMMA_D, L, classify_base, base_from_triple
from .errors import (
    ComplexEigenvalues,
    NonConvergence,
    NonDiagonalizable,
    NonSymmetricA,
    NotAnEigenvalue,
    NotOnUnitCircle,
    NotSymplectic,
    OddDimension,
    UnsupportedDimension,
)
from .matcore import (
    DEFAULT_TOL,
    eigs,
    max_norm,
    rank_tolerance,
    standard_J,
    symplectic_check,
    symplectic_residual,
    threshold,
)
from .wonenburger import WonenburgerTriple, assemble, trace_det


class Sign(str, Enum):
    POSITIVE = "+"
    NEGATIVE = "-"
    ZERO = "0"

    def __str__(self):
        return self.value

    @property
    def flipped(self) -> "Sign":
        return {Sign.POSITIVE: Sign.NEGATIVE, Sign.NEGATIVE: Sign.POSITIVE}.get(self, self)


def _sign(x: float, zero_band: float) -> Sign:
    if abs(x) <= zero_band:
        return Sign.ZERO
    return Sign.POSITIVE if x > 0 else Sign.NEGATIVE


# ---------------------------------------------------------------------------
# B-signature


def eigvec_2x2(A: np.ndarray, mu: float) -> np.ndarray:
    """Unit eigenvector of a real 2x2 matrix for a real eigenvalue ``mu``."""
    a, b = A[0]
    c, d = A[1]
    v1 = np.array([b, mu - a])
    v2 = np.array([mu - d, c])
    v = v1 if np.dot(v1, v1) >= np.dot(v2, v2) else v2
    nv = math.hypot(v[0], v[1])
    if nv == 0.0:
        # A = mu I: every direction is an eigenvector
        return np.array([1.0, 0.0])
    return v / nv


def sym_eigvals_2x2(S: np.ndarray) -> tuple[float, float]:
    a, b, d = S[0, 0], 0.5 * (S[0, 1] + S[1, 0]), S[1, 1]
    m, r = 0.5 * (a + d), math.hypot(0.5 * (a - d), b)
    return m - r, m + r


def distinct_real_spectrum(t: WonenburgerTriple) -> bool:
    return classify_base(base_from_triple(t)).label not in GAMMA_D + (L.N, L.P_2_1, L.P_M2_1)


def b_values(t: WonenburgerTriple) -> list[tuple[float, float]]:
    """``(mu, b_mu)`` for the distinct real eigenvalues of ``A``, increasing in ``mu``.

    ``b_mu = w^T B w`` for a unit left eigenvector ``w`` of ``A``: in an
    eigenbasis of ``A`` this is the diagonal entry of ``B``, so its sign is
    basis independent.
    """
    if t.n == 1:
        return [(float(t.A[0, 0]), float(t.B[0, 0]))]
    tau, delta = trace_det(t)
    disc = 0.25 * tau * tau - delta
    if disc < 0:
        raise ComplexEigenvalues("A has no real eigenvalues")
    from .base_plane import real_eigenvalues

    out = []
    for mu in real_eigenvalues(tau, delta):
        w = eigvec_2x2(t.A.T, mu)
        out.append((mu, float(w @ t.B @ w)))
    return out


def b_signature(t: WonenburgerTriple, tol: float = DEFAULT_TOL) -> tuple[Sign, ...]:
    """B-type of each real eigenvalue of ``A`` ordered by increasing ``mu``.

    Over the double-eigenvalue walls the answer is the signature of the form
    ``B`` itself, reported positive entries first (so a mixed form reads
    ``(+, -)``).  A sign is ``ZERO`` when ``|b_mu| <= tol * max|B|``.
    """
    zero = threshold(tol, max_norm(t.B))
    if t.n == 1:
        return (_sign(float(t.B[0, 0]), zero),)
    p = base_from_triple(t)
    label = classify_base(p, tol).label
    if label == L.N:
        raise ComplexEigenvalues("A has a pair of nonreal eigenvalues")
    if label in GAMMA_D + (L.P_2_1, L.P_M2_1):
        mu = 0.5 * p.tau
        if max_norm(t.A - mu * np.eye(2)) > rank_tolerance(t.A, tol):
            raise NonDiagonalizable("A is a Jordan block; take the GIT representative first")
        lo, hi = sym_eigvals_2x2(t.B)
        return tuple(sorted((_sign(hi, zero), _sign(lo, zero)), key=_SIGN_ORDER.index))
    return tuple(_sign(b, zero) for _, b in b_values(t))


_SIGN_ORDER = [Sign.POSITIVE, Sign.ZERO, Sign.NEGATIVE]


# ---------------------------------------------------------------------------
# Krein signature


def _match_eigenvalue(M: np.ndarray, lam: complex, tol: float):
    spectrum = eigs(M, tol)
    best = min(spectrum, key=lambda e: abs(e.value - lam))
    if abs(best.value - lam) > 1e3 * math.sqrt(tol) * max(1.0, abs(lam)):
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue (closest {best.value})")
    return best


def krein_gram(M, lam: complex, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Gram matrix of ``G = <-iJ., .>`` on the generalized eigenspace of ``lam``.

    The eigenspace is spanned by the ``m`` right singular vectors of
    ``(M - lam I)^m`` with smallest singular values, ``m`` the algebraic
    multiplicity.
    """
    M = np.asarray(M, dtype=float)
    if M.shape[0] % 2:
        raise OddDimension("Krein forms need an even dimension")
    ev = _match_eigenvalue(M, complex(lam), tol)
    n = M.shape[0]
    N = np.linalg.matrix_power(M - ev.value * np.eye(n), ev.multiplicity)
    _, _, vh = np.linalg.svd(N)
    W = vh[n - ev.multiplicity:].conj().T
    G = -1j * standard_J(n)
    H = W.conj().T @ G @ W
    return 0.5 * (H + H.conj().T)


def krein_signature(M, lam: complex, tol: float = DEFAULT_TOL) -> tuple[int, int]:
    """Signature ``(p, q)`` of the Krein form on the eigenspace of a unit eigenvalue."""
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e3 * math.sqrt(tol):
        raise NotOnUnitCircle(f"|{lam}| != 1")
    H = krein_gram(M, lam, tol)
    w = np.linalg.eigvalsh(H)
    band = threshold(tol, max(1.0, float(np.max(np.abs(w)))))
    return int(np.sum(w > band)), int(np.sum(w < -band))


def is_krein_definite(sig: tuple[int, int]) -> bool:
    p, q = sig
    return p == 0 or q == 0


def krein_from_btype(t: WonenburgerTriple, tol: float = DEFAULT_TOL) -> list[tuple[complex, tuple[int, int]]]:
    """Krein types of the elliptic eigenvalues read off from B-types.

    For each elliptic ``mu`` the eigenvalue ``mu + i sqrt(1 - mu^2)`` has the
    B-sign of ``mu``; its conjugate gets the swapped signature.  Over the
    elliptic double wall the signature of ``B`` is used.
    """
    signs = b_signature(t, tol)
    if t.n == 2 and classify_base(base_from_triple(t), tol).label in GAMMA_D:
        mu = 0.5 * trace_det(t)[0]
        if not -1.0 < mu < 1.0:
            return []
        lam = complex(mu, math.sqrt(1.0 - mu * mu))
        pq = (signs.count(Sign.POSITIVE), signs.count(Sign.NEGATIVE))
        return [(lam, pq), (lam.conjugate(), pq[::-1])]
    mus = [float(t.A[0, 0])] if t.n == 1 else [mu for mu, _ in b_values(t)]
    out = []
    for mu, s in zip(mus, signs):
        if abs(mu) >= 1.0 or s is Sign.ZERO:
            continue
        lam = complex(mu, math.sqrt(1.0 - mu * mu))
        pq = (1, 0) if s is Sign.POSITIVE else (0, 1)
        out.append((lam, pq))
        out.append((lam.conjugate(), pq[::-1]))
    return out


# ---------------------------------------------------------------------------
# stability


class Stability(str, Enum):
    UNSTABLE = "unstable"
    STABLE = "stable-not-strong"
    STRONGLY_STABLE = "strongly-stable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class StabilityVerdict:
    status: Stability
    witness: complex | None = None
    reason: str = ""

    @property
    def stable(self) -> bool:
        return self.status is not Stability.UNSTABLE

    @property
    def strongly_stable(self) -> bool:
        return self.status is Stability.STRONGLY_STABLE


def stability_check(M, tol: float = DEFAULT_TOL) -> StabilityVerdict:
    """Linear stability of a symplectic matrix, and strong stability via Krein.

    Unstable when an eigenvalue leaves the unit circle or a unit eigenvalue
    is not semi-simple.  A stable matrix is strongly stable iff every
    eigenvalue is Krein-definite; ``+-1`` never are.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] not in (2, 4):
        raise UnsupportedDimension(f"expected a 2x2 or 4x4 matrix, got {M.shape}")
    if not symplectic_check(M, tol):
        raise NotSymplectic(f"M^T J M - J residual {symplectic_residual(M):.3g}")
    spectrum = eigs(M, tol)
    for ev in spectrum:
        if abs(abs(ev.value) - 1.0) > threshold(tol, 1.0):
            return StabilityVerdict(Stability.UNSTABLE, ev.value, "eigenvalue off the unit circle")
    for ev in spectrum:
        if not ev.semisimple:
            return StabilityVerdict(Stability.UNSTABLE, ev.value, "unit eigenvalue is not semi-simple")
    for ev in spectrum:
        if abs(ev.value.imag) <= threshold(tol, 1.0):
            return StabilityVerdict(Stability.STABLE, ev.value, "+-1 is Krein-indefinite")
        if ev.multiplicity > 1 and not is_krein_definite(krein_signature(M, ev.value, tol)):
            return StabilityVerdict(Stability.STABLE, ev.value, "Krein-indefinite eigenvalue")
    return StabilityVerdict(Stability.STRONGLY_STABLE)


def random_symplectic_perturbation(M, size: float, rng, direction=None) -> np.ndarray:
    """``M exp(size J S)`` for a random (or given) symmetric ``S`` of unit max-norm."""
    from .matcore import mat_exp

    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if direction is None:
        S = rng.standard_normal((n, n))
        S = S + S.T
    else:
        S = np.asarray(direction, dtype=float)
        S = S + S.T
    S = S / max_norm(S)
    return M @ mat_exp(size * standard_J(n) @ S)


def find_destabilizing_perturbation(M, size: float = 1e-3, rng=None, trials: int = 2000,
                                    tol: float = DEFAULT_TOL):
    """Search for a symplectic perturbation of max-norm scale ``size`` that is unstable.

    Candidates are first drawn from symmetric forms supported on the real
    invariant subspace of the Krein-indefinite eigenvalue, then from the
    whole space.  Returns the perturbed matrix, or ``None`` if none found.
    """
    rng = np.random.default_rng(rng)
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    verdict = stability_check(M, tol)
    P = None
    if verdict.witness is not None:
        lam = verdict.witness
        ev = _match_eigenvalue(M, lam, tol)
        N = np.linalg.matrix_power(M - ev.value * np.eye(n), ev.multiplicity)
        _, _, vh = np.linalg.svd(N)
        W = vh[n - ev.multiplicity:].conj().T
        V = np.hstack([W.real, W.imag])
        u, s, _ = np.linalg.svd(V, full_matrices=False)
        basis = u[:, s > 1e-8 * s[0]]
        P = basis @ basis.T
    for k in range(trials):
        K = rng.standard_normal((n, n))
        direction = P @ K @ P if (P is not None and k < trials // 2) else K
        if max_norm(direction + direction.T) == 0.0:
            continue
        cand = random_symplectic_perturbation(M, size, rng, direction)
        if not stability_check(cand, tol).stable:
            return cand
    return None


# ---------------------------------------------------------------------------
# Floquet monodromy


@dataclass(frozen=True)
class PeriodicHamiltonian:
    """``x' = J A(t) x`` with ``A(t)`` symmetric and ``T``-periodic."""

    period: float
    matrix: Callable[[float], np.ndarray]

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError("period must be positive")


def _symplectize(R: np.ndarray) -> np.ndarray:
    # one Newton step towards R^T J R = J: R (I + J E / 2), E = R^T J R - J
    J = standard_J(R.shape[0])
    E = R.T @ J @ R - J
    return R @ (np.eye(R.shape[0]) + 0.5 * J @ E)


def _rk4(h: PeriodicHamiltonian, steps: int, sym_tol: float) -> np.ndarray:
    A0 = np.asarray(h.matrix(0.0), dtype=float)
    dim = A0.shape[0]
    J = standard_J(dim)
    cache = {}

    def field(t):
        if t not in cache:
            A = np.asarray(h.matrix(t), dtype=float)
            if A.shape != (dim, dim):
                raise UnsupportedDimension(f"A(t) has shape {A.shape}, expected {(dim, dim)}")
            if max_norm(A - A.T) > threshold(sym_tol, max(1.0, max_norm(A))):
                raise NonSymmetricA(f"A({t}) is not symmetric")
            cache[t] = J @ A
        return cache[t]

    dt = h.period / steps
    R = np.eye(dim)
    for i in range(steps):
        t = i * dt
        k1 = field(t) @ R
        k2 = field(t + 0.5 * dt) @ (R + 0.5 * dt * k1)
        k3 = field(t + 0.5 * dt) @ (R + 0.5 * dt * k2)
        k4 = field(t + dt) @ (R + dt * k3)
        R = R + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return R


def floquet_monodromy(h: PeriodicHamiltonian, steps: int = 1024, tol: float = DEFAULT_TOL,
                      check_convergence: bool = True, convergence_tol: float = 1e-6) -> np.ndarray:
    """Monodromy ``R(T)`` of ``R' = J A(t) R``, ``R(0) = I``, by classical RK4.

    If the symplectic residual exceeds ``tol`` the result is corrected by
    one Newton step onto the symplectic group.  With ``check_convergence``
    the integration is repeated with half the steps and
    :class:`NonConvergence` is raised when the two results differ by
    ``convergence_tol`` or more.
    """
    if steps < 16:
        raise ValueError("need at least 16 steps")

    def run(k):
        R = _rk4(h, k, tol)
        if symplectic_residual(R) > tol:
            R = _symplectize(R)
        return R

    R = run(steps)
    if check_convergence:
        coarse = run(steps // 2)
        diff = max_norm(R - coarse)
        if diff >= convergence_tol:
            raise NonConvergence(f"halving the step count changes R(T) by {diff:.3g}")
    return R
