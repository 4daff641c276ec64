"""Wonenburger triples ``(A, B, C)`` and the block matrices they assemble to.

A triple satisfies

    B = B^T,  C = C^T,  AB = BA^T,  A^T C = CA,  A^2 - BC = I

and packages the symplectic matrix ``[[A, B], [C, A^T]]``, which is exactly a
symplectic matrix conjugated to its inverse by ``diag(I, -I)``.  ``GL_n`` acts
on triples by change of basis of the fixed Lagrangian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .errors import (
    DegenerateQuotient,
    InvariantViolation,
    NotInSpI,
    SingularR,
    StructureViolation,
    UnsupportedDimension,
)
from .matcore import DEFAULT_TOL, max_norm, standard_J, threshold

EQUATIONS = ("B = B^T", "C = C^T", "AB = BA^T", "A^T C = C A", "A^2 - BC = I")


def _frozen(x) -> np.ndarray:
    a = np.array(x, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class WonenburgerTriple:
    """Blocks ``A, B, C`` of size ``n`` in {1, 2}.

    The constructor only checks shapes; use :func:`validate_triple` to check
    the structure equations.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        for name in ("A", "B", "C"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        shapes = {self.A.shape, self.B.shape, self.C.shape}
        if len(shapes) != 1:
            raise UnsupportedDimension(f"blocks have mismatched shapes {sorted(shapes)}")
        n, m = self.A.shape
        if n != m or n not in (1, 2):
            raise UnsupportedDimension(f"blocks must be 1x1 or 2x2, got {self.A.shape}")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.B)) and np.all(np.isfinite(self.C))):
            raise ValueError("triple entries must be finite")

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def allclose(self, other: "WonenburgerTriple", atol: float = 1e-9) -> bool:
        return all(
            np.allclose(x, y, rtol=0.0, atol=atol)
            for x, y in ((self.A, other.A), (self.B, other.B), (self.C, other.C))
        )

    def to_dict(self) -> dict:
        return {"n": self.n, "A": self.A.tolist(), "B": self.B.tolist(), "C": self.C.tolist()}


def structure_residuals(A, B, C) -> dict[str, float]:
    A, B, C = (np.atleast_2d(np.asarray(x, dtype=float)) for x in (A, B, C))
    n = A.shape[0]
    return {
        "B = B^T": max_norm(B - B.T),
        "C = C^T": max_norm(C - C.T),
        "AB = BA^T": max_norm(A @ B - B @ A.T),
        "A^T C = C A": max_norm(A.T @ C - C @ A),
        "A^2 - BC = I": max_norm(A @ A - B @ C - np.eye(n)),
    }


def validate_triple(A, B, C, tol: float = DEFAULT_TOL) -> WonenburgerTriple:
    """Return the triple if all five structure equations hold at ``tol``.

    Raises :class:`StructureViolation` listing every failed equation with its
    max-norm residual.
    """
    t = WonenburgerTriple(A, B, C)
    scale = 1.0 + max_norm(t.A, t.B, t.C) ** 2
    thr = threshold(tol, scale)
    failures = [(eq, r) for eq, r in structure_residuals(t.A, t.B, t.C).items() if r > thr]
    if failures:
        raise StructureViolation(failures)
    return t


def assemble(t: WonenburgerTriple) -> np.ndarray:
    return np.block([[t.A, t.B], [t.C, t.A.T]])


def from_matrix(M, tol: float = DEFAULT_TOL) -> WonenburgerTriple:
    """Split a ``2n x 2n`` matrix with lower-right block ``A^T`` into a triple."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] not in (2, 4):
        raise UnsupportedDimension(f"expected a 2x2 or 4x4 matrix, got shape {M.shape}")
    n = M.shape[0] // 2
    A, B, C, D = M[:n, :n], M[:n, n:], M[n:, :n], M[n:, n:]
    thr = threshold(tol, max(1.0, max_norm(M)))
    off = max_norm(D - A.T)
    if off > thr:
        raise NotInSpI(f"lower-right block differs from A^T by {off:.3g}")
    try:
        return validate_triple(A, B, C, tol)
    except StructureViolation as exc:
        raise NotInSpI(str(exc)) from exc


def _check_R(R, n: int) -> np.ndarray:
    R = np.atleast_2d(np.asarray(R, dtype=float))
    if R.shape != (n, n):
        raise UnsupportedDimension(f"R must be {n}x{n}, got {R.shape}")
    if abs(np.linalg.det(R)) <= 1e-12:
        raise SingularR("R is not invertible")
    return R


def gl_action(R, t: WonenburgerTriple) -> WonenburgerTriple:
    """``(R A R^-1, R B R^T, R^-T C R^-1)``."""
    R = _check_R(R, t.n)
    Ri = np.linalg.inv(R)
    return WonenburgerTriple(R @ t.A @ Ri, R @ t.B @ R.T, Ri.T @ t.C @ Ri)


def conjugator(R) -> np.ndarray:
    """The symplectic matrix ``diag(R, R^-T)`` implementing the action on ``M``."""
    R = np.atleast_2d(np.asarray(R, dtype=float))
    n = R.shape[0]
    S = np.zeros((2 * n, 2 * n))
    S[:n, :n] = R
    S[n:, n:] = np.linalg.inv(R).T
    return S


def trace_det(t: WonenburgerTriple) -> tuple[float, float]:
    A = t.A
    if t.n == 1:
        return float(A[0, 0]), float(A[0, 0])
    return float(A[0, 0] + A[1, 1]), float(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])


def char_poly_triple(t: WonenburgerTriple) -> Polynomial:
    """Characteristic polynomial of the assembled matrix from ``A`` alone.

    ``det(t^2 I - 2 t A + I)``; for ``n = 2`` this is
    ``t^4 - 2 tr(A) t^3 + 2 (1 + 2 det A) t^2 - 2 tr(A) t + 1``.
    """
    if t.n == 1:
        a = float(t.A[0, 0])
        return Polynomial([1.0, -2.0 * a, 1.0])
    tau, delta = trace_det(t)
    return Polynomial([1.0, -2.0 * tau, 2.0 * (1.0 + 2.0 * delta), -2.0 * tau, 1.0])


# ---------------------------------------------------------------------------
# reduced monodromy


def energy_covector(v) -> np.ndarray:
    """The covector ``omega(., v)``, i.e. ``dH`` when ``v`` is the Hamiltonian field."""
    v = np.asarray(v, dtype=float)
    return standard_J(v.size) @ v


def reduced_monodromy(M, v, alpha, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Matrix of the map induced by ``M`` on ``ker(alpha) / <v>``.

    ``v`` must be fixed by ``M``, ``alpha`` invariant (``alpha M = alpha``)
    and ``alpha(v) = 0``.  The quotient is identified with a complement
    spanned by a symplectic basis ``(e_1..e_k, f_1..f_k)`` built by
    symplectic Gram-Schmidt from projected standard basis vectors, largest
    pairing first.  The result is ``2k x 2k`` in that basis.
    """
    M = np.asarray(M, dtype=float)
    v = np.asarray(v, dtype=float).ravel()
    alpha = np.asarray(alpha, dtype=float).ravel()
    dim = M.shape[0]
    if M.shape != (dim, dim) or dim % 2 or dim < 4 or v.size != dim or alpha.size != dim:
        raise UnsupportedDimension("need a 2n x 2n matrix (n >= 2) with matching v and alpha")
    scale = max(1.0, max_norm(M)) * max(max_norm(v), max_norm(alpha), 1e-300)
    thr = threshold(tol, scale)
    if max_norm(M @ v - v) > thr:
        raise InvariantViolation("M v != v")
    if max_norm(alpha @ M - alpha) > thr:
        raise InvariantViolation("alpha M != alpha")
    if abs(alpha @ v) > threshold(tol, max_norm(alpha) * max_norm(v) * dim):
        raise DegenerateQuotient("alpha(v) != 0")
    if max_norm(alpha) == 0 or max_norm(v) == 0:
        raise DegenerateQuotient("alpha and v must be nonzero")

    J = standard_J(dim)

    def omega(x, y):
        return float(x @ J @ y)

    vhat = v / np.linalg.norm(v)
    cands = []
    for k in range(dim):
        x = np.zeros(dim)
        x[k] = 1.0
        x = x - alpha[k] * alpha / (alpha @ alpha)
        x = x - (x @ vhat) * vhat
        cands.append(x)

    es, fs = [], []
    for _ in range(dim // 2 - 1):
        best, pair = 0.0, None
        for i in range(len(cands)):
            for j in range(i + 1, len(cands)):
                w = omega(cands[i], cands[j])
                if abs(w) > abs(best) + 1e-15:
                    best, pair = w, (i, j)
        if pair is None or abs(best) <= threshold(tol, 1.0):
            raise DegenerateQuotient("symplectic form degenerates on ker(alpha)/<v>")
        i, j = pair
        root = np.sqrt(abs(best))
        e = cands[i] / root
        f = cands[j] / root * np.sign(best)
        es.append(e)
        fs.append(f)
        cands = [x - omega(x, f) * e + omega(x, e) * f for k, x in enumerate(cands) if k not in pair]

    basis = es + fs
    k = len(es)
    R = np.zeros((2 * k, 2 * k))
    for col, b in enumerate(basis):
        y = M @ b
        R[:k, col] = [omega(y, f) for f in fs]
        R[k:, col] = [omega(e, y) for e in es]
    return R
