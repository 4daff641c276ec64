"""Small dense matrix kernels for sizes 1, 2 and 4.

Characteristic polynomials, closed-form quadratic roots, the reciprocal
quartic solver used for 4x4 symplectic spectra, symplecticity checks and a
Taylor matrix exponential.

Tolerance policy
----------------
All equality tests are relative: two quantities are equal when they differ
by at most ``max(ABS_FLOOR, tol * scale)``, where ``scale`` is the max-norm
scale of the operands.  ``DEFAULT_TOL`` is the relative factor used
everywhere unless a caller overrides it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .errors import OddDimension, UnsupportedDimension

DEFAULT_TOL = 1e-9
ABS_FLOOR = 1e-12

_ALLOWED = (1, 2, 4)


def as_square(A, sizes=_ALLOWED) -> np.ndarray:
    """Coerce ``A`` to a finite float square matrix of an allowed size."""
    A = np.asarray(A, dtype=float)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise UnsupportedDimension(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] not in sizes:
        raise UnsupportedDimension(f"dimension {A.shape[0]} not in {sizes}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


def max_norm(*arrays) -> float:
    return max((float(np.max(np.abs(a))) if np.size(a) else 0.0) for a in arrays)


def threshold(tol: float, scale: float) -> float:
    return max(ABS_FLOOR, tol * scale)


def standard_J(dim: int) -> np.ndarray:
    """The block matrix ``[[0, I], [-I, 0]]`` of size ``dim``."""
    if dim % 2:
        raise OddDimension(f"symplectic form needs an even dimension, got {dim}")
    n = dim // 2
    J = np.zeros((dim, dim))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def symplectic_block_diag(*blocks) -> np.ndarray:
    """Direct sum of 2x2 blocks, block ``i`` acting on the pair ``(q_i, p_i)``.

    The result uses the ordering ``(q_1, ..., q_n, p_1, ..., p_n)`` so that
    the standard form :func:`standard_J` applies.
    """
    n = len(blocks)
    M = np.zeros((2 * n, 2 * n))
    for i, blk in enumerate(blocks):
        idx = [i, n + i]
        M[np.ix_(idx, idx)] = np.asarray(blk, dtype=float)
    return M


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


# ---------------------------------------------------------------------------
# characteristic polynomials


def char_poly(A) -> Polynomial:
    """``det(A - t I)`` as a polynomial in ``t`` (ascending coefficients).

    Faddeev-LeVerrier recursion, exact up to roundoff for the sizes used here.
    """
    A = as_square(A)
    n = A.shape[0]
    coef = np.zeros(n + 1)
    coef[n] = 1.0
    Mk = np.zeros_like(A)
    eye = np.eye(n)
    for k in range(1, n + 1):
        Mk = A @ Mk + coef[n - k + 1] * eye
        coef[n - k] = -np.trace(A @ Mk) / k
    # the recursion produces det(tI - A)
    return Polynomial(coef * (-1) ** n)


def is_palindromic(p: Polynomial, tol: float = DEFAULT_TOL) -> bool:
    c = np.asarray(p.coef, dtype=float)
    return bool(np.all(np.abs(c - c[::-1]) <= threshold(tol, max(1.0, max_norm(c)))))


def solve_quadratic(a, b, c, tol: float = DEFAULT_TOL):
    """Roots of ``a x^2 + b x + c`` with a thresholded discriminant.

    Returns ``(r1, r2, double)``.  When ``|b^2 - 4ac| < tol * max(|b|^2,
    |4ac|)`` the root is declared double and both entries equal ``-b/2a``.
    Real coefficients with a negative discriminant give a conjugate pair with
    ``r1`` in the upper half plane.  Complex coefficients are accepted.
    """
    if a == 0:
        raise ValueError("leading coefficient must be nonzero")
    disc = b * b - 4 * a * c
    scale = max(abs(b) ** 2, abs(4 * a * c))
    if abs(disc) <= tol * scale or scale == 0.0:
        r = -b / (2 * a)
        return r, r, True
    if all(isinstance(x, (int, float, np.floating, np.integer)) for x in (a, b, c)):
        a, b, c, disc = float(a), float(b), float(c), float(disc)
        if disc > 0:
            sq = math.sqrt(disc)
            q = -0.5 * (b + math.copysign(sq, b))
            r1, r2 = q / a, c / q
            return (r1, r2, False) if r1 <= r2 else (r2, r1, False)
        sq = math.sqrt(-disc)
        re, im = -b / (2 * a), abs(sq / (2 * a))
        return complex(re, im), complex(re, -im), False
    sq = cmath.sqrt(disc)
    if abs(b + sq) < abs(b - sq):
        sq = -sq
    q = -0.5 * (b + sq)
    return q / a, c / q, False


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class Eigenvalue:
    value: complex
    multiplicity: int
    semisimple: bool


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[Eigenvalue, ...]

    def values(self) -> list[complex]:
        """Eigenvalues repeated according to algebraic multiplicity."""
        out = []
        for ev in self.eigenvalues:
            out.extend([ev.value] * ev.multiplicity)
        return out

    def __len__(self):
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(self.eigenvalues)


def _rank(A: np.ndarray, atol: float) -> int:
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > atol))


def rank_tolerance(A: np.ndarray, tol: float) -> float:
    # double roots are declared once they agree to ~sqrt(tol), so rank
    # decisions need a band of the same order
    return 10.0 * math.sqrt(tol) * max(1.0, max_norm(A))


def _as_complex(z) -> complex:
    return complex(z)


def _roots_with_multiplicity(A: np.ndarray, tol: float):
    n = A.shape[0]
    if n == 1:
        return [(complex(A[0, 0]), 1)]
    if n == 2:
        tau = A[0, 0] + A[1, 1]
        delta = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
        r1, r2, double = solve_quadratic(1.0, -tau, delta, tol)
        if double:
            return [(complex(r1), 2)]
        return [(complex(r1), 1), (complex(r2), 1)]
    # n == 4: reciprocal quartic through s = t + 1/t
    c = char_poly(A).coef
    ctol = threshold(tol, (1.0 + max_norm(A)) ** 4)
    if abs(c[0] - 1.0) > ctol or abs(c[1] - c[3]) > ctol:
        raise UnsupportedDimension(
            "4x4 spectra are only supported for reciprocal (symplectic) characteristic polynomials"
        )
    p = 0.5 * (c[1] + c[3])
    s1, s2, s_double = solve_quadratic(1.0, p, c[2] - 2.0, tol)
    svals = [(s1, 2)] if s_double else [(s1, 1), (s2, 1)]
    out = []
    for s, m in svals:
        t1, t2, t_double = solve_quadratic(1.0, -s, 1.0, tol)
        if t_double:
            out.append((_as_complex(t1), 2 * m))
        else:
            out.extend([(_as_complex(t1), m), (_as_complex(t2), m)])
    return out


def eigs(A, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues with algebraic multiplicities and semi-simplicity flags.

    Sizes 1 and 2 use closed forms.  Size 4 is restricted to matrices whose
    characteristic polynomial is reciprocal, which covers every symplectic
    matrix; other 4x4 inputs raise :class:`UnsupportedDimension`.
    """
    A = as_square(A)
    n = A.shape[0]
    roots = _roots_with_multiplicity(A, tol)
    rtol = rank_tolerance(A, tol)
    out = []
    for lam, mult in roots:
        if abs(lam.imag) <= threshold(tol, max(1.0, abs(lam))):
            lam = complex(lam.real, 0.0)
        if mult == 1:
            semisimple = True
        else:
            geometric = n - _rank(A - lam * np.eye(n), rtol)
            semisimple = geometric >= mult
        out.append(Eigenvalue(lam, mult, semisimple))
    out.sort(key=lambda e: (round(e.value.real, 12), round(e.value.imag, 12)))
    return Spectrum(tuple(out))


def null_space(A: np.ndarray, atol: float) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel of ``A``."""
    _, s, vh = np.linalg.svd(A)
    rank = int(np.sum(s > atol))
    return vh[rank:].conj().T


# ---------------------------------------------------------------------------
# symplectic structure and exponentials


def symplectic_residual(M) -> float:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise UnsupportedDimension(f"expected a square matrix, got shape {M.shape}")
    J = standard_J(M.shape[0])
    return float(np.max(np.abs(M.T @ J @ M - J)))


def symplectic_check(M, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``max|M^T J M - J| <= tol * (1 + max|M|^2)``."""
    M = np.asarray(M, dtype=float)
    if M.ndim == 2 and M.shape[0] % 2:
        raise OddDimension(f"dimension {M.shape[0]} is odd")
    return symplectic_residual(M) <= tol * (1.0 + max_norm(M) ** 2)


def mat_exp(X, tol: float = 1e-14) -> np.ndarray:
    """Matrix exponential by scaling and squaring a truncated Taylor series.

    The series for the scaled matrix is cut once the next term falls below
    ``tol / 2**s`` relative to the partial sum, so the squared result keeps a
    truncation error of order ``tol``.
    """
    X = as_square(X)
    n = X.shape[0]
    norm = float(np.max(np.sum(np.abs(X), axis=0)))
    s = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    Y = X / 2.0**s
    stage_tol = max(tol / 2.0**s, 1e-18)
    term = np.eye(n)
    result = np.eye(n)
    for k in range(1, 60):
        term = term @ Y / k
        result = result + term
        # remainder of a series with ratio <= 1/2 is bounded by the last term
        if np.max(np.abs(term)) <= stage_tol * max(1.0, np.max(np.abs(result))):
            break
    for _ in range(s):
        result = result @ result
    return result
