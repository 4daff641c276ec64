"""The base plane ``M_2(R)//GL_2(R) = R^2`` in (trace, determinant) coordinates.

The parabola ``delta = tau^2/4`` and the lines ``delta = tau - 1`` and
``delta = -tau - 1`` cut the plane into seven open regions.  Off the three
singular points the walls split into nine open arcs.  This module assigns
strata to base points, lifts eigenvalues of ``A`` to eigenvalues of the
assembled symplectic matrix, builds the resonance pencil of lines tangent to
the parabola, and models the planar (``n = 1``) quotients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import DegenerateLambda, InconsistentRegion, WrongDimension
from .matcore import DEFAULT_TOL
from .wonenburger import WonenburgerTriple, trace_det


class StratumKind(str, Enum):
    REGION = "region"
    WALL = "wall"
    SINGULAR = "singular"


class StratumLabel(str, Enum):
    E2 = "E2"
    EH_PLUS = "EH+"
    EH_MINUS = "EH-"
    H_PP = "H++"
    H_MP = "H-+"
    H_MM = "H--"
    N = "N"
    GD1 = "Gd^1"
    GD2 = "Gd^2"
    GD3 = "Gd^3"
    G1_1 = "G1^1"
    G1_2 = "G1^2"
    G1_3 = "G1^3"
    GM1_1 = "G-1^1"
    GM1_2 = "G-1^2"
    GM1_3 = "G-1^3"
    P_2_1 = "(2,1)"
    P_M2_1 = "(-2,1)"
    P_0_M1 = "(0,-1)"

    def __str__(self):
        return self.value

    @property
    def kind(self) -> StratumKind:
        if self in REGIONS:
            return StratumKind.REGION
        if self in SINGULAR_POINTS:
            return StratumKind.SINGULAR
        return StratumKind.WALL


L = StratumLabel
REGIONS = (L.E2, L.EH_PLUS, L.EH_MINUS, L.H_PP, L.H_MP, L.H_MM, L.N)
GAMMA_D = (L.GD1, L.GD2, L.GD3)
GAMMA_1 = (L.G1_1, L.G1_2, L.G1_3)
GAMMA_M1 = (L.GM1_1, L.GM1_2, L.GM1_3)
SINGULAR_POINTS = (L.P_2_1, L.P_M2_1, L.P_0_M1)
WALLS = GAMMA_D + GAMMA_1 + GAMMA_M1
BIFURCATION = GAMMA_1 + GAMMA_M1 + SINGULAR_POINTS
ALL_LABELS = REGIONS + WALLS + SINGULAR_POINTS

SINGULAR_COORDS = {L.P_2_1: (2.0, 1.0), L.P_M2_1: (-2.0, 1.0), L.P_0_M1: (0.0, -1.0)}


@dataclass(frozen=True)
class Stratum:
    label: StratumLabel
    singular_adjacent: bool = False

    @property
    def kind(self) -> StratumKind:
        return self.label.kind

    @property
    def on_bifurcation_locus(self) -> bool:
        return self.label in BIFURCATION

    def __str__(self):
        return self.label.value


@dataclass(frozen=True)
class BasePoint:
    tau: float
    delta: float

    def __iter__(self):
        yield self.tau
        yield self.delta


def base_from_triple(t: WonenburgerTriple) -> BasePoint:
    if t.n != 2:
        raise WrongDimension("the base plane is defined for 2x2 blocks; use planar_model for n = 1")
    return BasePoint(*trace_det(t))


# ---------------------------------------------------------------------------
# walls and strata


def residual_d(tau, delta):
    return delta - 0.25 * tau * tau


def residual_1(tau, delta):
    return delta - (tau - 1.0)


def residual_m1(tau, delta):
    return delta - (-tau - 1.0)


def wall_band(p: BasePoint, tol: float = DEFAULT_TOL) -> float:
    return tol * (1.0 + abs(p.tau) + abs(p.delta))


def real_eigenvalues(tau: float, delta: float) -> tuple[float, float]:
    """Ordered real eigenvalues ``mu_1 <= mu_2`` of a matrix with the given trace/det."""
    disc = max(0.25 * tau * tau - delta, 0.0)
    sq = math.sqrt(disc)
    big = 0.5 * tau + math.copysign(sq, tau) if tau != 0 else sq
    small = delta / big if big != 0 else -big
    return (small, big) if small <= big else (big, small)


def a_eigenvalues(p: BasePoint):
    """Eigenvalues of ``A``: two ordered reals, or a conjugate pair (upper first)."""
    if residual_d(p.tau, p.delta) > 0:
        im = math.sqrt(p.delta - 0.25 * p.tau * p.tau)
        return complex(0.5 * p.tau, im), complex(0.5 * p.tau, -im)
    return real_eigenvalues(p.tau, p.delta)


def _region_from_eigenvalues(mu1: float, mu2: float) -> StratumLabel:
    if mu1 > 1:
        return L.H_PP
    if mu2 < -1:
        return L.H_MM
    if mu1 < -1 and mu2 > 1:
        return L.H_MP
    if mu1 < -1:
        return L.EH_MINUS
    if mu2 > 1:
        return L.EH_PLUS
    return L.E2


def classify_base(p: BasePoint, tol: float = DEFAULT_TOL) -> Stratum:
    """Stratum of a base point.

    Singular points first (inside the band of both incident walls), then
    wall arcs (inside the band of one wall), then the open region decided by
    the position of the eigenvalues of ``A`` relative to ``-1`` and ``1``.
    """
    tau, delta = p.tau, p.delta
    band = wall_band(p, tol)
    rd, r1, rm1 = residual_d(tau, delta), residual_1(tau, delta), residual_m1(tau, delta)
    on_d, on_1, on_m1 = abs(rd) <= band, abs(r1) <= band, abs(rm1) <= band
    if on_1 and on_m1:
        return Stratum(L.P_0_M1)
    if on_d and on_1:
        return Stratum(L.P_2_1)
    if on_d and on_m1:
        return Stratum(L.P_M2_1)
    near = math.sqrt(band)
    if on_d:
        label = L.GD1 if tau < -2 else (L.GD3 if tau > 2 else L.GD2)
        return Stratum(label, abs(r1) <= near or abs(rm1) <= near)
    if on_1:
        label = L.G1_1 if tau < 0 else (L.G1_3 if tau > 2 else L.G1_2)
        return Stratum(label, abs(rd) <= near or abs(rm1) <= near)
    if on_m1:
        label = L.GM1_1 if tau < -2 else (L.GM1_2 if tau < 0 else L.GM1_3)
        return Stratum(label, abs(rd) <= near or abs(r1) <= near)
    if rd > 0:
        return Stratum(L.N)
    return Stratum(_region_from_eigenvalues(*real_eigenvalues(tau, delta)))


def classify_triple(t: WonenburgerTriple, tol: float = DEFAULT_TOL) -> Stratum:
    return classify_base(base_from_triple(t), tol)


# ---------------------------------------------------------------------------
# eigenvalue lifting


def _mu_kind(mu, tol=DEFAULT_TOL) -> str:
    mu = complex(mu)
    if abs(mu.imag) > tol * max(1.0, abs(mu)):
        return "complex"
    x = mu.real
    if abs(abs(x) - 1.0) <= tol:
        return "parabolic"
    if abs(x) < 1:
        return "elliptic"
    return "pos-hyperbolic" if x > 0 else "neg-hyperbolic"


_ALLOWED_KINDS = {
    L.E2: {"elliptic"},
    L.EH_PLUS: {"elliptic", "pos-hyperbolic"},
    L.EH_MINUS: {"elliptic", "neg-hyperbolic"},
    L.H_PP: {"pos-hyperbolic"},
    L.H_MM: {"neg-hyperbolic"},
    L.H_MP: {"pos-hyperbolic", "neg-hyperbolic"},
    L.N: {"complex"},
    L.GD1: {"neg-hyperbolic"},
    L.GD2: {"elliptic"},
    L.GD3: {"pos-hyperbolic"},
    L.G1_1: {"parabolic", "neg-hyperbolic"},
    L.G1_2: {"parabolic", "elliptic"},
    L.G1_3: {"parabolic", "pos-hyperbolic"},
    L.GM1_1: {"parabolic", "neg-hyperbolic"},
    L.GM1_2: {"parabolic", "elliptic"},
    L.GM1_3: {"parabolic", "pos-hyperbolic"},
    L.P_2_1: {"parabolic"},
    L.P_M2_1: {"parabolic"},
    L.P_0_M1: {"parabolic"},
}


def eigen_lift(mu, region) -> tuple:
    """Eigenvalues of ``M_{A,B,C}`` carried by the eigenvalue ``mu`` of ``A``.

    Elliptic ``mu`` gives ``(mu + i sqrt(1 - mu^2), conjugate)``; ``mu > 1``
    gives ``(mu + sqrt(mu^2 - 1), inverse)``; ``mu < -1`` gives
    ``(mu - sqrt(mu^2 - 1), inverse)``; nonreal ``mu`` gives the quadruple
    ``lambda, conj, 1/lambda, 1/conj`` with ``lambda = mu + sqrt(mu^2 - 1)``.
    """
    label = region.label if isinstance(region, Stratum) else StratumLabel(region)
    kind = _mu_kind(mu)
    if kind not in _ALLOWED_KINDS[label]:
        raise InconsistentRegion(f"eigenvalue {mu} ({kind}) cannot occur over {label}")
    if kind == "complex":
        mu = complex(mu)
        lam = mu + cmath.sqrt(mu * mu - 1.0)
        return (lam, lam.conjugate(), 1.0 / lam, 1.0 / lam.conjugate())
    x = float(complex(mu).real)
    if kind == "parabolic":
        s = 1.0 if x > 0 else -1.0
        return (s, s)
    if kind == "elliptic":
        lam = complex(x, math.sqrt(1.0 - x * x))
        return (lam, lam.conjugate())
    root = math.sqrt(x * x - 1.0)
    lam = x + root if x > 0 else x - root
    return (lam, 1.0 / lam)


# ---------------------------------------------------------------------------
# pencils of lines tangent to the parabola


@dataclass(frozen=True)
class PencilLine:
    """The line ``delta = a tau - a^2`` (locus where ``a`` is an eigenvalue of A)."""

    kind: str
    slope: float
    param: object = None

    @property
    def intercept(self) -> float:
        return -self.slope * self.slope

    @property
    def tangency_tau(self) -> float:
        return 2.0 * self.slope

    def residual(self, tau, delta):
        return delta - (self.slope * tau - self.slope * self.slope)

    def __call__(self, tau):
        return self.slope * tau - self.slope * self.slope


def elliptic_line(theta: float) -> PencilLine:
    """``theta`` in turns, i.e. the eigenvalue is ``exp(2 pi i theta)``."""
    theta = float(theta) % 1.0
    return PencilLine("elliptic", _cos_turns(Fraction(theta)), theta)


def hyperbolic_line(lam: float) -> PencilLine:
    lam = float(lam)
    if abs(lam) <= 1.0:
        raise DegenerateLambda("hyperbolic lines are indexed by |lambda| > 1 (Gamma_lambda = Gamma_1/lambda)")
    return PencilLine("hyperbolic", 0.5 * (lam + 1.0 / lam), lam)


def _cos_turns(frac: Fraction) -> float:
    # exact values where cos is rational keep the walls exactly on the lines
    exact = {Fraction(0): 1.0, Fraction(1, 2): -1.0, Fraction(1, 4): 0.0, Fraction(3, 4): 0.0,
             Fraction(1, 3): -0.5, Fraction(2, 3): -0.5, Fraction(1, 6): 0.5, Fraction(5, 6): 0.5}
    return exact.get(frac, math.cos(2 * math.pi * float(frac)))


def resonance_line(k: int, l: int) -> PencilLine:
    """Line of matrices with eigenvalue ``exp(2 pi i l / k)``."""
    if k < 1:
        raise ValueError("k must be positive")
    frac = Fraction(l % k, k)
    return PencilLine("resonance", _cos_turns(frac), (frac.denominator, frac.numerator))


def pencil_line(kind: str, *args) -> PencilLine:
    if kind == "elliptic":
        return elliptic_line(*args)
    if kind == "hyperbolic":
        return hyperbolic_line(*args)
    if kind == "resonance":
        return resonance_line(*args)
    raise ValueError(f"unknown pencil kind {kind!r}")


def resonance_lines(k_max: int, k_min: int = 1) -> dict[tuple[int, int], PencilLine]:
    """All distinct ``Gamma_{k,l}`` with ``k_min <= k <= k_max``, keyed by reduced ``(k, l)``.

    ``l`` runs over ``0 <= l <= k/2`` with ``gcd(k, l) = 1``; ``l`` and
    ``k - l`` give the same line.
    """
    out = {}
    for k in range(max(1, k_min), k_max + 1):
        for l in range(0, k // 2 + 1):
            if gcd(k, l) == 1:
                out[(k, l)] = resonance_line(k, l)
    return out


# ---------------------------------------------------------------------------
# product map


def product_map(a: float, b: float) -> BasePoint:
    """Ordered eigenvalue pair to (trace, determinant)."""
    return BasePoint(a + b, a * b)


def involution(a: float, b: float) -> tuple[float, float]:
    return b, a


# ---------------------------------------------------------------------------
# planar model


@dataclass(frozen=True)
class PlanarClass:
    """A point of one of the planar quotients.

    ``chart`` is ``"circle"`` (``value`` = angle in radians, the point is
    ``exp(i value)``), ``"hyperbola"`` (``value = (sign, u)``, the point
    ``(sign cosh u, sinh u)``), ``"ray"`` (``value = r`` with ``|r| > 1``) or
    ``"boundary"`` (``value = +-1``).
    """

    chart: str
    value: object

    @property
    def point(self):
        if self.chart == "circle":
            return cmath.exp(1j * self.value)
        if self.chart == "hyperbola":
            sign, u = self.value
            return (sign * math.cosh(u), math.sinh(u))
        return self.value


@dataclass(frozen=True)
class PlanarModel:
    spi: PlanarClass
    sp: PlanarClass
    base: float


def planar_model(t: WonenburgerTriple, tol: float = DEFAULT_TOL) -> PlanarModel:
    """Images of an ``n = 1`` triple in ``Sp^I(2)//GL_1``, ``Sp(2)//Sp(2)`` and the base."""
    if t.n != 1:
        raise WrongDimension("planar_model needs a 1x1 triple")
    a, b = float(t.A[0, 0]), float(t.B[0, 0])
    if abs(abs(a) - 1.0) <= tol * max(1.0, abs(a)):
        s = 1.0 if a > 0 else -1.0
        cls = PlanarClass("boundary", s)
        return PlanarModel(cls, cls, a)
    if abs(a) < 1:
        theta = math.copysign(math.acos(a), -b)
        cls = PlanarClass("circle", theta)
        return PlanarModel(cls, cls, a)
    # GL_1 normalisation |b| = |c| = sqrt(a^2 - 1) = |sinh u|, sinh u carries the sign of b
    sign = 1.0 if a > 0 else -1.0
    u = math.asinh(math.copysign(math.sqrt(a * a - 1.0), b))
    return PlanarModel(PlanarClass("hyperbola", (sign, u)), PlanarClass("ray", sign * math.exp(abs(u))), a)
