"""Event detection along sampled one-parameter families of triples."""

from __future__ import annotations

from dataclasses import dataclass, field

from .base_plane import (
    BIFURCATION,
    REGIONS,
    L,
    BasePoint,
    base_from_triple,
    classify_base,
    residual_1,
    residual_d,
    residual_m1,
    resonance_lines,
    wall_band,
)
from .components import (
    Quotient,
    SheetLabel,
    adjacent,
    project,
    share_double_wall,
    spi_decoration,
)
from .errors import NonMonotoneParameters, SparseSampling
from .matcore import DEFAULT_TOL
from .signatures import Stability, stability_check
from .wonenburger import assemble

GAMMA_1_EVENT = "gamma_1"
GAMMA_M1_EVENT = "gamma_-1"
GAMMA_D_EVENT = "gamma_d"
RESONANCE_EVENT = "resonance"
STABILITY_EVENT = "stability"
BIFURCATION_EVENTS = (GAMMA_1_EVENT, GAMMA_M1_EVENT)

# on open regions the verdict only depends on the region
REGION_STABILITY = {r: Stability.UNSTABLE for r in REGIONS}
REGION_STABILITY[L.E2] = Stability.STRONGLY_STABLE


@dataclass(frozen=True)
class PathSample:
    param: float
    base: BasePoint
    label: SheetLabel
    stability: Stability


@dataclass(frozen=True)
class PathEvent:
    param: float
    kind: str
    line: str
    detail: str
    segment: int

    def to_dict(self) -> dict:
        return {"param": self.param, "kind": self.kind, "line": self.line,
                "detail": self.detail, "segment": self.segment}


@dataclass(frozen=True)
class PathVerdict:
    obstructed: bool
    event_index: int | None = None

    def __str__(self):
        return f"obstructed(event {self.event_index})" if self.obstructed else "single-component"


@dataclass
class PathReport:
    samples: list = field(default_factory=list)
    events: list = field(default_factory=list)
    verdict: PathVerdict = PathVerdict(False)

    def to_dict(self) -> dict:
        return {
            "samples": [
                {"param": s.param, "tau": s.base.tau, "delta": s.base.delta,
                 "label": str(s.label), "stability": str(s.stability)}
                for s in self.samples
            ],
            "events": [e.to_dict() for e in self.events],
            "verdict": str(self.verdict),
            "obstructed": self.verdict.obstructed,
        }


def _lines(k_max: int):
    """``(name, kind, residual)`` for every wall and resonance line checked."""
    out = [
        ("G1", GAMMA_1_EVENT, residual_1),
        ("G-1", GAMMA_M1_EVENT, residual_m1),
        ("Gd", GAMMA_D_EVENT, residual_d),
    ]
    # k = 1, 2 are the walls themselves
    for (k, l), line in resonance_lines(k_max, k_min=3).items():
        out.append((f"G({k},{l})", RESONANCE_EVENT, line.residual))
    return out


def _state(r: float, band: float) -> int:
    if abs(r) <= band:
        return 0
    return 1 if r > 0 else -1


def analyze_path(family, k_max: int = 6, tol: float = DEFAULT_TOL, quotient="SpI") -> PathReport:
    """Events and an obstruction verdict for a sampled family.

    ``family`` is a sequence of ``(param, triple)`` with strictly monotone
    parameters and ``n = 2`` triples.  For every wall ``Gamma_1``,
    ``Gamma_-1``, ``Gamma_d`` and each resonance line ``Gamma_{k,l}``
    (``3 <= k <= k_max``) a sign change of the residual between two samples
    is a crossing, located by linear interpolation; entering the wall band
    is a contact at the sample parameter.  Changes of the stability verdict
    are reported at the later sample.

    The family is obstructed at the first ``Gamma_+-1`` event.  Consecutive
    sheets must otherwise be equal, adjacent, or share a double-wall sheet
    when a ``Gamma_d`` crossing was seen; anything else means the sampling
    skipped over structure and :class:`SparseSampling` is raised.
    """
    family = list(family)
    if len(family) < 2:
        raise ValueError("a family needs at least two samples")
    params = [float(p) for p, _ in family]
    steps = [b - a for a, b in zip(params, params[1:])]
    if not (all(d > 0 for d in steps) or all(d < 0 for d in steps)):
        raise NonMonotoneParameters("family parameters must be strictly monotone")
    quotient = Quotient(quotient)
    lines = _lines(k_max)

    samples, residuals = [], []
    for s, t in family:
        p = base_from_triple(t)
        stratum = classify_base(p, tol).label
        label = SheetLabel(Quotient.SPI, stratum, spi_decoration(t, stratum, tol))
        if quotient is Quotient.SP4:
            label = project(label)
        stab = REGION_STABILITY.get(stratum) or stability_check(assemble(t), tol).status
        samples.append(PathSample(float(s), p, label, stab))
        band = wall_band(p, tol)
        residuals.append([_state(f(p.tau, p.delta), band) for _, _, f in lines] +
                         [f(p.tau, p.delta) for _, _, f in lines])

    nl = len(lines)
    events = []
    for i in range(len(samples) - 1):
        a, b = samples[i], samples[i + 1]
        ra, rb = residuals[i], residuals[i + 1]
        seg_events = []
        for j, (name, kind, _) in enumerate(lines):
            sa, sb = ra[j], rb[j]
            if sa != 0 and sb == -sa:
                fa, fb = ra[nl + j], rb[nl + j]
                at = a.param + (b.param - a.param) * fa / (fa - fb)
                seg_events.append(PathEvent(at, kind, name, "crossing", i))
            elif sa != 0 and sb == 0:
                seg_events.append(PathEvent(b.param, kind, name, "contact", i))
            elif i == 0 and sa == 0:
                seg_events.append(PathEvent(a.param, kind, name, "contact", i))
        if a.stability is not b.stability:
            seg_events.append(PathEvent(b.param, STABILITY_EVENT, "",
                                        f"{a.stability} -> {b.stability}", i))
        seg_events.sort(key=lambda e: (e.param - a.param) / (b.param - a.param))
        events.extend(seg_events)

        kinds = {e.kind for e in seg_events}
        if kinds & set(BIFURCATION_EVENTS):
            continue
        la, lb = a.label, b.label
        if la.stratum in BIFURCATION or lb.stratum in BIFURCATION:
            continue
        if adjacent(la, lb):
            continue
        if GAMMA_D_EVENT in kinds and share_double_wall(la, lb):
            continue
        raise SparseSampling(
            f"sheets {la} and {lb} at parameters {a.param} and {b.param} are not adjacent; refine the sampling"
        )

    verdict = PathVerdict(False)
    for idx, e in enumerate(events):
        if e.kind in BIFURCATION_EVENTS:
            verdict = PathVerdict(True, idx)
            break
    # samples sitting on Gamma_+-1 or a singular point also obstruct
    if not verdict.obstructed:
        for s in samples:
            if s.label.stratum in BIFURCATION:
                verdict = PathVerdict(True, None)
                break
    return PathReport(samples, events, verdict)


__all__ = ["analyze_path", "PathReport", "PathEvent", "PathSample", "PathVerdict"]
