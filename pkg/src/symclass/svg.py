"""Deterministic SVG rendering of the (trace, determinant) stability diagram."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .base_plane import REGIONS, SINGULAR_COORDS, L, classify_base, BasePoint, resonance_lines
from .components import fiber_size

WIDTH, HEIGHT, MARGIN = 720, 540, 40

# label anchors, used when they fall inside the plotted window
_ANCHORS = {
    L.E2: (0.0, -0.5),
    L.EH_PLUS: (3.0, 1.0),
    L.EH_MINUS: (-3.0, 1.0),
    L.H_PP: (3.6, 2.9),
    L.H_MM: (-3.6, 2.9),
    L.H_MP: (0.0, -2.5),
    L.N: (0.0, 2.5),
}

_EVENT_COLOURS = {
    "gamma_1": "#d62728",
    "gamma_-1": "#9467bd",
    "gamma_d": "#2ca02c",
    "resonance": "#ff7f0e",
    "stability": "#1f77b4",
}


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


class _Frame:
    def __init__(self, xrange, yrange):
        self.x0, self.x1 = map(float, xrange)
        self.y0, self.y1 = map(float, yrange)
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("ranges must be increasing intervals")

    def __call__(self, tau, delta):
        x = MARGIN + (tau - self.x0) / (self.x1 - self.x0) * (WIDTH - 2 * MARGIN)
        y = HEIGHT - MARGIN - (delta - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2 * MARGIN)
        return x, y

    def inside(self, tau, delta):
        return self.x0 <= tau <= self.x1 and self.y0 <= delta <= self.y1


def _polyline(frame, pts, **attrs) -> str:
    path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (frame(t, d) for t, d in pts))
    extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{path}" fill="none" {extra}/>'


def _line(frame, slope, label, **attrs) -> list[str]:
    pts = [(frame.x0, slope * frame.x0 - slope * slope), (frame.x1, slope * frame.x1 - slope * slope)]
    return [_polyline(frame, pts, **attrs)]


def render_diagram(xrange=(-4.0, 4.0), yrange=(-3.0, 5.0), k_max: int | None = None, overlay=None) -> str:
    """SVG text of the stratified base plane.

    ``k_max`` adds the resonance lines ``Gamma_{k,l}`` with ``3 <= k <= k_max``;
    ``overlay`` is a path report whose samples are drawn as a polyline with a
    marker per event.
    """
    fr = _Frame(xrange, yrange)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        '<defs><clipPath id="plot">'
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" height="{HEIGHT - 2 * MARGIN}"/>'
        "</clipPath></defs>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" height="{HEIGHT - 2 * MARGIN}" '
        'fill="none" stroke="#999"/>',
    ]
    body = []
    if fr.x0 < 0 < fr.x1:
        body.append(_polyline(fr, [(0.0, fr.y0), (0.0, fr.y1)], stroke="#ddd"))
    if fr.y0 < 0 < fr.y1:
        body.append(_polyline(fr, [(fr.x0, 0.0), (fr.x1, 0.0)], stroke="#ddd"))
    if k_max:
        for (k, l), line in sorted(resonance_lines(k_max, k_min=3).items()):
            body += _line(fr, line.slope, f"G({k},{l})", stroke="#ff7f0e", stroke_width="0.7",
                          stroke_dasharray="4 3")
    n = 400
    parab = [(fr.x0 + (fr.x1 - fr.x0) * i / n, 0.25 * (fr.x0 + (fr.x1 - fr.x0) * i / n) ** 2) for i in range(n + 1)]
    body.append(_polyline(fr, parab, stroke="#2ca02c", stroke_width="1.5"))
    body += _line(fr, 1.0, "G1", stroke="#d62728", stroke_width="1.5")
    body += _line(fr, -1.0, "G-1", stroke="#9467bd", stroke_width="1.5")
    for lab, (tau, delta) in SINGULAR_COORDS.items():
        if fr.inside(tau, delta):
            x, y = fr(tau, delta)
            body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" fill="black"/>')
    if overlay is not None:
        body += _overlay(fr, overlay)
    out.append('<g clip-path="url(#plot)">')
    out += body
    out.append("</g>")
    for region in REGIONS:
        tau, delta = _ANCHORS[region]
        if fr.inside(tau, delta) and classify_base(BasePoint(tau, delta)).label is region:
            a, b = fiber_size(region)
            x, y = fr(tau, delta)
            out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="middle">'
                       f"{escape(region.value)} {a}/{b}</text>")
    out.append(f'<text x="{WIDTH - MARGIN}" y="{HEIGHT - 12}" text-anchor="end">trace</text>')
    out.append(f'<text x="{MARGIN}" y="{MARGIN - 12}">det</text>')
    for v in (fr.x0, fr.x1):
        x, _ = fr(v, fr.y0)
        out.append(f'<text x="{_fmt(x)}" y="{HEIGHT - MARGIN + 14}" text-anchor="middle">{_fmt(v)}</text>')
    for v in (fr.y0, fr.y1):
        _, y = fr(fr.x0, v)
        out.append(f'<text x="{MARGIN - 4}" y="{_fmt(y)}" text-anchor="end">{_fmt(v)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _overlay(fr, report) -> list[str]:
    samples = report.samples
    body = [_polyline(fr, [(s.base.tau, s.base.delta) for s in samples], stroke="black", stroke_width="1.2")]
    for e in report.events:
        a, b = samples[e.segment], samples[e.segment + 1]
        w = 0.0 if b.param == a.param else (e.param - a.param) / (b.param - a.param)
        tau = a.base.tau + w * (b.base.tau - a.base.tau)
        delta = a.base.delta + w * (b.base.delta - a.base.delta)
        x, y = fr(tau, delta)
        colour = _EVENT_COLOURS.get(e.kind, "black")
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{colour}">'
                    f"<title>{escape(e.kind)} {escape(e.line)} at {e.param:.6g}</title></circle>")
    return body
