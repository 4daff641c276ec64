"""Sheet labels in both quotients, fiber sizes, and the component graph.

A sheet over a stratum is a stratum label plus a decoration.  In the
``Sp^I(4)//GL_2`` quotient the decoration is the B-type of each real
eigenvalue (the signature of ``B`` over the double wall).  Passing to
``Sp(4)//Sp(4)`` forgets the signs carried by hyperbolic eigenvalues, since
those sheets are symplectically conjugate, and keeps the elliptic signs,
which are Krein types.

The component graph has one node per sheet over the seven open regions and
the three double-eigenvalue arcs.  A double-wall sheet with B-form
signature ``s`` is joined to each incident region sheet whose two signs
coalesce to ``s``; the single nonreal sheet has ``B = diag(1, -1)`` and so is
joined to the mixed double-wall sheets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product

import networkx as nx

from .base_plane import (
    BIFURCATION,
    GAMMA_1,
    GAMMA_D,
    GAMMA_M1,
    REGIONS,
    L,
    StratumLabel,
    base_from_triple,
    classify_base,
)
from .errors import OnBifurcationLocus
from .matcore import DEFAULT_TOL, max_norm, threshold
from .signatures import b_values, sym_eigvals_2x2
from .wonenburger import WonenburgerTriple


class Quotient(str, Enum):
    SPI = "SpI"
    SP4 = "Sp4"

    def __str__(self):
        return self.value


_ELLIPTIC_WALLS = (L.G1_2, L.GM1_2)
_REAL_REGIONS = tuple(r for r in REGIONS if r is not L.N)

_FIBER = {
    L.E2: (4, 4), L.EH_PLUS: (4, 2), L.EH_MINUS: (4, 2),
    L.H_PP: (4, 1), L.H_MP: (4, 1), L.H_MM: (4, 1), L.N: (1, 1),
    L.GD1: (3, 1), L.GD2: (3, 3), L.GD3: (3, 1),
    L.G1_1: (2, 1), L.G1_2: (2, 2), L.G1_3: (2, 1),
    L.GM1_1: (2, 1), L.GM1_2: (2, 2), L.GM1_3: (2, 1),
    L.P_2_1: (1, 1), L.P_M2_1: (1, 1), L.P_0_M1: (1, 1),
}

# incident open region of each double-wall arc, besides N
_GD_REGION = {L.GD1: L.H_MM, L.GD2: L.E2, L.GD3: L.H_PP}
# every E2 sheet has four simple unit eigenvalues; over Gd^2 only definite B is
STRONGLY_STABLE = {(L.E2, d) for d in product("+-", repeat=2)} | {(L.GD2, ("+", "+")), (L.GD2, ("-", "-"))}


def fiber_size(label) -> tuple[int, int]:
    """Number of sheets over a stratum in ``(Sp^I(4)//GL_2, Sp(4)//Sp(4))``."""
    label = getattr(label, "label", label)
    return _FIBER[StratumLabel(label)]


@dataclass(frozen=True, order=True)
class SheetLabel:
    quotient: Quotient
    stratum: StratumLabel
    decoration: tuple = ()

    def __str__(self):
        if not self.decoration:
            return self.stratum.value
        return f"{self.stratum.value}({','.join(self.decoration)})"

    @property
    def strongly_stable(self) -> bool:
        return (self.stratum, self.decoration) in STRONGLY_STABLE


def _order(signs):
    return tuple(sorted(signs, key=["+", "0", "-"].index))


def project(label: SheetLabel) -> SheetLabel:
    """The image of an ``Sp^I`` sheet in ``Sp(4)//Sp(4)``."""
    if label.quotient is Quotient.SP4:
        return label
    s, d = label.stratum, label.decoration
    if s is L.E2 or s is L.GD2:
        keep = d
    elif s is L.EH_PLUS:
        keep = d[:1]
    elif s is L.EH_MINUS:
        keep = d[1:]
    elif s in _ELLIPTIC_WALLS:
        keep = tuple(x for x in d if x != "0")
    else:
        keep = ()
    return SheetLabel(Quotient.SP4, s, keep)


def _sign_str(x: float, zero: float) -> str:
    if abs(x) <= zero:
        return "0"
    return "+" if x > 0 else "-"


def spi_decoration(t: WonenburgerTriple, label: StratumLabel, tol: float = DEFAULT_TOL) -> tuple:
    """B-type decoration of ``t`` over a known stratum (fast path, no normal form)."""
    if label is L.N or label.kind.value == "singular":
        return ()
    zero = threshold(tol, max_norm(t.B))
    if label in GAMMA_D:
        lo, hi = sym_eigvals_2x2(t.B)
        return _order((_sign_str(hi, zero), _sign_str(lo, zero)))
    vals = b_values(t)
    if label in GAMMA_1 or label in GAMMA_M1:
        eps = 1.0 if label in GAMMA_1 else -1.0
        j = min(range(2), key=lambda i: abs(vals[i][0] - eps))
        return tuple("0" if i == j else _sign_str(b, zero) for i, (_, b) in enumerate(vals))
    return tuple(_sign_str(b, zero) for _, b in vals)


def quotient_label(t: WonenburgerTriple, quotient="SpI", tol: float = DEFAULT_TOL) -> SheetLabel:
    quotient = Quotient(quotient)
    label = classify_base(base_from_triple(t), tol).label
    spi = SheetLabel(Quotient.SPI, label, spi_decoration(t, label, tol))
    return spi if quotient is Quotient.SPI else project(spi)


# ---------------------------------------------------------------------------
# component graph


def graph_sheets(quotient="SpI") -> list[SheetLabel]:
    """Sheets over the complement of the bifurcation locus, in a fixed order."""
    quotient = Quotient(quotient)
    nodes = []
    for r in _REAL_REGIONS:
        nodes += [SheetLabel(Quotient.SPI, r, d) for d in product("+-", repeat=2)]
    nodes.append(SheetLabel(Quotient.SPI, L.N))
    for g in GAMMA_D:
        nodes += [SheetLabel(Quotient.SPI, g, d) for d in (("+", "+"), ("+", "-"), ("-", "-"))]
    if quotient is Quotient.SP4:
        nodes = list(dict.fromkeys(project(n) for n in nodes))
    return nodes


def _spi_edges():
    for g, region in _GD_REGION.items():
        for d in product("+-", repeat=2):
            yield SheetLabel(Quotient.SPI, region, d), SheetLabel(Quotient.SPI, g, _order(d))
        yield SheetLabel(Quotient.SPI, L.N), SheetLabel(Quotient.SPI, g, ("+", "-"))


@lru_cache(maxsize=None)
def build_component_graph(quotient="SpI") -> nx.Graph:
    """Closure-adjacency graph of sheets; Sp(4) edges are images of Sp^I edges.

    The returned graph is cached and shared: do not mutate it.
    """
    quotient = Quotient(quotient)
    G = nx.Graph(quotient=quotient)
    G.add_nodes_from(graph_sheets(quotient))
    for a, b in _spi_edges():
        if quotient is Quotient.SP4:
            a, b = project(a), project(b)
        if a != b:
            G.add_edge(a, b)
    return G


@dataclass(frozen=True)
class ComponentId:
    quotient: Quotient
    index: int
    members: tuple

    def __str__(self):
        return f"{self.quotient}#{self.index}"


@lru_cache(maxsize=None)
def components(quotient="SpI") -> tuple[ComponentId, ...]:
    """Connected components, ordered by their smallest member."""
    quotient = Quotient(quotient)
    comps = [tuple(sorted(c)) for c in nx.connected_components(build_component_graph(quotient))]
    comps.sort()
    return tuple(ComponentId(quotient, i, c) for i, c in enumerate(comps))


@lru_cache(maxsize=None)
def _component_of(quotient: Quotient) -> dict:
    return {m: c for c in components(quotient) for m in c.members}


def component_of_label(label: SheetLabel) -> ComponentId:
    return _component_of(label.quotient)[label]


def component_id(t: WonenburgerTriple, quotient="SpI", tol: float = DEFAULT_TOL) -> ComponentId:
    label = quotient_label(t, quotient, tol)
    if label.stratum in BIFURCATION:
        raise OnBifurcationLocus(f"{label.stratum} lies on the bifurcation locus")
    return component_of_label(label)


def adjacent(a: SheetLabel, b: SheetLabel) -> bool:
    G = build_component_graph(a.quotient)
    return a == b or G.has_edge(a, b)


def share_double_wall(a: SheetLabel, b: SheetLabel) -> bool:
    """True when both sheets border a common double-wall sheet."""
    G = build_component_graph(a.quotient)
    if a not in G or b not in G:
        return False
    common = set(G.neighbors(a)) & set(G.neighbors(b))
    return any(n.stratum in GAMMA_D for n in common)


@dataclass(frozen=True)
class ObstructionVerdict:
    obstructed: bool
    reason: str
    components: tuple

    def __str__(self):
        return "obstructed" if self.obstructed else "possibly-connected"


def cylinder_obstruction(t1, t2, quotient="SpI", tol: float = DEFAULT_TOL) -> ObstructionVerdict:
    """Obstructed when the two triples lie in different components.

    A ``possibly-connected`` answer is not a certificate that a cylinder exists.
    """
    c1, c2 = component_id(t1, quotient, tol), component_id(t2, quotient, tol)
    if c1 != c2:
        return ObstructionVerdict(True, "different-component", (c1, c2))
    return ObstructionVerdict(False, "same-component", (c1, c2))
