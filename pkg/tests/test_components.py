import math
import time

import networkx as nx
import numpy as np
import pytest

from symclass.base_plane import ALL_LABELS, BIFURCATION, GAMMA_D, L
from symclass.components import (
    Quotient,
    SheetLabel,
    build_component_graph,
    component_id,
    component_of_label,
    components,
    cylinder_obstruction,
    fiber_size,
    graph_sheets,
    project,
    quotient_label,
)
from symclass.errors import OnBifurcationLocus
from symclass.sampling import diagonal_seed, nonreal_seed, random_R, random_triple
from symclass.signatures import stability_check
from symclass.wonenburger import assemble, gl_action

SPI, SP4 = Quotient.SPI, Quotient.SP4


def sheet(stratum, *d, q=SPI):
    return SheetLabel(q, stratum, tuple(d))


def test_fiber_size_examples():
    assert fiber_size(L.E2) == (4, 4)
    assert fiber_size(L.GD3) == (3, 1)
    assert fiber_size(L.G1_2) == (2, 2)
    assert fiber_size(L.P_2_1) == (1, 1)
    assert fiber_size(L.H_MP) == (4, 1)


def test_fiber_discovery(rng):
    for label in ALL_LABELS:
        spi, sp4 = set(), set()
        for _ in range(60):
            t = random_triple(label, rng)
            spi.add(quotient_label(t, "SpI"))
            sp4.add(quotient_label(t, "Sp4"))
        assert (len(spi), len(sp4)) == fiber_size(label), label


def test_quotient_label_examples():
    t = diagonal_seed([math.cos(2.0), math.cos(1.0)], [1, -1])
    assert quotient_label(t, "SpI") == sheet(L.E2, "+", "-")
    assert quotient_label(t, "Sp4") == sheet(L.E2, "+", "-", q=SP4)
    assert quotient_label(t, "Sp4") != quotient_label(diagonal_seed([math.cos(2.0), math.cos(1.0)], [-1, 1]), "Sp4")
    h = diagonal_seed([1.3, 2.0], [1, -1])
    assert quotient_label(h, "SpI") == sheet(L.H_PP, "+", "-")
    assert quotient_label(h, "Sp4") == sheet(L.H_PP, q=SP4)
    eh = diagonal_seed([0.4, 1.5], [1, -1])
    assert quotient_label(eh, "SpI") == sheet(L.EH_PLUS, "+", "-")
    assert quotient_label(eh, "Sp4") == sheet(L.EH_PLUS, "+", q=SP4)


def test_sheet_str():
    assert str(sheet(L.E2, "+", "-")) == "E2(+,-)"
    assert str(sheet(L.N)) == "N"


def test_component_counts():
    assert len(components("SpI")) == 19
    assert len(components("Sp4")) == 8
    assert build_component_graph("SpI").number_of_nodes() == 34
    assert build_component_graph("Sp4").number_of_nodes() == 17


def test_graph_excludes_bifurcation_locus():
    for q in ("SpI", "Sp4"):
        assert not any(n.stratum in BIFURCATION for n in graph_sheets(q))


def test_graph_node_counts_match_fibers():
    for q, k in (("SpI", 0), ("Sp4", 1)):
        nodes = graph_sheets(q)
        for label in ALL_LABELS:
            if label in BIFURCATION:
                continue
            assert sum(n.stratum is label for n in nodes) == fiber_size(label)[k]


def test_projection_never_splits():
    G4 = build_component_graph("Sp4")
    for comp in components("SpI"):
        images = {project(m) for m in comp.members}
        assert len({component_of_label(i) for i in images}) == 1
        assert all(i in G4 for i in images)


def test_doubly_elliptic_definite_components():
    for s in ("+", "-"):
        comp = component_of_label(sheet(L.E2, s, s))
        assert set(comp.members) == {sheet(L.E2, s, s), sheet(L.GD2, s, s)}


def test_mixed_component():
    comp = component_id(nonreal_seed(1.0, 0.5))
    expected = {sheet(L.N), sheet(L.E2, "+", "-"), sheet(L.E2, "-", "+"),
                sheet(L.H_PP, "+", "-"), sheet(L.H_PP, "-", "+"),
                sheet(L.H_MM, "+", "-"), sheet(L.H_MM, "-", "+")}
    assert expected <= set(comp.members)


def test_strongly_stable_nodes_agree_with_krein(rng):
    for node in graph_sheets("SpI"):
        if node.stratum is L.N:
            t = nonreal_seed(0.9, 1.0)
        else:
            signs = [1.0 if x == "+" else -1.0 for x in node.decoration]
            t = None
            for _ in range(200):
                cand = random_triple(node.stratum, rng, signs=signs, jordan=False)
                if quotient_label(cand) == node:
                    t = cand
                    break
            assert t is not None, node
        assert stability_check(assemble(t)).strongly_stable == node.strongly_stable, node


def test_strongly_stable_set():
    strong = {n for n in graph_sheets("SpI") if n.strongly_stable}
    e2 = {sheet(L.E2, a, b) for a in "+-" for b in "+-"}
    assert strong == e2 | {sheet(L.GD2, "+", "+"), sheet(L.GD2, "-", "-")}


def test_component_id_gl_invariant(rng):
    for label in (L.E2, L.EH_MINUS, L.H_MP, L.N, L.GD1):
        for _ in range(10):
            t = random_triple(label, rng)
            assert component_id(gl_action(random_R(rng), t)) == component_id(t)


def test_component_id_on_locus(rng):
    for label in BIFURCATION:
        with pytest.raises(OnBifurcationLocus):
            component_id(random_triple(label, rng))


def test_obstruction_examples():
    mm = diagonal_seed([math.cos(2.0), math.cos(1.0)], [-1, -1])
    pp = diagonal_seed([math.cos(2.0), math.cos(1.0)], [1, 1])
    v = cylinder_obstruction(mm, pp)
    assert v.obstructed and str(v) == "obstructed"
    e_pm = diagonal_seed([math.cos(2.0), math.cos(1.0)], [1, -1])
    h_mp = diagonal_seed([1.3, 2.0], [-1, 1])
    v = cylinder_obstruction(e_pm, h_mp)
    assert not v.obstructed and str(v) == "possibly-connected"
    limit = diagonal_seed([0.5, 0.5], [-1, -1])
    assert not cylinder_obstruction(mm, limit).obstructed


def test_sp4_merges_hyperbolic_components():
    a = diagonal_seed([1.3, 2.0], [1, 1])
    b = diagonal_seed([1.3, 2.0], [-1, 1])
    assert cylinder_obstruction(a, b, "SpI").obstructed
    assert not cylinder_obstruction(a, b, "Sp4").obstructed


def test_graph_is_symmetric_and_fast():
    build_component_graph.cache_clear()
    components.cache_clear()
    start = time.perf_counter()
    G = build_component_graph("SpI")
    n = nx.number_connected_components(G)
    assert time.perf_counter() - start < 0.01
    assert n == 19
    assert not G.is_directed()


def test_double_wall_nodes():
    for g in GAMMA_D:
        assert sum(n.stratum is g for n in graph_sheets("SpI")) == 3
