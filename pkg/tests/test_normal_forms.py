import itertools
import math

import numpy as np
import pytest

from conftest import e2_form
from symclass.base_plane import GAMMA_1, GAMMA_M1, L, SINGULAR_POINTS, classify_triple
from symclass.errors import StructureViolation
from symclass.matcore import char_poly
from symclass.normal_forms import normal_form
from symclass.sampling import diagonal_seed, jordan_seed, nonreal_seed, random_R, random_triple
from symclass.signatures import Sign
from symclass.wonenburger import WonenburgerTriple, assemble, gl_action, structure_residuals

SIGNS = list(itertools.product((1.0, -1.0), repeat=2))


def _sign(x):
    return Sign.POSITIVE if x > 0 else Sign.NEGATIVE


# tabulated diagonal forms: (stratum, mus, expected params)
TABLE = [
    (L.E2, (math.cos(2.0), math.cos(1.0)), (2.0, 1.0)),
    (L.EH_PLUS, (math.cos(1.2), math.cosh(0.7)), (1.2, 0.7)),
    (L.EH_MINUS, (-math.cosh(0.9), math.cos(0.5)), (0.9, 0.5)),
    (L.H_PP, (math.cosh(0.4), math.cosh(1.1)), (0.4, 1.1)),
]


@pytest.mark.parametrize("stratum, mus, params", TABLE)
@pytest.mark.parametrize("signs", SIGNS)
def test_tabulated_forms_are_fixed(stratum, mus, params, signs):
    t = diagonal_seed(mus, signs)
    nf = normal_form(t)
    assert nf.stratum.label is stratum
    assert nf.params == pytest.approx(params, abs=1e-12)
    assert nf.signs == tuple(_sign(s) for s in signs)
    assert nf.representative.allclose(t, 1e-12)


@pytest.mark.parametrize("stratum, mus, params", TABLE)
@pytest.mark.parametrize("signs", SIGNS)
def test_round_trip(stratum, mus, params, signs, rng):
    t = diagonal_seed(mus, signs)
    for _ in range(10):
        R = random_R(rng)
        nf = normal_form(gl_action(R, t))
        assert nf.params == pytest.approx(params, abs=1e-6)
        assert nf.signs == tuple(_sign(s) for s in signs)
        assert nf.realizing is not None
        assert gl_action(nf.realizing, gl_action(R, t)).allclose(nf.representative, 1e-6)


def test_e2_example():
    nf = normal_form(e2_form(math.pi / 3, math.pi / 4))
    assert nf.params == pytest.approx((math.pi / 3, math.pi / 4))
    assert nf.signs == (Sign.NEGATIVE, Sign.NEGATIVE)


def test_nonreal_form():
    r, th = 1.3, 0.8
    nf = normal_form(nonreal_seed(r, th))
    assert nf.stratum.label is L.N
    assert nf.params == pytest.approx((r, th))
    rep = nf.representative
    assert np.allclose(rep.B, np.diag([1.0, -1.0]))
    c, s = math.cos(2 * th), math.sin(2 * th)
    # C = B (A^2 - I); the lower right entry is 1 - r^2 cos 2 theta
    expect = np.array([[r * r * c - 1, -r * r * s], [-r * r * s, 1 - r * r * c]])
    assert np.allclose(rep.C, expect)
    assert max(structure_residuals(rep.A, rep.B, rep.C).values()) < 1e-12


def test_nonreal_round_trip(rng):
    for _ in range(50):
        r, th = rng.uniform(0.3, 2.0), rng.uniform(0.1, math.pi - 0.1)
        t = gl_action(random_R(rng), nonreal_seed(r, th))
        nf = normal_form(t)
        assert nf.params == pytest.approx((r, th), abs=1e-6)
        assert nf.realizing is not None


def test_representative_preserves_char_poly(rng):
    labels = [L.E2, L.EH_PLUS, L.EH_MINUS, L.H_PP, L.H_MP, L.H_MM, L.N, L.GD1, L.GD2, L.GD3]
    labels += list(GAMMA_1) + list(GAMMA_M1) + list(SINGULAR_POINTS)
    for label in labels:
        for _ in range(10):
            t = random_triple(label, rng)
            nf = normal_form(t)
            assert nf.stratum.label is label
            assert np.allclose(char_poly(nf.matrix).coef, char_poly(assemble(t)).coef, atol=1e-7)
            assert classify_triple(nf.representative).label is label


def test_idempotent(rng):
    for label in (L.E2, L.N, L.GD2, L.GD3, L.G1_2, L.GM1_3, L.P_0_M1):
        for _ in range(10):
            nf = normal_form(random_triple(label, rng))
            again = normal_form(nf.representative)
            assert again.representative.allclose(nf.representative, 1e-9)
            assert again.signs == nf.signs


@pytest.mark.parametrize("signs", [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)])
def test_double_wall_forms(signs, rng):
    t = diagonal_seed([0.3, 0.3], signs)
    expected = tuple(sorted(_sign(s) for s in signs))[::-1]
    for _ in range(10):
        nf = normal_form(gl_action(random_R(rng), t))
        assert nf.stratum.label is L.GD2
        assert nf.signs == tuple(sorted(nf.signs, key=[Sign.POSITIVE, Sign.NEGATIVE].index))
        assert set(nf.signs) == set(expected)
        assert nf.realizing is not None


def test_jordan_double_wall_collapses():
    t = jordan_seed(0.3, 1.0, 0.5)
    nf = normal_form(t)
    assert nf.stratum.label is L.GD2
    assert np.allclose(nf.representative.A, 0.3 * np.eye(2))
    assert nf.realizing is None


def test_parabolic_wall_zeroes_unit_eigenline():
    t = WonenburgerTriple(np.diag([1.0, 0.4]), np.diag([2.0, -math.sqrt(0.84)]), np.diag([0.0, math.sqrt(0.84)]))
    nf = normal_form(t)
    assert nf.stratum.label is L.G1_2
    # ordered by eigenvalue, so the unit eigenline comes second
    assert nf.signs == (Sign.NEGATIVE, Sign.ZERO)
    assert nf.representative.B[1, 1] == 0 and nf.representative.C[1, 1] == 0
    assert nf.realizing is None


@pytest.mark.parametrize(
    "label, expected",
    [(L.P_2_1, np.eye(4)), (L.P_M2_1, -np.eye(4)), (L.P_0_M1, np.diag([1.0, -1.0, 1.0, -1.0]))],
)
def test_singular_collapse(label, expected, rng):
    for _ in range(50):
        nf = normal_form(random_triple(label, rng))
        assert np.array_equal(nf.matrix, expected)


def test_invalid_input():
    t = WonenburgerTriple(np.eye(2), np.eye(2), np.eye(2))
    with pytest.raises(StructureViolation):
        normal_form(t)


def test_to_dict():
    d = normal_form(e2_form(2.0, 1.0, 1, -1)).to_dict()
    assert d["stratum"] == "E2"
    assert d["signs"] == ["+", "-"]
    assert len(d["representative"]["A"]) == 2
