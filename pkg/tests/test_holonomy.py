import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from conftest import word_traces
from hypsurf.halfplane import Kind, classify
from hypsurf.holonomy import (
    EllipticError, FNSurface, Gluing, GluingError, build_chain, build_one_holed_torus, build_pants,
    curve_length, flute, torus_from_traces, x_piece,
)
from hypsurf.hyptrig import hexagon_opposite
from hypsurf.identities import arc_length

lengths = st.floats(0.3, 6.0)


@given(lengths, lengths, lengths)
@settings(max_examples=40)
def test_pants_roundtrip(l1, l2, l3):
    g = build_pants(l1, l2, l3)
    for lab, want in zip("123", (l1, l2, l3)):
        assert curve_length(g, g.boundary_words[lab]) == pytest.approx(want, abs=1e-9)


@given(lengths, lengths, lengths, lengths, lengths, st.floats(-3, 3))
@settings(max_examples=30, deadline=None)
def test_x_piece_roundtrip(b1, b2, b3, b4, cuff, twist):
    g = build_chain(x_piece((b1, b2, b3, b4), cuff, twist))
    for lab, want in zip("1234", (b1, b2, b3, b4)):
        assert abs(curve_length(g, g.boundary_words[lab]) - want) <= 1e-9
    assert abs(curve_length(g, g.cuff_words["c0"]) - cuff) <= 1e-9


def test_flute_roundtrip():
    alpha, beta = [0.0, 1.0, 1.5, 2.0, 2.5, 3.0], [1.0, 2.0, 3.0, 4.0, 5.0]
    g = build_chain(flute(alpha, beta, [0.1, 0.2, 0.3, 0.4]))
    got = sorted(curve_length(g, w) for w in g.cuff_words.values())
    assert got == pytest.approx([1.0, 1.5, 2.0, 2.5], abs=1e-9)
    assert sorted(g.boundary_lengths.values()) == pytest.approx(sorted([0.0, 3.0] + beta))


def test_seam_at_zero_twist():
    # shortest arc between two boundaries of one pants is the seam
    g = build_pants(1.0, 2.0, 3.0)
    assert arc_length(g, "1", "2", "") == pytest.approx(hexagon_opposite(1.5, 0.5, 1.0), rel=1e-12)


def test_torus_seam_offset_and_dehn_twist():
    cuff, bd = 2.0, 1.0
    h = hexagon_opposite(bd / 2, cuff / 2, cuff / 2)
    for t in (-0.7, 0.0, 0.3, 1.0, 2.5):
        g = build_one_holed_torus(cuff, t, bd)
        lb = curve_length(g, "b")
        # b closes orthogonally at half a turn of the seams
        assert math.cosh(lb / 2) == pytest.approx(math.cosh(h / 2) * math.cosh((t - cuff / 2) / 2), rel=1e-12)
        # a full positive twist turns b into ab
        g2 = build_one_holed_torus(cuff, t + cuff, bd)
        assert curve_length(g2, "b") == pytest.approx(curve_length(g, "ab"), rel=1e-10)


def test_x_piece_dehn_twist_prepends_cuff():
    cuff = 2.0
    for t in (0.0, 0.4):
        g = build_chain(x_piece((1, 2, 3, 4), cuff, t))
        g2 = build_chain(x_piece((1, 2, 3, 4), cuff, t + cuff))
        assert arc_length(g2, "1", "3", "") == pytest.approx(arc_length(g, "1", "3", "a"), rel=1e-10)


def test_torus_from_traces():
    g = torus_from_traces(3.0, 3.0, 4.0)
    kappa = O.commutator_trace(3, 3, 4)
    assert curve_length(g, "abAB") == pytest.approx(2 * math.acosh(-kappa / 2), rel=1e-12)
    assert curve_length(g, "abAB") == pytest.approx(2 * math.acosh(2.0), rel=1e-12)
    assert curve_length(g, "a") == pytest.approx(2 * math.acosh(1.5), rel=1e-13)
    with pytest.raises(ValueError):
        torus_from_traces(3.0, 3.0, 1.0)
    with pytest.raises(ValueError):
        torus_from_traces(2.1, 2.1, 2.1)  # commutator trace above -2


@pytest.mark.parametrize("fn", [
    FNSurface([(4.0, 4.0, 4.0)]),
    FNSurface([(2.0, 3.0, 5.0)]),
    x_piece((1.0, 2.0, 3.0, 4.0), 2.0, 0.5),
    FNSurface([(2.0, 2.0, 1.0)], [Gluing((0, 0), (0, 1), 0.3)], {"1": (0, 2)}),
])
def test_discreteness_up_to_length_8(fn):
    g = build_chain(fn)
    tr = word_traces(g.local_generators(0 if g.frames else None), 8)
    assert tr.min() > 2.0
    assert 2.0 * np.arccosh(tr.min() / 2.0) >= 1e-6


def test_json_roundtrip(tmp_path):
    fn = x_piece((1.0, 2.0, 3.0, 4.0), 2.0, 0.25)
    back = FNSurface.from_json(fn.to_json())
    assert back == fn
    d = json.loads(fn.to_json())
    assert d["twists"] == [0.25]


def test_gluing_errors():
    with pytest.raises(GluingError):
        FNSurface([(1.0, 2.0, 3.0)], [Gluing((0, 0), (0, 1), 0.0)])  # lengths differ
    with pytest.raises(GluingError):
        FNSurface([(1.0, 1.0, 0.0)], [Gluing((0, 0), (0, 2), 0.0)])  # cusp glued
    with pytest.raises(GluingError):
        FNSurface([(1.0, 1.0, 1.0)], [], {"1": (0, 0)})  # unlabeled slots
    with pytest.raises(GluingError):
        FNSurface([(1.0, -1.0, 1.0)])


def test_cusp_boundary_is_parabolic():
    g = build_pants(1.0, 2.0, 0.0)
    assert classify(g.element(g.boundary_words["3"])) is Kind.PARABOLIC
    assert curve_length(g, g.boundary_words["3"]) == 0.0


def test_curve_length_rejects_identity():
    g = build_pants(1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        curve_length(g, "aA")
    assert issubclass(EllipticError, ValueError)
