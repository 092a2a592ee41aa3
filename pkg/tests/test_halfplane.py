import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from hypsurf import words as W
from hypsurf.halfplane import (
    Geodesic, Isometry, Kind, NotHyperbolicError, Relation, apply, axis, axis_frame, classify,
    enumerate_group, evaluate_word, geodesic_distance, mobius, point_distance, translation_length,
)

finite = st.floats(-50, 50, allow_nan=False)


def random_isometry(rng) -> Isometry:
    a, b, c = rng.normal(size=3)
    while abs(a) < 0.1:
        a = rng.normal()
    return Isometry(a, b, c, (1.0 + b * c) / a)


def disjoint_pairs(n, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        e = rng.standard_cauchy(4)
        if geodesic_distance(Geodesic(e[0], e[1]), Geodesic(e[2], e[3])).relation is Relation.DISJOINT:
            out.append(e)
    return out


def test_distance_vs_minimization_sample():
    for e in disjoint_pairs(60, 7):
        d = geodesic_distance(Geodesic(e[0], e[1]), Geodesic(e[2], e[3])).distance
        assert abs(d - O.minimized_distance(*e)) <= 1e-9 * max(1.0, d)


def test_distance_with_infinite_endpoint():
    d = geodesic_distance(Geodesic(0.0, math.inf), Geodesic(1.0, 2.0)).distance
    assert d == pytest.approx(O.minimized_distance(0.0, math.inf, 1.0, 2.0), rel=1e-10)
    # (0, inf) and (1, x): cosh d = (x + 1) / (x - 1)
    assert d == pytest.approx(math.acosh(3.0), rel=1e-14)


def test_relations():
    assert geodesic_distance(Geodesic(-1, 1), Geodesic(0, 2)).relation is Relation.CROSSING
    assert geodesic_distance(Geodesic(-1, 1), Geodesic(1, 2)).relation is Relation.SHARED_ENDPOINT
    assert geodesic_distance(Geodesic(-1, 1), Geodesic(1, -1)).relation is Relation.EQUAL
    with pytest.raises(ValueError):
        Geodesic(1.0, 1.0)


def test_mobius_invariance_100_triples():
    rng = np.random.default_rng(3)
    for e in disjoint_pairs(100, 11):
        m = random_isometry(rng)
        g1, g2 = Geodesic(e[0], e[1]), Geodesic(e[2], e[3])
        d0 = geodesic_distance(g1, g2).distance
        d1 = geodesic_distance(apply(m, g1), apply(m, g2)).distance
        assert abs(d0 - d1) <= 1e-9 * max(1.0, d0)


@given(st.floats(0.01, 20.0))
def test_dilation_translation_length(t):
    m = Isometry.dilation(t)
    assert classify(m) is Kind.HYPERBOLIC
    assert translation_length(m) == pytest.approx(t, rel=1e-12)


def test_classify_kinds():
    assert classify(Isometry.identity()) is Kind.IDENTITY
    assert classify(Isometry(1.0, 1.0, 0.0, 1.0)) is Kind.PARABOLIC
    th = 0.3
    assert classify(Isometry(math.cos(th), -math.sin(th), math.sin(th), math.cos(th))) is Kind.ELLIPTIC
    with pytest.raises(NotHyperbolicError):
        axis(Isometry(1.0, 1.0, 0.0, 1.0))


def test_isometry_normalizes_determinant_and_sign():
    m = Isometry(-2.0, 0.0, 0.0, -2.0)
    assert (m.a, m.d) == (1.0, 1.0)
    with pytest.raises(ValueError):
        Isometry(1.0, 2.0, 2.0, 1.0)


def test_axis_frame_diagonalizes():
    rng = np.random.default_rng(5)
    for _ in range(50):
        m = random_isometry(rng)
        if classify(m) is not Kind.HYPERBOLIC:
            continue
        f = axis_frame(m)
        n = m.conj(f)
        assert abs(n.b) + abs(n.c) <= 1e-8 * (abs(n.a) + abs(n.d))
        assert n.a > n.d  # attracting fixed point at infinity


@given(finite, st.floats(0.01, 10), finite, st.floats(0.01, 10))
@settings(max_examples=50)
def test_point_distance_invariant(x1, y1, x2, y2):
    rng = np.random.default_rng(int(abs(x1) * 1000) % 2**32)
    m = random_isometry(rng)
    z, w = complex(x1, y1), complex(x2, y2)

    def act(p):
        return (m.a * p + m.b) / (m.c * p + m.d)

    d0, d1 = point_distance(z, w), point_distance(act(z), act(w))
    assert d1 == pytest.approx(d0, rel=1e-6, abs=1e-7)


def test_mobius_at_infinity():
    m = Isometry(2.0, 1.0, 1.0, 1.0)
    assert mobius(m, math.inf) == 2.0
    assert math.isinf(mobius(m, -1.0))


def test_words_reduce_and_invert():
    assert W.reduce("abBA") == ""
    assert W.reduce("aabB") == "aa"
    assert W.invert("abC") == "cBA"
    assert W.power("ab", -2) == "BABA"
    assert len(list(W.reduced_words(2, 3))) == 4 + 12 + 36


@given(st.text(alphabet="aAbBcC", max_size=12))
def test_word_inverse_evaluates_to_inverse(word):
    gens = [Isometry(2.0, 1.0, 1.0, 1.0), Isometry(1.0, 0.5, 1.0, 1.5), Isometry.dilation(0.7)]
    m = evaluate_word(gens, word) @ evaluate_word(gens, W.invert(word))
    assert m.close_to(Isometry.identity(), 1e-6)


def test_enumerate_group_free_group_count():
    gens = [Isometry(3.0, 0.0, 0.0, 1 / 3), Isometry(5 / 3, 4 / 3, 4 / 3, 5 / 3)]
    out = enumerate_group(gens, 3)
    assert len(out) == 4 + 12 + 36
    assert out[0][1] == "a"
