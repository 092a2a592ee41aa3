import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypsurf.holonomy import FNSurface, flute
from hypsurf.hyptrig import LOG2, pentagon_distance
from hypsurf.starcheck import (
    POLYGON_CONSTANT, SHIGA_FAMILIES, CuffFamily, NonIncreasingError, UnknownRuleError, ZeroLengthError,
    collar_insert_check, constant_alpha_flute, halving_flute_check, lemma52_bounds, polygon_example_check,
    prop54_bounds, shiga_check, tight_flute_check,
)


def nondecreasing(xs):
    return all(b >= a for a, b in zip(xs, xs[1:]))


@pytest.mark.parametrize("seq", [lambda n: n + 1.0, lambda n: math.log(n + 2.0), lambda n: 0.5 + 0.1 * n])
def test_lemma52_bound_holds(seq):
    rep = lemma52_bounds(1.0, seq, 200)
    assert rep.passed and nondecreasing(rep.running_sup)


def test_lemma52_d_tends_to_limit():
    rep = lemma52_bounds(1.0, lambda n: n + 1.0, 200)
    assert rep.values["d"][-1] == pytest.approx(rep.extra["d_limit"], abs=1e-9)


@given(st.floats(0.2, 3.0), st.floats(0.2, 3.0))
@settings(max_examples=30)
def test_lemma52_random_start(l0, l1):
    rep = lemma52_bounds(l0, lambda n: l1 + n, 50)
    assert rep.passed


def test_lemma52_errors():
    with pytest.raises(NonIncreasingError):
        lemma52_bounds(1.0, [1.0, 1.0, 2.0], 3)
    with pytest.raises(ZeroLengthError):
        lemma52_bounds(0.0, [1.0, 2.0], 2)


def test_prop54_sums():
    rep = prop54_bounds(lambda n: 1.0, lambda n: 1.0, 20)
    gaps = rep.extra["cuff_distances"]
    assert rep.extra["cuff_distance_sums"][-1] == pytest.approx(sum(gaps))
    assert math.isfinite(rep.bound) is False and rep.passed


def test_constant_alpha_flute():
    rep = constant_alpha_flute(0.5, lambda n: 1.0 + n, 50)
    assert rep.passed and rep.extra["envelope_holds"]


def test_tight_flute_halving():
    t = halving_flute_check(40)
    assert abs(t.total_with_tail - (LOG2 + 2.0)) <= 1e-12
    assert t.cross_check <= 1e-10
    assert abs(t.majorant_values[-1] - 8.0) <= 1e-6
    assert abs(t.condition_values[-1] - 6.0) <= 1e-6


def test_tight_flute_matches_surface_distances():
    ls = [1.0, 1.5, 2.0, 2.5, 3.0, 3.5]
    t = tight_flute_check(ls, 5)
    for i in range(1, 5):
        assert t.d_seq[i] == pytest.approx(pentagon_distance(ls[i - 1], ls[i]), abs=1e-10)


def test_collar_insert():
    r = collar_insert_check(1000)
    assert r.max_mismatch <= 1e-12
    assert abs(r.lengths[-1] - 2.0) <= 1e-3
    assert r.n0 is not None and all(abs(v - 2.0) <= 1e-3 for v in r.lengths[r.n0 - 1:])


def test_polygon_example():
    rep = polygon_example_check(range(3, 101))
    assert rep.passed and rep.extra["beta_increasing"]
    assert rep.extra["worst"]["beta_identity"] <= 1e-10
    assert POLYGON_CONSTANT == pytest.approx(2 * math.asinh(2.0))
    with pytest.raises(ValueError):
        polygon_example_check([2])


def test_shiga_families():
    assert shiga_check(SHIGA_FAMILIES["unit-flute"]).bounded
    assert not shiga_check(SHIGA_FAMILIES["growing-beta-flute"]).bounded
    assert not shiga_check(SHIGA_FAMILIES["collar-insert-flute"]).bounded
    fin = flute([0.0, 1.0, 2.0], [1.0, 1.0])
    assert shiga_check(fin).bounded
    with pytest.raises(UnknownRuleError):
        shiga_check(CuffFamily("x", "wobbly", lambda n: 1.0))


def test_bound_report_csv():
    rep = lemma52_bounds(1.0, lambda n: n + 1.0, 3)
    lines = rep.to_csv().splitlines()
    assert lines[0] == "n,a,b,c,d,running_sup" and len(lines) == 4
