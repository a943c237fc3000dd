from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrowlab import cube
from arrowlab.cube import dual, flip_inputs, noise_correlation
from arrowlab.errors import EncodingError, ResourceError
from arrowlab.generators import (
    GeneratorSpec,
    constant,
    dictator,
    function_from_json,
    tail_majority_gswf,
    majority,
    minimal_p_gswf,
    random_function,
    tail_probability,
    threshold,
    threshold_for_expectation,
    tightness_main1,
    tightness_main2,
)
from arrowlab.metrics import d2, d2_prime
from arrowlab.social import p_nontransitive_exact, p_nontransitive_fourier


def test_threshold_examples():
    assert threshold(3, 2) == majority(3)
    assert threshold(3, 2).expectation == 0.5
    assert threshold(5, 6).expectation == 0
    assert threshold(5, 5).expectation == 2**-5
    assert threshold(4, 0).expectation == 1


@given(st.integers(1, 9), st.data())
@settings(max_examples=40, deadline=None)
def test_thresholds_are_monotone(n, data):
    l = data.draw(st.integers(0, n + 1))
    t = threshold(n, l).table
    for i in range(n):
        lo = np.array([x for x in range(1 << n) if not (x >> i) & 1])
        assert np.all(t[lo] <= t[lo | (1 << i)])
    assert Fraction(int(t.sum()), 1 << n) == tail_probability(n, l)


def test_threshold_for_expectation_examples():
    assert threshold_for_expectation(6, 1.0) == (0, 1.0)
    assert threshold_for_expectation(7, 0.5) == (4, 0.5)
    assert threshold_for_expectation(8, 1 - 2**-8)[0] == 1


@given(st.integers(1, 20), st.floats(0, 1))
def test_threshold_for_expectation_is_nearest(n, p):
    l, achieved = threshold_for_expectation(n, p)
    err = abs(achieved - p)
    tails = [float(tail_probability(n, j)) for j in range(n + 2)]
    assert err <= min(abs(t - p) for t in tails) + 1e-15
    exact_hit = [j for j, t in enumerate(tails) if t == p]
    if exact_hit:
        assert err == 0 and l == max(exact_hit)


def test_threshold_for_expectation_ties_to_larger_level():
    # n = 1: tails are 1, 1/2, 0; target 1/4 sits between 1/2 and 0
    assert threshold_for_expectation(1, 0.25)[0] == 2


def test_small_functions():
    assert list(dictator(2, 1).table) == [0, 1, 0, 1]
    assert list(dictator(2, 2, negate=True).table) == [1, 1, 0, 0]
    assert constant(3, 1).expectation == 1
    assert random_function(8, 42) == random_function(8, 42)
    assert random_function(8, 42) != random_function(8, 43)
    with pytest.raises(ValueError):
        majority(4)
    with pytest.raises(ValueError):
        threshold(3, 5)


def test_tightness_main1_collapse():
    con = tightness_main1(14, 0.1)
    f, g, h = con.gswf.functions
    assert f.ones == 0
    assert con.eps_achieved == pytest.approx(1 - g.expectation)
    p = p_nontransitive_fourier(con.gswf)
    assert p == pytest.approx(noise_correlation(g.complement(), dual(h), 1 / 3), abs=1e-15)
    assert d2_prime(con.gswf).value == 0


def test_tightness_main2_properties():
    con = tightness_main2(15, 1 / 16)
    F = con.gswf
    f, g, h = F.functions
    assert d2(F).value == pytest.approx(con.eps_achieved)
    assert g.expectation == pytest.approx(1 - con.eps_achieved)
    assert h.expectation == 0.5
    p = p_nontransitive_fourier(F)
    upper = noise_correlation(flip_inputs(f), h, 1 / 3) + noise_correlation(g.complement(), dual(h), 1 / 3)
    assert p <= upper + 1e-15
    # both pairs are opposed Hamming balls: a lower ball against an upper one
    for lower in (flip_inputs(f), g.complement()):
        lv = lower.level_values()
        assert lv is not None and lv[0] == 1 and lv[-1] == 0


def test_tightness_rejects_coarse_grids():
    with pytest.raises(ValueError):
        tightness_main1(6, 1e-4)
    with pytest.raises(ValueError):
        tightness_main2(8, 0.1)


@pytest.mark.parametrize("n", range(1, 7))
def test_minimal_p_is_six_to_minus_n(n):
    assert p_nontransitive_exact(minimal_p_gswf(n).gswf) == Fraction(1, 6**n)


def test_tail_majority_levels_and_d2():
    con = tail_majority_gswf(7)
    assert con.levels == (7, 1, 4)
    assert d2(con.gswf).exact == Fraction(1, 2**7)
    assert p_nontransitive_fourier(con.gswf) == pytest.approx(float(p_nontransitive_exact(con.gswf)), abs=1e-15)


@pytest.mark.parametrize(
    "spec",
    [
        {"type": "threshold", "n": 4, "l": 2},
        {"type": "dictator", "n": 3, "voter": 2, "negate": True},
        {"type": "constant", "n": 2, "value": 0},
        {"type": "majority", "n": 5},
        {"type": "random", "n": 6, "seed": 9},
        {"type": "table", "n": 3, "hex": "e8"},
    ],
)
def test_generator_spec_round_trip(spec):
    gs = GeneratorSpec.from_dict(spec)
    assert gs.to_dict() == spec
    assert function_from_json(spec) == gs.build()


@pytest.mark.parametrize(
    "spec, field",
    [
        ({"type": "wave", "n": 3}, "wave"),
        ({"type": "threshold", "n": 3}, "'l'"),
        ({"type": "threshold", "n": 3, "l": 9}, "'l'"),
        ({"type": "dictator", "n": 3, "voter": 4}, "'voter'"),
        ({"type": "constant", "n": 3, "value": 2}, "'value'"),
        ({"type": "majority", "n": 4}, "'n'"),
        ({"type": "random", "n": 3}, "'seed'"),
    ],
)
def test_generator_spec_errors_name_field(spec, field):
    with pytest.raises(EncodingError, match=field):
        function_from_json(spec)


def test_spec_without_type():
    with pytest.raises(EncodingError, match="'type'"):
        GeneratorSpec.from_dict({"n": 3})
    # without a type tag the entry is read as a truth table
    with pytest.raises(EncodingError, match="'hex'"):
        function_from_json({"n": 3})


def test_function_from_json_truth_table():
    assert function_from_json({"n": 3, "hex": "e8"}) == majority(3)
    with pytest.raises(EncodingError):
        function_from_json([1, 0])


def test_cap_applies_to_generators():
    cube.set_cap(4)
    with pytest.raises(ResourceError):
        threshold(5, 2)
