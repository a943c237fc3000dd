from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from arrowlab import cube
from arrowlab.cube import (
    BooleanFunction,
    FourierExpansion,
    RealCubeFunction,
    dual,
    flip_inputs,
    inverse_walsh,
    noise_correlation,
    noise_operator,
    q_norm,
    walsh_transform,
)
from arrowlab.errors import DimensionError, EncodingError, ResourceError
from conftest import boolean_functions, function_pairs

MAJ3 = BooleanFunction(3, np.array([0, 0, 0, 1, 0, 1, 1, 1], dtype=np.uint8))


def test_majority3_coefficients():
    e = walsh_transform(MAJ3)
    assert list(e.coeffs) == [0.5, 0.25, 0.25, 0.0, 0.25, 0.0, 0.0, -0.25]


def test_dictator_coefficients():
    d = BooleanFunction.from_callable(4, lambda b: b[2])
    e = walsh_transform(d)
    expected = np.zeros(16)
    expected[0] = 0.5
    expected[1 << 2] = 0.5
    assert np.array_equal(e.coeffs, expected)


@given(boolean_functions(max_n=5))
@settings(max_examples=60, deadline=None)
def test_transform_matches_definition(f):
    e = walsh_transform(f)
    table = [int(b) for b in f.table]
    for mask in range(1 << f.n):
        assert e[mask] == float(oracles.walsh_coefficient(table, f.n, mask))


@given(boolean_functions(max_n=8))
@settings(max_examples=60, deadline=None)
def test_round_trip_and_parseval(f):
    e = walsh_transform(f)
    back = inverse_walsh(e)
    assert np.array_equal(back.values, f.table.astype(float))
    assert e.mean == pytest.approx(f.expectation)
    # Boolean: E[f^2] = E[f]
    assert float(np.sum(e.coeffs**2)) == pytest.approx(f.expectation, abs=1e-12)


@given(boolean_functions(max_n=7))
@settings(max_examples=60, deadline=None)
def test_dual_coefficient_signs(f):
    a = walsh_transform(f).coeffs
    b = walsh_transform(dual(f)).coeffs
    pc = cube.popcounts(f.n)
    assert b[0] == pytest.approx(1 - a[0])
    sign = np.where(pc % 2 == 1, 1.0, -1.0)
    assert np.allclose(b[1:], (sign * a)[1:], atol=1e-15)
    assert dual(dual(f)) == f


@given(boolean_functions(max_n=7))
@settings(max_examples=40, deadline=None)
def test_flip_inputs_is_table_reversal(f):
    g = flip_inputs(f)
    top = (1 << f.n) - 1
    assert all(g(x) == f(top ^ x) for x in range(1 << f.n))


@given(function_pairs(max_n=4), st.sampled_from([Fraction(-1, 3), Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)]))
@settings(max_examples=60, deadline=None)
def test_noise_correlation_matches_definition(pair, eps):
    f, g = pair
    got = noise_correlation(f, g, float(eps))
    want = oracles.noise_correlation(list(f.table), list(g.table), f.n, eps)
    assert got == pytest.approx(float(want), abs=1e-12)


@given(function_pairs(max_n=6))
@settings(max_examples=40, deadline=None)
def test_noise_correlation_endpoints(pair):
    f, g = pair
    assert noise_correlation(f, g, 0.0) == pytest.approx(f.expectation * g.expectation)
    same = np.mean(f.table.astype(float) * g.table)
    assert noise_correlation(f, g, 1.0) == pytest.approx(same)
    # eps = -1 pairs x with its complement
    flipped = np.mean(f.table.astype(float) * g.table[::-1])
    assert noise_correlation(f, g, -1.0) == pytest.approx(flipped)


@given(boolean_functions(max_n=6), st.floats(0, 1))
@settings(max_examples=40, deadline=None)
def test_noise_operator_preserves_mean_and_range(f, eps):
    t = noise_operator(f, eps)
    assert t.mean() == pytest.approx(f.expectation)
    assert t.values.min() >= -1e-12 and t.values.max() <= 1 + 1e-12


def test_noise_operator_rejects_negative():
    with pytest.raises(ValueError):
        noise_operator(MAJ3, -0.1)
    with pytest.raises(ValueError):
        noise_correlation(MAJ3, MAJ3, 1.5)


def test_noise_correlation_arity_mismatch():
    with pytest.raises(DimensionError):
        noise_correlation(MAJ3, BooleanFunction(2, np.zeros(4, np.uint8)), 0.5)


def test_accepts_precomputed_expansions():
    e = walsh_transform(MAJ3)
    assert noise_correlation(e, e, 1 / 3) == noise_correlation(MAJ3, MAJ3, 1 / 3)


def test_real_function_transform():
    v = RealCubeFunction(2, np.array([1.0, -2.0, 0.5, 3.0]))
    assert np.allclose(inverse_walsh(walsh_transform(v)).values, v.values)
    with pytest.raises(ValueError):
        RealCubeFunction(1, np.array([np.nan, 1.0]))


def test_q_norm():
    assert q_norm(MAJ3, 2) == pytest.approx(0.5**0.5)
    assert q_norm(RealCubeFunction(1, np.array([-3.0, 4.0])), 1) == 3.5
    with pytest.raises(ValueError):
        q_norm(MAJ3, 0.5)


@pytest.mark.parametrize(
    "n, hexstr",
    [(3, "e8"), (1, "02"), (0, "01"), (4, "0080")],
)
def test_hex_round_trip_examples(n, hexstr):
    f = BooleanFunction.from_hex(n, hexstr)
    assert f.to_hex() == hexstr
    assert BooleanFunction.from_dict(f.to_dict()) == f


def test_majority3_hex():
    assert MAJ3.to_hex() == "e8"


@given(boolean_functions(min_n=0, max_n=9))
@settings(max_examples=60, deadline=None)
def test_hex_round_trip(f):
    assert BooleanFunction.from_hex(f.n, f.to_hex()) == f


@pytest.mark.parametrize(
    "d, field",
    [
        ({"hex": "e8"}, "'n'"),
        ({"n": 3}, "'hex'"),
        ({"n": 3, "hex": "e"}, "expected 2 digits"),
        ({"n": 3, "hex": "g8"}, "hex"),
        ({"n": 1, "hex": "06"}, "padding"),
        ({"n": -1, "hex": "00"}, "'n'"),
    ],
)
def test_bad_tables_name_the_field(d, field):
    with pytest.raises(EncodingError, match=field):
        BooleanFunction.from_dict(d)


def test_table_validation():
    with pytest.raises(DimensionError):
        BooleanFunction(2, np.zeros(3, np.uint8))
    with pytest.raises(EncodingError):
        BooleanFunction(1, np.array([0, 2]))
    with pytest.raises(DimensionError):
        FourierExpansion(2, np.zeros(5))


def test_table_is_immutable():
    with pytest.raises(ValueError):
        MAJ3.table[0] = 1


def test_level_values_and_restrict():
    assert list(MAJ3.level_values()) == [0, 0, 1, 1]
    d = BooleanFunction.from_callable(3, lambda b: b[0])
    assert d.level_values() is None
    r = MAJ3.restrict(2, 1)
    assert r == BooleanFunction.from_callable(2, lambda b: int(b[0] or b[1]))
    assert MAJ3.restrict(3, 0) == BooleanFunction.from_callable(2, lambda b: b[0] & b[1])


def test_cap(monkeypatch):
    monkeypatch.setenv("ARROWLAB_CAP", "2")
    with pytest.raises(ResourceError) as info:
        walsh_transform(MAJ3)
    assert info.value.flag == "--cap"
    cube.set_cap(5)
    assert cube.get_cap() == 5
    walsh_transform(MAJ3)
