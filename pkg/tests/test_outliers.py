import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import naive_outliers, naive_quantile

from seqprofile import ParameterError, TimeSeries, UsageError, box_stats, irregularity_fraction, quantile
from seqprofile.outliers import BoxStats

floats = st.floats(min_value=-1e9, max_value=1e9, allow_nan=False)


def ts(values):
    return TimeSeries.from_values(values)


def test_quantile_constant():
    assert quantile([7, 7, 7], 0.25) == 7


def test_quantile_even_median():
    assert quantile([1, 2, 3, 4], 0.5) == 2.5


def test_quantile_against_sorted_formula():
    v = np.random.default_rng(37).uniform(-5, 5, 37).tolist()
    for p in (0.25, 0.5, 0.75):
        assert quantile(v, p) == naive_quantile(v, p)


@pytest.mark.parametrize("values, p, exc", [([], 0.5, UsageError), ([1.0], -0.1, ParameterError),
                                            ([1.0], 1.5, ParameterError)])
def test_quantile_errors(values, p, exc):
    with pytest.raises(exc):
        quantile(values, p)


@given(st.lists(floats, min_size=1, max_size=50))
def test_quantile_endpoints(values):
    assert quantile(values, 0) == min(values)
    assert quantile(values, 1) == max(values)


def test_tukey_hinges():
    # hinges of 1..9 are the medians of 1..5 and 5..9
    assert quantile(range(1, 10), 0.25, "tukey_hinge") == 3
    assert quantile(range(1, 10), 0.75, "tukey_hinge") == 7
    # even n: halves 1..4 and 5..8
    assert quantile(range(1, 9), 0.25, "tukey_hinge") == 2.5
    assert quantile(range(1, 9), 0.75, "tukey_hinge") == 6.5
    with pytest.raises(ParameterError):
        quantile(range(1, 9), 0.1, "tukey_hinge")


def test_constant_series_has_no_outliers():
    b = box_stats(ts([5, 5, 5, 5, 5]))
    assert b.iqr == 0 and b.lower_fence == 5 and b.upper_fence == 5
    assert b.outlier_count == 0 and b.outlier_indices == ()


def test_single_large_value_flagged():
    # q1 = 2, q3 = 4 at h = 1 and 3; fences -1 and 7
    b = box_stats(ts([1, 2, 3, 4, 100]))
    assert (b.q1, b.q2, b.q3, b.iqr) == (2, 3, 4, 2)
    assert (b.lower_fence, b.upper_fence) == (-1, 7)
    assert b.outlier_indices == (4,)


def test_fence_k_must_be_positive():
    for k in (0, -1.5):
        with pytest.raises(ParameterError):
            box_stats(ts([1, 2, 3]), k)


def test_irregularity_fraction():
    zero = box_stats(ts(np.arange(100.0)))
    assert irregularity_fraction(zero) == 0.0
    fake = BoxStats(0, 0, 0, 0, 0, 0, tuple(range(639)), 639, 6135)
    assert irregularity_fraction(fake) == pytest.approx(0.104156, abs=1e-6)
    fake = BoxStats(0, 0, 0, 0, 0, 0, tuple(range(24)), 24, 5000)
    assert irregularity_fraction(fake) == 0.0048


def test_roundtrip_dict():
    b = box_stats(ts([1, 2, 3, 4, 100]))
    assert BoxStats.from_dict(b.to_dict()) == b


@given(st.lists(floats, min_size=1, max_size=200), st.sampled_from([0.5, 1.0, 1.5, 3.0]))
def test_matches_naive_oracle(values, k):
    assert list(box_stats(ts(values), k).outlier_indices) == naive_outliers(values, k)


@given(st.lists(floats, min_size=1, max_size=100), st.sampled_from(["interpolate", "tukey_hinge"]))
def test_invariants(values, rule):
    b = box_stats(ts(values), quantile_rule=rule)
    assert b.q1 <= b.q2 <= b.q3
    assert b.iqr == b.q3 - b.q1 >= 0
    assert b.outlier_count == len(b.outlier_indices)
    assert list(b.outlier_indices) == sorted(set(b.outlier_indices))
    inside = set(range(len(values))) - set(b.outlier_indices)
    assert all(values[i] < b.lower_fence or values[i] > b.upper_fence for i in b.outlier_indices)
    assert all(b.lower_fence <= values[i] <= b.upper_fence for i in inside)
