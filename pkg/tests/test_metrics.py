import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from seqprofile import (EvalReport, ParameterError, PredictionPair, R2UndefinedError, UsageError,
                        evaluate, rank_reports)

vals = st.floats(min_value=-1e4, max_value=1e4, allow_nan=False)


def test_perfect_fit():
    y = [1.0, 4.0, 2.0, 8.0]
    r = evaluate(PredictionPair(y, y))
    assert (r.mae, r.mse, r.rmse, r.r2) == (0, 0, 0, 1)


def test_hand_computed():
    # ybar = 2, SS_tot = 2, SS_res = 2
    r = evaluate(PredictionPair([1, 2, 3], [2, 2, 2]))
    assert r.mae == pytest.approx(2 / 3, abs=1e-12)
    assert r.mse == pytest.approx(2 / 3, abs=1e-12)
    assert r.rmse == pytest.approx(0.8164965809, abs=1e-9)
    assert r.r2 == 0


def test_constant_actuals():
    with pytest.raises(R2UndefinedError) as info:
        evaluate(PredictionPair([5, 5, 5], [4, 5, 7]))
    r = info.value.report
    assert r.r2 is None
    assert r.mae == pytest.approx(1.0) and r.mse == pytest.approx(5 / 3)


def test_efficiency():
    pair = PredictionPair([1, 2, 3], [1, 2, 4])
    r = evaluate(pair, param_count=1000, exec_time_seconds=2.5)
    assert r.efficiency == 0.0025
    assert evaluate(pair, param_count=1000).efficiency is None
    assert evaluate(pair, exec_time_seconds=1.0).efficiency is None


@pytest.mark.parametrize("kwargs", [{"param_count": 0}, {"param_count": 2.5}, {"exec_time_seconds": 0.0},
                                    {"exec_time_seconds": -1.0}])
def test_bad_optional_inputs(kwargs):
    with pytest.raises(ParameterError):
        evaluate(PredictionPair([1, 2], [1, 2]), **kwargs)


@pytest.mark.parametrize("y, yhat", [([], []), ([1.0], [1.0, 2.0]), ([1.0, math.inf], [1.0, 2.0])])
def test_pair_validation(y, yhat):
    with pytest.raises(ParameterError):
        PredictionPair(y, yhat)


def _report(rmse, mae, r2=0.5, n=10):
    return EvalReport(mae, rmse * rmse, rmse, r2, n)


def test_rank_single_and_pair():
    assert rank_reports([("only", _report(1, 1))]) == ["only"]
    assert rank_reports([("a", _report(0.5, 0.4)), ("b", _report(0.3, 0.2))]) == ["b", "a"]


def test_rank_ties_on_rmse():
    reports = [("x", _report(0.5, 0.2)), ("y", _report(0.5, 0.1)), ("z", _report(0.5, 0.3))]
    assert rank_reports(reports) == sorted(["x", "y", "z"], key=lambda k: dict(reports)[k].mae)
    assert rank_reports(reports) == ["y", "x", "z"]


def test_rank_full_tiebreak_and_mae_key():
    reports = [("b", _report(0.5, 0.2, 0.9)), ("a", _report(0.5, 0.2, 0.9)), ("c", _report(0.5, 0.2, 0.95))]
    assert rank_reports(reports) == ["c", "a", "b"]
    reports = [("lo_rmse", _report(0.3, 0.29)), ("lo_mae", _report(0.4, 0.1))]
    assert rank_reports(reports, key="mae") == ["lo_mae", "lo_rmse"]


def test_rank_errors():
    with pytest.raises(UsageError):
        rank_reports([])
    with pytest.raises(UsageError):
        rank_reports([("a", _report(1, 1, n=3)), ("b", _report(1, 1, n=4))])


@given(st.lists(st.tuples(st.floats(0, 10), st.floats(0, 10), st.floats(-1, 1)), min_size=1, max_size=8),
       st.randoms())
def test_rank_permutation_invariant(rows, rnd):
    reports = [(f"m{i}", EvalReport(mae, rmse * rmse, rmse, r2, 5)) for i, (rmse, mae, r2) in enumerate(rows)]
    shuffled = list(reports)
    rnd.shuffle(shuffled)
    assert rank_reports(shuffled) == rank_reports(reports)


@given(st.lists(st.tuples(vals, vals), min_size=1, max_size=50))
def test_rmse_squared_is_mse(rows):
    y, yhat = zip(*rows)
    try:
        r = evaluate(PredictionPair(y, yhat))
    except R2UndefinedError as exc:
        r = exc.report
    assert r.rmse == math.sqrt(r.mse)
    assert r.rmse ** 2 == pytest.approx(r.mse, rel=4.5e-16, abs=1e-300)


def test_mae_equals_rmse_when_errors_equal():
    r = evaluate(PredictionPair([1, 2, 3, 4], [1.5, 1.5, 3.5, 3.5]))
    assert r.mae == r.rmse == 0.5
