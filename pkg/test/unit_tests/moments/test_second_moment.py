# License: BSD-3

import math

import pytest

from lfnforge.forms import build_delta_table
from lfnforge.lfun import EvalContext, evaluate_L_prime
from lfnforge.moments import second_moment_decomposition, second_moment_whole_range
from lfnforge.zeros import ZeroRecord, ZeroStore


@pytest.fixture(scope="module")
def delta_table():
    return build_delta_table(600)


@pytest.fixture(scope="module")
def store():
    gammas = [10.5 + 2.5 * k for k in range(12)]
    return ZeroStore("delta", [ZeroRecord(g, 1e-10) for g in gammas], 40.0, 64)


def test_decomposition(store, delta_table):
    ctx = EvalContext(precision=64)
    reports = second_moment_decomposition(store, delta_table, ctx, 10.0, 1.0)
    assert [r.statistic for r in reports] == ["A_f", "B_f", "E_f", "second_moment"]
    a_f, b_f, e_f, moment = reports
    gammas = [r.gamma for r in store.window(10.0, 20.0)]
    expected = math.fsum(abs(complex(evaluate_L_prime(delta_table, complex(0.5, g), ctx))) ** 2
                         for g in gammas)
    assert moment.raw == pytest.approx(expected, rel=1e-9)
    assert moment.extra["n_zeros"] == len(gammas)
    lower, upper = moment.extra["sandwich"]
    assert lower <= moment.extra["main_sum"] * (1 + 1e-9) + 1e-12
    assert moment.extra["main_sum"] <= upper * (1 + 1e-9) + 1e-12
    assert (moment.lower, moment.upper) == pytest.approx((0.4132, 2.4201), abs=1e-4)
    assert a_f.normalizer / b_f.normalizer == pytest.approx(5 / 29)
    assert moment.extra["conjectured_normalizer"] == pytest.approx(
        2 / 3 * moment.normalizer)
    assert e_f.raw >= 0


def test_decomposition_errors(store, delta_table):
    ctx = EvalContext(precision=64)
    with pytest.raises(ValueError, match="T expected to be >= 10"):
        second_moment_decomposition(store, delta_table, ctx, 5.0, 1.0)
    with pytest.raises(ValueError, match="c_f expected to be > 0"):
        second_moment_decomposition(store, delta_table, ctx, 10.0, 0.0)
    with pytest.raises(ValueError, match="incomplete store coverage"):
        second_moment_decomposition(store, delta_table, ctx, 25.0, 1.0)


def test_empty_window(delta_table):
    store = ZeroStore("delta", [ZeroRecord(25.0, 1e-10)], 40.0, 64)
    reports = second_moment_decomposition(store, delta_table, EvalContext(precision=64),
                                          10.0, 1.0)
    assert all(r.raw == 0 for r in reports)
    assert all(r.extra["n_zeros"] == 0 for r in reports)


@pytest.mark.slow
def test_whole_range_sums_pieces(store, delta_table):
    ctx = EvalContext(precision=64)
    whole = second_moment_whole_range(store, delta_table, ctx, 40.0, 1.0)
    pieces = [second_moment_decomposition(store, delta_table, ctx, lo, 1.0)
              for lo in (20.0, 10.0)]
    for i, report in enumerate(whole):
        assert report.raw == pytest.approx(math.fsum(p[i].raw for p in pieces))
        assert report.extra["pieces"] == [[20.0, 40.0], [10.0, 20.0]]
        assert report.extra["excluded"] == 0


def test_whole_range_needs_height(store, delta_table):
    with pytest.raises(ValueError, match="whole-range mode"):
        second_moment_whole_range(store, delta_table, EvalContext(precision=64), 15.0, 1.0)
