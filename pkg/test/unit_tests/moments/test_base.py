# License: BSD-3

import math

import pytest

from lfnforge.moments import (
    MomentReport, ValueDistribution, ordered_sum, reports_to_frame)
from lfnforge.moments.base import REPORT_COLUMNS, check_shift
from lfnforge.moments.discrete import shift_grid, tail_bounds
from lfnforge.moments.second_moment import (
    LOWER_CONSTANT, UPPER_CONSTANT, check_sandwich, dyadic_pieces)


def test_ratio_rules():
    assert MomentReport("s", 10, 3, 4).ratio == 0.75
    assert MomentReport("s", 10, 0, 0).ratio == 0.0
    assert math.isnan(MomentReport("s", 10, 1, 0).ratio)
    assert MomentReport("s", 10, 1, 2, ratio=7).ratio == 7


def test_report_rows():
    report = MomentReport("second_moment", 100, 2.0, 4.0, lower=0.3, upper=2.4,
                          extra={"n_zeros": 12})
    row = report.to_row()
    assert list(row) == REPORT_COLUMNS
    assert report.to_dict()["extra"] == {"n_zeros": 12}
    assert "expected in [0.3, 2.4]" in report.summary()
    frame = reports_to_frame([report, MomentReport("A_f", 100, 1, 1)])
    assert list(frame.columns) == REPORT_COLUMNS
    assert math.isnan(frame["lower"][1])


def test_ordered_sum_is_order_independent():
    values = [1e16, 1.0, -1e16, 3.0] * 5
    assert ordered_sum(values) == ordered_sum(reversed(values)) == 20.0
    assert ordered_sum([1 + 2j, 1e16j, 3 - 1e16j]) == 4 + 2j
    assert ordered_sum([]) == 0.0


def test_value_distribution_invariants():
    bounds = {"case_i": [0, 0], "case_ii": [0, 0], "case_iii": [0, 0]}
    with pytest.raises(AssertionError, match="nonincreasing"):
        ValueDistribution(100, 0.1, [0, 1], [1, 2], 5, bounds, True)
    with pytest.raises(AssertionError, match="exceeds"):
        ValueDistribution(100, 0.1, [0, 1], [6, 2], 5, bounds, True)
    frame = ValueDistribution(100, 0.1, [0, 1], [3, 2], 5, bounds, True).to_frame()
    assert list(frame.columns) == ["V", "count", "bound_case_i", "bound_case_ii",
                                   "bound_case_iii"]


def test_check_shift():
    T = 100.0
    bound = 1 / math.log(T)
    assert check_shift(0, T) == 0
    assert check_shift(complex(-bound, 0.5), T) == complex(-bound, 0.5)
    with pytest.raises(ValueError, match="T expected to be > e"):
        check_shift(0, 2.0)
    with pytest.raises(ValueError, match=r"outside \|w\| <= 1"):
        check_shift(1.5j, T)
    with pytest.raises(ValueError, match=r"\|Re\(w\)\| <= 1/log T"):
        check_shift(2 * bound, T)
    with pytest.raises(ValueError, match=r"0 <= Re\(w\)"):
        check_shift(-bound / 2, T, nonnegative_real=True)


def test_shift_grid():
    grid = shift_grid(100.0, 4)
    assert len(grid) == 4
    for w in grid:
        assert abs(w) == pytest.approx(1 / math.log(100))
    assert grid[0] == pytest.approx(1 / math.log(100))
    assert grid[1] == pytest.approx(1j / math.log(100))


def test_tail_bounds_are_vacuous_at_small_height():
    bounds, ranges, vacuous = tail_bounds(150.0, [-math.inf, -1.0, 0.5, 2.0])
    assert vacuous
    assert all(math.isnan(v) for v in bounds["case_i"][:2])
    assert bounds["case_iii"][2] > 0
    assert ranges["case_iii"][1] == math.inf


def test_tail_bounds_curves():
    bounds, _, _ = tail_bounds(1e300, [1.0, 2.0, 4.0])
    assert bounds["case_iii"] == sorted(bounds["case_iii"], reverse=True)
    assert all(v > 0 for v in bounds["case_ii"])


def test_check_sandwich():
    lower, upper = check_sandwich(4.0, 1.0, 5.0)
    assert (lower, upper) == (1.0, 9.0)
    with pytest.raises(AssertionError, match="triangle sandwich violated"):
        check_sandwich(4.0, 1.0, 10.0)


def test_second_moment_constants():
    assert LOWER_CONSTANT == pytest.approx(0.4132, abs=1e-4)
    assert UPPER_CONSTANT == pytest.approx(2.4201, abs=1e-4)
    assert LOWER_CONSTANT * UPPER_CONSTANT == pytest.approx(1.0)


def test_dyadic_pieces():
    assert dyadic_pieces(100) == [(50.0, 100.0), (25.0, 50.0), (12.5, 25.0)]
    assert dyadic_pieces(15) == []
