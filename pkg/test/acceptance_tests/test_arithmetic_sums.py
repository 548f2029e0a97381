# License: BSD-3

import pytest

from lfnforge.forms import build_delta_table
from lfnforge.sums import convolution_square_sums, estimate_cf, pole_probe, weighted_square_sums

pytestmark = pytest.mark.slow

X = 10 ** 6
SIGMAS = [1.30, 1.25, 1.20, 1.15]


@pytest.fixture(scope="module")
def delta_table():
    return build_delta_table(X)


@pytest.fixture(scope="module")
def c_f(delta_table):
    constant = estimate_cf(delta_table, X / 16, X)
    assert constant.fit_residual < 0.01
    return constant.c_f


def test_weighted_sum_ratios(delta_table, c_f):
    alpha_report, beta_report = weighted_square_sums(delta_table, X, c_f)
    assert abs(alpha_report.ratio[0] - 1) <= 0.2
    assert abs(beta_report.computed[0] / alpha_report.computed[0] / 7 - 1) <= 0.25


def test_convolution_sum_ratio(delta_table, c_f):
    alpha_report, beta_report = convolution_square_sums(delta_table, X, c_f)
    assert abs(beta_report.computed[0] / alpha_report.computed[0] / 9 - 1) <= 0.35


@pytest.mark.parametrize("kind,lo,hi", [("alpha", 4.0, 6.0), ("lambda", 2.2, 3.8)])
def test_pole_orders(delta_table, kind, lo, hi):
    report = pole_probe(delta_table, kind, SIGMAS)
    assert lo <= report.extra["fitted_order"] <= hi
