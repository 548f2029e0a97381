# License: BSD-3

import math

import numpy as np
import pytest

from lfnforge.cli import default_V_grid, required_nmax
from lfnforge.forms import build_delta_table, delta_descriptor
from lfnforge.lfun import EvalContext
from lfnforge.moments import (landau_gonek_check, mv_meanvalue_check, random_unit_coefficients,
                              second_moment_decomposition, simple_zero_pipeline,
                              value_distribution)
from lfnforge.sums import default_cf
from lfnforge.zeros import classify_simplicity, count_vs_mainterm, scan_zeros

pytestmark = pytest.mark.slow

T = 150.0


@pytest.fixture(scope="module")
def delta_table():
    return build_delta_table(required_nmax(delta_descriptor(), 2 * T + 1, 128))


@pytest.fixture(scope="module")
def ctx():
    return EvalContext(precision=128)


@pytest.fixture(scope="module")
def store(delta_table, ctx):
    found = scan_zeros(delta_table, 2 * T, ctx, n_jobs=-1)
    return classify_simplicity(found, delta_table, ctx, n_jobs=-1)


def test_zero_census(store):
    found, main_term, difference = count_vs_mainterm(store, 100)
    assert abs(difference) <= 2 * math.log(100)
    assert main_term == pytest.approx(100 / math.pi * math.log(100 / (2 * math.pi * math.e)))
    low = store.window(0, 100)
    assert len(low) == found
    assert all(r.classification == "simple" for r in low)
    assert all(r.L_prime_abs >= 1e-3 for r in low)


def test_second_moment_window(store, delta_table, ctx):
    c_f = default_cf(delta_table, delta_table.n_max)
    reports = second_moment_decomposition(store, delta_table, ctx, T, c_f, n_jobs=-1)
    second = reports[-1]
    assert second.statistic == "second_moment"
    assert 0.2 <= second.ratio <= 3.0
    assert second.extra["n_zeros"] > 0
    for ell in (1.5, 2.0, 3.0):
        report = simple_zero_pipeline(store, T, ell)
        assert report.raw <= second.extra["n_zeros"] * (1 + 1e-9)


def test_value_distribution_at_desk_scale(store, delta_table, ctx):
    with pytest.warns(UserWarning, match="vacuous at desk scale"):
        distribution = value_distribution(store, delta_table, ctx, T, 1 / (2 * math.log(T)),
                                          default_V_grid(), n_jobs=-1)
    assert distribution.vacuous
    counts = distribution.counts
    assert all(a >= b for a, b in zip(counts[:-1], counts[1:]))
    assert counts[0] == distribution.n_window
    decrements = [a - b for a, b in zip(counts[:-1], counts[1:])] + [counts[-1]]
    assert sum(decrements) == distribution.n_window
    frame = distribution.to_frame()
    assert list(frame.columns) == ["V", "count", "bound_case_i", "bound_case_ii",
                                   "bound_case_iii"]


def test_landau_gonek_to_2000():
    T_gonek = 2000.0
    table = build_delta_table(required_nmax(delta_descriptor(), T_gonek, 64))
    ctx = EvalContext(precision=64)
    store = scan_zeros(table, T_gonek, ctx, n_jobs=-1)
    prime = landau_gonek_check(store, table, 2, T_gonek)
    assert prime.extra["relative_to_main"] <= 0.25
    composite = landau_gonek_check(store, table, 6, T_gonek)
    assert composite.extra["main_term"] == [0.0, 0.0]
    assert composite.raw <= composite.normalizer


def test_mean_value_theorem(rng_seed):
    rng = np.random.RandomState(rng_seed)
    coeffs = np.concatenate([[0], random_unit_coefficients(1000, rng)])
    report = mv_meanvalue_check(coeffs, 0.0, 1e4)
    assert report.ratio <= 10
