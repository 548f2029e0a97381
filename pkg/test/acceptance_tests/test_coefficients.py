# License: BSD-3

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from lfnforge.arith import (alpha, beta, dirichlet_convolve, divisor_count, lambda_f,
                            lambda_f_von_mangoldt, mu_f)
from lfnforge.forms import build_delta_table, ramanujan_tau, tau_by_hecke
from lfnforge.lfun import EvalContext, psi_f

pytestmark = pytest.mark.slow


def test_tau_hecke_path_matches_eta_expansion():
    assert_array_equal(tau_by_hecke(10 ** 4), ramanujan_tau(10 ** 4, method="pentagonal"))


def test_deligne_bound_up_to_a_million():
    table = build_delta_table(10 ** 6)
    d = divisor_count(10 ** 6)
    assert np.all(np.abs(table.values[1:]) <= d[1:] * (1 + 1e-9))


@pytest.fixture(scope="module")
def identity_setup():
    table = build_delta_table(10 ** 4, exact_limit=10 ** 4)
    ctx = EvalContext(precision=128)
    return table, ctx


def test_von_mangoldt_identity(identity_setup):
    table, ctx = identity_setup
    mp = ctx.mp
    Lambda = lambda_f_von_mangoldt(table, mp=mp)
    conv = dirichlet_convolve(mu_f(table, mp=mp), alpha(table, mp=mp))
    assert max(abs(a + b) for a, b in zip(Lambda.values[1:], conv.values[1:])) < 1e-20


def test_beta_expansion_identity(identity_setup):
    table, ctx = identity_setup
    mp = ctx.mp
    X = 100
    b = beta(table, X, mp=mp).values
    a = alpha(table, mp=mp).values
    lam = lambda_f(table, mp=mp).values
    two_log_x = 2 * mp.log(X)
    assert max(abs(b[n] + two_log_x * lam[n] + a[n]) for n in range(1, 10 ** 4 + 1)) < 1e-20


def test_psi_on_the_critical_line(identity_setup, rng_seed):
    table, ctx = identity_setup
    mp = ctx.mp
    rng = np.random.RandomState(rng_seed)
    for t in rng.uniform(1, 100, size=50):
        s = mp.mpc(0.5, t)
        assert abs(psi_f(table.form, s, mp) * psi_f(table.form, 1 - s, mp) - 1) < 1e-30
        assert abs(abs(psi_f(table.form, s, mp)) - 1) < 1e-30
