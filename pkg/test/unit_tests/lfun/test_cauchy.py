# License: BSD-3

import mpmath
import pytest

from lfnforge.forms import build_delta_table
from lfnforge.lfun import (
    EvalContext, cauchy_derivative, derivative_via_cauchy, evaluate_L_prime)
from lfnforge.lfun.context import ConvergenceError


@pytest.fixture()
def mp():
    context = mpmath.MPContext()
    context.prec = 100
    return context


@pytest.mark.parametrize("m", [0, 1, 2, 5])
def test_derivatives_of_exp(mp, m):
    s = mp.mpc(0.3, 0.2)
    value = cauchy_derivative(mp.exp, s, m, 0.3, mp)
    assert abs(value - mp.exp(s)) < mp.mpf(2) ** -45


def test_polynomial_derivative(mp):
    value = cauchy_derivative(lambda z: z ** 3 - 2 * z, 1.5, 1, 0.25, mp)
    assert abs(value - (3 * 1.5 ** 2 - 2)) < 1e-14


def test_argument_checks(mp):
    with pytest.raises(ValueError, match="m expected to be a natural number"):
        cauchy_derivative(mp.exp, 0, -1, 0.2, mp)
    with pytest.raises(ValueError, match=r"R expected to be in \(0, 1/2\)"):
        cauchy_derivative(mp.exp, 0, 1, 0.5, mp)


def test_gives_up(mp):
    with pytest.raises(ConvergenceError, match="did not converge"):
        cauchy_derivative(lambda z: 1 / (z - 0.2999), 0, 1, 0.3, mp, max_nodes=64)


def test_L_prime_two_ways():
    table = build_delta_table(400)
    ctx = EvalContext(precision=64)
    s = 0.5 + 9j
    direct = evaluate_L_prime(table, s, ctx)
    circle = derivative_via_cauchy(table, s, 1, 0.3, ctx)
    assert abs(direct - circle) < 1e-8 * max(1, abs(direct))
