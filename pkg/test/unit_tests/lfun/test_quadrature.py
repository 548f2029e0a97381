# License: BSD-3

import pytest

from lfnforge.lfun import EvalContext
from lfnforge.lfun.context import ConvergenceError
from lfnforge.lfun.quadrature import integrate


def test_integrates_all_components_on_the_same_nodes():
    ctx = EvalContext(precision=96, quadrature_step=0.5)
    mp = ctx.mp
    calls = []

    def func(v):
        calls.append(v)
        return [mp.mpc(v ** 2), mp.expj(v)]

    square, oscillating = integrate(func, 0, 3, ctx)
    assert abs(square - 9) < mp.mpf(2) ** -50
    assert abs(oscillating - (mp.expj(3) - 1) / 1j) < mp.mpf(2) ** -50
    assert len(calls) % 6 == 0


def test_bisects_around_a_kink():
    ctx = EvalContext(precision=64, max_depth=30)
    mp = ctx.mp
    value = integrate(lambda v: [mp.mpc(abs(v - mp.mpf(1) / 3))], 0, 1, ctx,
                      tol=mp.mpf(10) ** -12)[0]
    assert abs(value - mp.mpf(5) / 18) < 1e-9


def test_gives_up():
    ctx = EvalContext(precision=64, max_depth=1)
    mp = ctx.mp
    with pytest.raises(ConvergenceError, match="quadrature did not converge"):
        integrate(lambda v: [mp.mpc(abs(v - mp.mpf(1) / 3))], 0, 1, ctx)
