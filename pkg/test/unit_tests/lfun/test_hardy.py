# License: BSD-3

import math

import pytest

from lfnforge.forms import FormDescriptor, build_delta_table
from lfnforge.lfun import (
    EvalContext, MU_0, evaluate_L, main_term_count, prime_inequality, s_f, theta_f,
    z_function)
from lfnforge.lfun.hardy import dirichlet_sigma, rotate_to_real, track_phase


@pytest.fixture(scope="module")
def delta_table():
    return build_delta_table(5000)


@pytest.fixture()
def ctx():
    return EvalContext(precision=64)


def test_main_term_count():
    assert main_term_count(0) == 0
    assert main_term_count(2 * math.pi * math.e) == 0
    t = 1000.0
    assert main_term_count(t, level=4) == pytest.approx(
        t / math.pi * math.log(2 * t / (2 * math.pi * math.e)))


def test_theta_tracks_main_term(delta_table, ctx):
    t = 300.0
    assert float(theta_f(delta_table.form, t, ctx.mp)) == pytest.approx(
        main_term_count(t), abs=6)


def test_z_is_real_rotation(delta_table, ctx):
    for t in (5.0, 9.0, 12.5):
        z = z_function(delta_table, t, ctx)
        value = evaluate_L(delta_table, complex(0.5, t), ctx)
        assert abs(abs(z) - abs(value)) < 1e-15 * max(1, abs(value))


def test_z_changes_sign_at_first_zero(delta_table, ctx):
    assert z_function(delta_table, 9.0, ctx) * z_function(delta_table, 9.5, ctx) < 0


def test_rotation_rejects_non_real_values(delta_table, ctx):
    mp = ctx.mp
    form = delta_table.form
    value = evaluate_L(delta_table, mp.mpc(0.5, 5.0), ctx)
    # a tolerance between the unit roundoff and a visibly complex residual
    z = rotate_to_real(form, 5.0, value * mp.expj(mp.mpf("1e-16")), mp)
    assert abs(z - rotate_to_real(form, 5.0, value, mp)) < 1e-12 * max(1, abs(value))
    with pytest.raises(ValueError, match="is not real"):
        rotate_to_real(form, 5.0, value * mp.expj(mp.mpf("1e-6")), mp)


def test_z_undefined_for_non_self_dual(ctx):
    from lfnforge.forms import CoefficientTable
    table = CoefficientTable(FormDescriptor(weight=2, level=1), [0, 1, 0.5])
    with pytest.raises(ValueError, match="Z undefined"):
        z_function(table, 10.0, ctx)


def test_track_phase_of_linear_function(ctx):
    mp = ctx.mp
    change = track_phase(lambda z: z, mp.mpc(1, -1), mp.mpc(1, 1), mp)
    assert change == pytest.approx(math.pi / 2)


def test_s_f_is_bounded(delta_table, ctx):
    assert dirichlet_sigma(5000) > 1
    value = s_f(delta_table, 50.3, ctx)
    assert abs(value) < 2


def test_prime_inequality(delta_table, ctx):
    result = prime_inequality(delta_table, ctx, 120.0, 100.0, mu=1.0)
    assert result.lhs == pytest.approx(
        math.log(abs(complex(evaluate_L(delta_table, complex(0.5, 120.0), ctx)))))
    assert result.slack == result.rhs - result.lhs
    assert set(result.terms) == {"prime", "prime_square", "log_term"}


def test_prime_inequality_ranges(delta_table, ctx):
    with pytest.raises(ValueError, match="mu expected to be >= mu_0"):
        prime_inequality(delta_table, ctx, 120.0, 100.0, mu=MU_0 / 2)
    with pytest.raises(ValueError, match=r"x expected to be in \[3, T\^2\]"):
        prime_inequality(delta_table, ctx, 10.0, 200.0)
    with pytest.raises(ValueError, match="sigma expected to be in"):
        prime_inequality(delta_table, ctx, 120.0, 100.0, mu=1.0, sigma=0.9)
    assert MU_0 == pytest.approx(0.567143290409784)
