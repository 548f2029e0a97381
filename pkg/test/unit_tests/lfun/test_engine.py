# License: BSD-3

import math
import pickle

import numpy as np
import pytest

from lfnforge.forms import build_delta_table
from lfnforge.lfun import (
    EvalContext, evaluate_L, evaluate_L_prime, psi_f, psi_log_derivative, split_sums)
from lfnforge.lfun.engine import rotation_angle, terms_needed


@pytest.fixture(scope="module")
def delta_table():
    return build_delta_table(5000)


@pytest.fixture()
def ctx():
    return EvalContext(precision=64)


def test_context_validation():
    with pytest.raises(ValueError, match="precision expected to be >= 53"):
        EvalContext(precision=32)
    with pytest.raises(ValueError, match="contour_height expected to be >= 10"):
        EvalContext(precision=64, contour_height=5)
    with pytest.raises(ValueError, match="t_range expected to be increasing"):
        EvalContext(precision=64, t_range=(20, 10))
    with pytest.raises(ValueError, match="outside the context range"):
        EvalContext(precision=64, t_range=(10, 20)).check_t(25)


def test_context_defaults(delta_table):
    ctx = EvalContext(precision=64)
    form = delta_table.form
    assert ctx.x_for(10, form) == 5.0
    assert ctx.x_for(1000, form) == pytest.approx(1000 / (2 * math.pi))
    assert EvalContext(precision=64, T=500).x_for(900, form) == pytest.approx(500 / (2 * math.pi))
    assert ctx.height_for(1e6) == pytest.approx(math.log(1e6) ** 2)
    assert ctx.height_for(10) == pytest.approx(64 * math.log(2) / math.pi + 8)


def test_context_replace_and_pickle():
    ctx = EvalContext(precision=64, T=100)
    other = ctx.replace(T=200)
    assert other.T == 200 and ctx.T == 100
    assert other.fingerprint != ctx.fingerprint
    restored = pickle.loads(pickle.dumps(ctx))
    assert restored.describe() == ctx.describe()
    assert restored.mp.prec == 64


def test_private_mp_context():
    import mpmath
    before = mpmath.mp.prec
    ctx = EvalContext(precision=300)
    assert ctx.mp.prec == 300
    assert mpmath.mp.prec == before


def test_psi_functional_equation(delta_table, ctx):
    mp = ctx.mp
    form = delta_table.form
    for s in (0.3 + 4j, 0.5 + 17j, 2 - 3j):
        assert abs(psi_f(form, s, mp) * psi_f(form, 1 - s, mp) - 1) < 1e-15
    for t in (1.0, 20.0, 300.0):
        assert abs(abs(psi_f(form, complex(0.5, t), mp)) - 1) < 1e-15


def test_psi_log_derivative(delta_table, ctx):
    mp = ctx.mp
    form = delta_table.form
    s = mp.mpc(0.5, 12)
    numeric = mp.diff(lambda z: psi_f(form, z, mp), s) / psi_f(form, s, mp)
    assert abs(numeric - psi_log_derivative(form, s, mp)) < 1e-12


def test_rotation_angle():
    assert rotation_angle(0, 64) == 0
    assert rotation_angle(10, 64) == pytest.approx(math.pi / 4)
    assert rotation_angle(-1000, 64) == pytest.approx(-(math.pi / 2 - 64 * math.log(2) / 1000))


def test_evaluate_L_matches_dirichlet_series(delta_table, ctx):
    s = 3 + 2j
    n = np.arange(1, delta_table.n_max + 1)
    direct = np.sum(delta_table.values[1:] * np.exp(-s * np.log(n)))
    value = complex(evaluate_L(delta_table, s, ctx))
    assert abs(value - direct) < 1e-6


def test_evaluate_L_independent_of_rotation(delta_table, ctx):
    s = 0.5 + 8j
    a = evaluate_L(delta_table, s, ctx)
    b = evaluate_L(delta_table, s, ctx, beta=0.3)
    assert abs(a - b) < 1e-12


def test_functional_equation(delta_table, ctx):
    mp = ctx.mp
    s = mp.mpc(0.25, 6)
    lhs = evaluate_L(delta_table, s, ctx)
    rhs = psi_f(delta_table.form, s, mp) * evaluate_L(delta_table, 1 - s, ctx)
    assert abs(lhs - rhs) < 1e-12 * max(1, abs(lhs))


def test_split_sums_recombine(delta_table, ctx):
    p, r = split_sums(delta_table, 0.5 + 5j, ctx)
    assert abs(p + r - evaluate_L(delta_table, 0.5 + 5j, ctx)) < 1e-15


def test_table_too_short(delta_table, ctx):
    with pytest.raises(ValueError, match="coefficient table too short"):
        evaluate_L(delta_table.truncate(10), 0.5 + 100j, ctx)
    assert terms_needed(delta_table.form, 0.5 + 100j, rotation_angle(100, 64), 64) > 10


def test_unknown_root_number(delta_table, ctx):
    table = delta_table.with_form(delta_table.form.with_root_number(None))
    with pytest.raises(ValueError, match="run compute_root_number first"):
        evaluate_L(table, 2 + 1j, ctx)


def test_L_prime_against_difference_quotient(delta_table, ctx):
    s = 2 + 3j
    h = 1e-6
    quotient = (evaluate_L(delta_table, s + h, ctx) - evaluate_L(delta_table, s - h, ctx)) / (2 * h)
    assert abs(evaluate_L_prime(delta_table, s, ctx) - quotient) < 1e-8
