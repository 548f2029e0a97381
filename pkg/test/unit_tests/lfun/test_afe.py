# License: BSD-3

import pytest

from lfnforge.forms import build_delta_table
from lfnforge.lfun import (
    EvalContext, afe_L_prime, contour_tail_estimate, evaluate_L, evaluate_L_prime, smoothed_L)
from lfnforge.lfun.afe import coefficient_demand


@pytest.fixture(scope="module")
def delta_table():
    return build_delta_table(2000)


def test_coefficient_demand():
    assert coefficient_demand(10, 64) == 494


def test_engine_components_add_up(delta_table):
    ctx = EvalContext(precision=64, T=20)
    point = afe_L_prime(delta_table, 0.5 + 25j, ctx, method="engine")
    c = point.components
    assert set(c) >= {"M1", "M2", "E1", "E2", "E3", "E45", "E3_magnitude", "X"}
    assert c["E4"] is None and c["E5"] is None
    total = c["M1"] + c["M2"] + point.error_total
    assert abs(total - point.L_prime) < 1e-15 * max(1, abs(point.L_prime))
    assert abs(point.L_prime - evaluate_L_prime(delta_table, 0.5 + 25j, ctx)) < 1e-12
    assert point.Z is not None
    assert abs(abs(point.Z) - abs(point.L)) < 1e-14 * max(1, abs(point.L))


def test_record_is_json_ready(delta_table):
    import json
    point = afe_L_prime(delta_table, 0.5 + 15j, EvalContext(precision=64), method="engine")
    record = point.to_record()
    assert json.loads(json.dumps(record)) == record
    assert record["s"]["im"] == "15.0"


def test_afe_errors(delta_table):
    ctx = EvalContext(precision=64, t_range=(10, 20))
    with pytest.raises(ValueError, match="method expected to be one of"):
        afe_L_prime(delta_table, 0.5 + 15j, ctx, method="taylor")
    with pytest.raises(ValueError, match="outside the context range"):
        afe_L_prime(delta_table, 0.5 + 25j, ctx)
    with pytest.raises(ValueError, match="coefficient table too short"):
        afe_L_prime(delta_table.truncate(100), 0.5 + 15j, ctx)


@pytest.mark.slow
def test_smoothed_L_matches_engine(delta_table):
    ctx = EvalContext(precision=64, T=20)
    s = 0.5 + 22j
    value, parts = smoothed_L(delta_table, s, ctx, return_components=True)
    assert abs(value - evaluate_L(delta_table, s, ctx)) < 1e-12
    assert abs(parts["smoothed"] + parts["reflected"] - parts["I1"] - parts["I2"] - value) \
        < 1e-15
    assert contour_tail_estimate(delta_table, s, ctx) < 1e-12


@pytest.mark.slow
def test_contour_and_engine_agree(delta_table):
    ctx = EvalContext(precision=64, T=20)
    s = 0.5 + 22j
    contour = afe_L_prime(delta_table, s, ctx, method="contour")
    engine = afe_L_prime(delta_table, s, ctx, method="engine")
    assert abs(contour.L_prime - engine.L_prime) < 1e-10
    c = contour.components
    assert abs(c["M1"] + c["M2"] + contour.error_total - contour.L_prime) < 1e-15
