"""
Discrete moments over zeros: shifted moments of L, moments of L^(m), the
Hoelder lower bound for simple zeros and the distribution of log|L(rho + w)|.
"""

# License: BSD (3-clause)

import logging
import math
import warnings
from functools import partial

import numpy as np

from ..lfun.cauchy import derivative_via_cauchy
from ..lfun.engine import evaluate_L, evaluate_L_prime
from ..util import parallel_map
from ..zeros.classify import MAX_RADIUS
from .base import MomentReport, ValueDistribution, check_shift, ordered_sum, window_zeros

log = logging.getLogger(__name__)

CROSS_CHECK_TOLERANCE = 1e-6
W_GRID_POINTS = 9


def _abs_L(table, ctx, w, gamma):
    return float(abs(evaluate_L(table, complex(0.5, gamma) + w, ctx)))


def _check_T(T):
    if T <= math.e:
        raise ValueError(f"T expected to be > e, got {T}")


def shifted_moment(store, table, ctx, T, w, ell, n_jobs=1):
    """sum_{T < gamma <= 2T} |L(rho + w)|^(2 ell) against T (log T)^(ell^2 + 1).

    Requires |w| <= 1 and |Re w| <= 1/log T. For w = 0 every summand is
    |L(rho)|^(2 ell) = 0 and the sum is 0 without evaluation.
    """
    w = check_shift(w, T)
    if not ell > 0:
        raise ValueError(f"ell expected to be > 0, got {ell}")
    records = window_zeros(store, T)
    if w == 0:
        raw = 0.0
    else:
        values = parallel_map(partial(_abs_L, table, ctx.replace(T=T), w),
                              [r.gamma for r in records], n_jobs=n_jobs)
        raw = ordered_sum(v ** (2 * ell) for v in values)
    normalizer = T * math.log(T) ** (ell ** 2 + 1)
    report = MomentReport("shifted_moment", T, raw, normalizer,
                          extra={"w": [w.real, w.imag], "ell": ell, "n_zeros": len(records)})
    log.info(report.summary())
    return report


def shift_grid(T, n_points=W_GRID_POINTS):
    """Shifts w = exp(i theta) / log T, equally spaced on the circle |w| = 1/log T."""
    radius = 1 / math.log(T)
    return [radius * complex(math.cos(theta), math.sin(theta))
            for theta in 2 * np.pi * np.arange(n_points) / n_points]


def shifted_moment_grid(store, table, ctx, T, ell, n_points=W_GRID_POINTS, n_jobs=1):
    """Shifted moments on :func:`shift_grid` and the spread max / min of their ratios.

    Returns
    -------
    reports: list of MomentReport
    spread: float
        Largest over smallest ratio, inf when a ratio is 0.
    """
    reports = [shifted_moment(store, table, ctx, T, w, ell, n_jobs=n_jobs)
               for w in shift_grid(T, n_points)]
    ratios = [r.ratio for r in reports]
    spread = max(ratios) / min(ratios) if min(ratios) > 0 else math.inf
    log.info(f"Shifted moments on |w| = 1/log T: spread of ratios {spread:.4g}.")
    return reports, spread


def _derivatives(table, ctx, m, R, cross_check, gamma):
    s = complex(0.5, gamma)
    direct = complex(evaluate_L_prime(table, s, ctx, order=m))
    if not cross_check:
        return abs(direct), math.nan
    via_cauchy = complex(derivative_via_cauchy(table, s, m, R, ctx))
    difference = abs(direct - via_cauchy) / max(abs(direct), abs(via_cauchy), 1e-300)
    return abs(direct), difference


def derivative_moment(store, table, ctx, T, m, ell, cross_check=True, n_jobs=1):
    """sum_{T < gamma <= 2T} |L^(m)(rho)|^(2 ell) against T (log T)^(ell^2 + 2 ell m + 1).

    With ``cross_check`` every derivative is recomputed from a Cauchy
    circle of radius 1/log T and the largest relative difference is
    reported in ``extra['max_relative_difference']``.
    """
    _check_T(T)
    if int(m) != m or m < 1:
        raise ValueError(f"m expected to be a natural number, got {m}")
    if ell < 0.5:
        raise ValueError(f"ell expected to be >= 1/2, got {ell}")
    m = int(m)
    records = window_zeros(store, T)
    R = min(MAX_RADIUS, 1 / math.log(T))
    values = parallel_map(partial(_derivatives, table, ctx.replace(T=T), m, R, cross_check),
                          [r.gamma for r in records], n_jobs=n_jobs)
    raw = ordered_sum(v ** (2 * ell) for v, _ in values)
    differences = [d for _, d in values if not math.isnan(d)]
    max_difference = max(differences) if differences else math.nan
    if differences and max_difference > CROSS_CHECK_TOLERANCE:
        warnings.warn(f"Direct and Cauchy derivatives of order {m} differ by "
                      f"{max_difference:.3g} relative.", UserWarning)
    normalizer = T * math.log(T) ** (ell ** 2 + 2 * ell * m + 1)
    report = MomentReport("derivative_moment", T, raw, normalizer,
                          extra={"m": m, "ell": ell, "n_zeros": len(records), "R": R,
                                 "max_relative_difference": max_difference})
    log.info(report.summary())
    return report


def simple_zero_pipeline(store, T, ell):
    """Hoelder lower bound for the number of simple zeros in (T, 2T].

    (sum |L'|^2)^ell <= sum |L'|^(2 ell) * N^(ell - 1) with N the number of
    zeros where L' does not vanish, so

        N_lower = (sum |L'|^2)^(ell / (ell - 1)) / (sum |L'|^(2 ell))^(1 / (ell - 1)).

    Uses the L_prime_abs values of a classified store.

    Returns
    -------
    report: MomentReport
        raw = N_lower, normalizer = number of zeros classified simple.
    """
    if not ell > 1:
        raise ValueError(f"ell expected to be > 1, got {ell}")
    records = window_zeros(store, T)
    values = [r.L_prime_abs for r in records]
    if any(math.isnan(v) for v in values):
        raise ValueError("store has zeros without |L'(rho)|, classify it first")
    second = ordered_sum(v ** 2 for v in values)
    higher = ordered_sum(v ** (2 * ell) for v in values)
    lower = second ** (ell / (ell - 1)) / higher ** (1 / (ell - 1)) if higher > 0 else 0.0
    n_nonzero = sum(v > 0 for v in values)
    n_simple = sum(r.classification == "simple" for r in records)
    assert lower <= n_nonzero * (1 + 1e-9), (
        f"Hoelder bound {lower} exceeds the {n_nonzero} zeros with L' != 0")
    report = MomentReport("simple_zero_lower_bound", T, lower, n_simple, upper=1.0,
                          extra={"ell": ell, "n_zeros": len(records), "n_nonzero": n_nonzero,
                                 "n_simple": n_simple, "second_moment": second,
                                 "higher_moment": higher})
    log.info(report.summary())
    return report


def _log_abs_L(table, ctx, w, gamma):
    value = abs(evaluate_L(table, complex(0.5, gamma) + w, ctx))
    return math.log(value) if value > 0 else -math.inf


def _exp(x):
    return math.exp(x) if x < 700 else math.inf


def tail_bounds(T, V_grid):
    """Reference curves of the three tail regimes of N(V; T, w).

    Returns
    -------
    bounds: dict
        'case_i', 'case_ii', 'case_iii' lists on ``V_grid`` (nan where V <= 0).
    ranges: dict
        V range of validity of each regime.
    vacuous: bool
        True when 1 - 8 / logloglog T <= 0 (or logloglog T undefined).
    """
    ll = math.log(math.log(T))
    lll = math.log(ll) if ll > 1 else math.nan
    vacuous = math.isnan(lll) or 1 - 8 / lll <= 0
    scale = T * math.log(T)
    bounds = {"case_i": [], "case_ii": [], "case_iii": []}
    for V in V_grid:
        if not V > 0 or math.isinf(V):
            for values in bounds.values():
                values.append(math.nan)
            continue
        gauss = scale * V / math.sqrt(ll)
        bounds["case_i"].append(gauss * _exp(-V ** 2 / ll * (1 - 8 / lll))
                                if not math.isnan(lll) else math.nan)
        bounds["case_ii"].append(gauss * _exp(-V ** 2 / ll * (1 - 18 * V / (5 * ll * lll)) ** 2)
                                 if not math.isnan(lll) else math.nan)
        bounds["case_iii"].append(scale * _exp(-V * math.log(V) / 201))
    ranges = {"case_i": [10 * math.sqrt(ll), ll],
              "case_ii": [ll, ll * lll / 4 if not math.isnan(lll) else math.nan],
              "case_iii": [ll * lll / 4 if not math.isnan(lll) else math.nan, math.inf]}
    return bounds, ranges, vacuous


def value_distribution(store, table, ctx, T, w, V_grid, n_jobs=1):
    """Counts of zeros in (T, 2T] with log|L(rho + w)| >= V for every V of ``V_grid``.

    Parameters
    ----------
    store: ZeroStore
        Zeros covering (T, 2T].
    table: CoefficientTable
        Coefficients of the form.
    ctx: EvalContext
        Evaluation context.
    T: float
        Window parameter.
    w: complex
        Shift with |w| <= 1 and 0 <= Re w <= 1/log T.
    V_grid: list of float
        Increasing thresholds, -inf is allowed as a first sentinel.
    n_jobs: int
        Number of joblib workers over zeros.

    Returns
    -------
    distribution: ValueDistribution
    """
    w = check_shift(w, T, nonnegative_real=True)
    V_grid = [float(v) for v in V_grid]
    if any(a >= b for a, b in zip(V_grid[:-1], V_grid[1:])):
        raise ValueError("V_grid expected to be strictly increasing")
    records = window_zeros(store, T)
    logs = np.array(parallel_map(partial(_log_abs_L, table, ctx.replace(T=T), w),
                                 [r.gamma for r in records], n_jobs=n_jobs), dtype=float)
    counts = [int(np.count_nonzero(logs >= V)) for V in V_grid]
    bounds, ranges, vacuous = tail_bounds(T, V_grid)
    if vacuous:
        warnings.warn(f"Tail bounds at T={T} are vacuous at desk scale "
                      f"(1 - 8/logloglog T <= 0).", UserWarning)
    distribution = ValueDistribution(T=T, w=w, V_grid=V_grid, counts=counts,
                                     n_window=len(records), bounds=bounds, vacuous=vacuous,
                                     case_ranges=ranges)
    log.info(f"Value distribution at T={T}, w={w}: {len(records)} zeros, "
             f"{len(V_grid)} thresholds.")
    return distribution
