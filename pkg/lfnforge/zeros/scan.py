"""
Locating zeros on the critical line by sign changes of Z.
"""

# License: BSD (3-clause)

import logging
import math
import warnings
from functools import partial

import numpy as np

from ..lfun.engine import evaluate_L
from ..lfun.hardy import main_term_count, track_phase, z_function
from ..util import parallel_map
from .base import ZeroRecord, ZeroStore

log = logging.getLogger(__name__)

REFINE_TOL = 1e-10
MAX_STEP = 0.05


def grid_step(form, T_max):
    """An eighth of the mean gap pi / log(sqrt(q) T / 2pi), at most 0.05."""
    conductor = math.sqrt(form.level) * T_max / (2 * math.pi)
    if conductor <= math.e:
        return MAX_STEP
    return min(MAX_STEP, math.pi / (8 * math.log(conductor)))


def shortfall_tolerance(T_max):
    return 2 * math.log(max(T_max, math.e)) + 2


def _sign(x):
    if x < 0:
        return -1
    elif x > 0:
        return 1
    return 0


def bisect_sign_change(func, a, b, tol, fa=None, fb=None):
    """Shrink [a, b] around a sign change of func until b - a <= tol."""
    sign_a = _sign(func(a) if fa is None else fa)
    sign_b = _sign(func(b) if fb is None else fb)
    assert sign_a * sign_b == -1, (f"no sign change on [{a}, {b}]")
    while b - a > tol:
        middle = .5 * a + .5 * b
        if middle <= a or middle >= b:
            break
        sign_middle = _sign(func(middle))
        if sign_middle == 0:
            return middle, middle
        if sign_middle != sign_a:
            b = middle
        else:
            a, sign_a = middle, sign_middle
    return a, b


def _scan_points(table, ctx, scan_ctx, tol, ts):
    """Zeros found between consecutive heights ``ts``; each worker call
    evaluates its own slice, slices share their endpoints."""
    values = [z_function(table, t, scan_ctx) for t in ts]

    def z_fine(t):
        return z_function(table, t, ctx)

    gammas = []
    for (a, za), (b, zb) in zip(zip(ts[:-1], values[:-1]), zip(ts[1:], values[1:])):
        if za == 0:
            gammas.append(float(a))
            continue
        if za * zb < 0:
            lo, hi = bisect_sign_change(z_fine, a, b, tol, fa=za, fb=zb)
            gammas.append(.5 * lo + .5 * hi)
    return gammas


def _grid(t_min, T_max, h):
    n = int(math.ceil((T_max - t_min) / h))
    ts = t_min + h * np.arange(1, n + 1)
    ts[-1] = min(ts[-1], T_max)
    return [float(t) for t in ts]


def _scan(table, ctx, scan_ctx, T_max, h, tol, n_jobs, t_min=0.0):
    ts = _grid(t_min, T_max, h)
    n_parts = max(1, min(len(ts) - 1, 4 * n_jobs if n_jobs > 0 else 4))
    bounds = np.linspace(0, len(ts) - 1, n_parts + 1).astype(int)
    slices = [ts[bounds[i]:bounds[i + 1] + 1] for i in range(n_parts)]
    found = parallel_map(partial(_scan_points, table, ctx, scan_ctx, tol), slices,
                         n_jobs=n_jobs)
    return sorted({g for part in found for g in part})


def scan_zeros(table, T_max, ctx, n_jobs=1, tol=REFINE_TOL, scan_precision=None, step=None):
    """Find the zeros 1/2 + i gamma, 0 < gamma <= T_max, of odd multiplicity.

    Z is evaluated on a grid of step :func:`grid_step`; every sign change is
    refined by bisection until the bracket is shorter than ``tol``. When the
    number of zeros falls short of the main term of the zero counting
    function by more than 2 log(T_max) + 2, the scan is repeated with a
    quarter of the step before giving up with a warning.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients of a self-dual form with known root number.
    T_max: float
        Scan ceiling.
    ctx: EvalContext
        Context of the refinement.
    n_jobs: int
        Number of joblib workers the grid is split over.
    tol: float
        Refinement tolerance, stored as ``refined_to``.
    scan_precision: int | None
        Precision of the grid evaluations, by default that of ``ctx``.
    step: float | None
        Grid step overriding :func:`grid_step`.

    Returns
    -------
    store: ZeroStore
    """
    if not T_max > 0:
        raise ValueError(f"T_max expected to be > 0, got {T_max}")
    form = table.form
    scan_ctx = ctx if scan_precision is None else ctx.replace(precision=scan_precision)
    h = grid_step(form, T_max) if step is None else step
    log.info(f"Scanning {form.label} for zeros up to {T_max} with step {h:.4g}.")
    gammas = _scan(table, ctx, scan_ctx, T_max, h, tol, n_jobs)
    main_term = main_term_count(T_max, form.level)
    if main_term - len(gammas) > shortfall_tolerance(T_max):
        log.warning(f"Found {len(gammas)} zeros, main term {main_term:.2f}; "
                    f"rescanning with step {h / 4:.4g}.")
        gammas = _scan(table, ctx, scan_ctx, T_max, h / 4, tol, n_jobs)
        if main_term - len(gammas) > shortfall_tolerance(T_max):
            warnings.warn(
                f"missed zeros suspected: found {len(gammas)} zeros up to {T_max}, "
                f"main term {main_term:.2f}", UserWarning)
    records = [ZeroRecord(gamma=g, refined_to=tol) for g in gammas]
    store = ZeroStore.from_unsorted(form.label, records, T_max, ctx.precision,
                                    level=form.level, fingerprint=ctx.fingerprint)
    log.info(f"Found {len(store)} zeros of {form.label} up to {T_max}.")
    return store


def argument_principle_count(table, ctx, t_lo, t_hi, half_width=0.25):
    """Number of zeros, with multiplicity, in the box
    [1/2 - half_width, 1/2 + half_width] x [t_lo, t_hi].

    The phase of L is tracked counterclockwise around the boundary, which
    must not pass through a zero.
    """
    if not t_hi > t_lo:
        raise ValueError(f"t_hi expected to be > t_lo, got [{t_lo}, {t_hi}]")
    mp = ctx.mp
    corners = [mp.mpc(0.5 - half_width, t_lo), mp.mpc(0.5 + half_width, t_lo),
               mp.mpc(0.5 + half_width, t_hi), mp.mpc(0.5 - half_width, t_hi)]

    def func(z):
        return evaluate_L(table, z, ctx)

    total = sum(track_phase(func, corners[i], corners[(i + 1) % 4], mp)
                for i in range(4))
    count = int(round(total / (2 * math.pi)))
    log.debug(f"Argument principle on [{t_lo}, {t_hi}]: {total / (2 * math.pi):.4f} turns.")
    return count


def count_vs_mainterm(store, t):
    """(number of stored zeros up to t, main term, difference)."""
    store.check_coverage(t)
    found = store.count(t)
    main_term = main_term_count(t, store.level)
    return found, main_term, found - main_term

