"""
Second moment of L'(rho, f) over a dyadic window of zeros and its
decomposition into the two Dirichlet polynomials and the error term of the
approximate functional equation.
"""

# License: BSD (3-clause)

import logging
import math
from functools import partial

from ..lfun.afe import afe_L_prime
from ..util import parallel_map
from .base import MomentReport, ordered_sum, window_zeros

log = logging.getLogger(__name__)

MIN_T = 10.0
SANDWICH_TOLERANCE = 1e-9
LOWER_CONSTANT = (17 - math.sqrt(145)) / 12
UPPER_CONSTANT = (17 + math.sqrt(145)) / 12
CONJECTURED_CONSTANT = 2 / 3


def _zero_terms(table, ctx, method, gamma):
    point = afe_L_prime(table, complex(0.5, gamma), ctx, method=method)
    c = point.components
    m1, m2 = complex(c["M1"]), complex(c["M2"])
    error = complex(point.error_total)
    return (abs(m1) ** 2, abs(m2) ** 2, abs(error) ** 2, abs(complex(point.L_prime)) ** 2,
            abs(m1 + m2) ** 2)


def _normalizers(table, T, c_f):
    X = math.sqrt(table.form.level) * T / (2 * math.pi)
    scale = c_f * T * math.log(X) ** 4
    return X, {
        "A_f": 5 / (24 * math.pi) * scale,
        "B_f": 29 / (24 * math.pi) * scale,
        "E_f": scale / (math.pi * math.sqrt(math.log(math.log(T)))),
        "second_moment": scale / math.pi,
    }


def check_sandwich(a_sum, b_sum, main_sum, tol=SANDWICH_TOLERANCE):
    """(sqrt(A) - sqrt(B))^2 <= sum |M1 + M2|^2 <= (sqrt(A) + sqrt(B))^2."""
    lower = (math.sqrt(a_sum) - math.sqrt(b_sum)) ** 2
    upper = (math.sqrt(a_sum) + math.sqrt(b_sum)) ** 2
    slack = tol * max(upper, 1.0)
    assert lower - slack <= main_sum <= upper + slack, (
        f"triangle sandwich violated: {lower} <= {main_sum} <= {upper}")
    return lower, upper


def second_moment_decomposition(store, table, ctx, T, c_f, method="engine", n_jobs=1):
    """A_f(T), B_f(T), E_f(T) and sum |L'(rho)|^2 over zeros with T < gamma <= 2T.

    Every zero is evaluated with :func:`afe_L_prime` at the common length
    X = sqrt(q) T / 2pi. A_f sums |M1|^2, B_f sums |M2|^2 (|psi(rho)| = 1)
    and E_f sums the squared error terms.

    Parameters
    ----------
    store: ZeroStore
        Zeros, covering (T, 2T].
    table: CoefficientTable
        Coefficients of the form.
    ctx: EvalContext
        Evaluation context; its T is replaced by ``T``.
    T: float
        Window parameter, at least 10.
    c_f: float
        Rankin-Selberg constant of the form.
    method: str
        Passed to :func:`afe_L_prime`.
    n_jobs: int
        Number of joblib workers over zeros.

    Returns
    -------
    reports: list of MomentReport
        A_f, B_f, E_f and second_moment, in this order. The second moment is
        normalized by c_f T log^4 X / pi and carries the bounds
        (17 -+ sqrt(145)) / 12.
    """
    if T < MIN_T:
        raise ValueError(f"T expected to be >= {MIN_T}, got {T}")
    if not c_f > 0:
        raise ValueError(f"c_f expected to be > 0, got {c_f}")
    records = window_zeros(store, T)
    eval_ctx = ctx.replace(T=T)
    terms = parallel_map(partial(_zero_terms, table, eval_ctx, method),
                         [r.gamma for r in records], n_jobs=n_jobs)
    a_sum, b_sum, e_sum, l_sum, main_sum = (ordered_sum(col) for col in zip(*terms)) \
        if terms else (0.0,) * 5
    lower, upper = check_sandwich(a_sum, b_sum, main_sum)
    X, norms = _normalizers(table, T, c_f)
    common = {"window": [T, 2 * T], "n_zeros": len(records), "X": X, "method": method}
    reports = [
        MomentReport("A_f", T, a_sum, norms["A_f"], extra=dict(common)),
        MomentReport("B_f", T, b_sum, norms["B_f"], extra=dict(common)),
        MomentReport("E_f", T, e_sum, norms["E_f"], extra=dict(common)),
        MomentReport("second_moment", T, l_sum, norms["second_moment"],
                     lower=LOWER_CONSTANT, upper=UPPER_CONSTANT,
                     extra=dict(common, main_sum=main_sum, sandwich=[lower, upper],
                                conjectured_ratio=CONJECTURED_CONSTANT,
                                conjectured_normalizer=2 / (3 * math.pi) * c_f * T
                                * math.log(X) ** 4)),
    ]
    for report in reports:
        log.info(report.summary())
    return reports


def dyadic_pieces(T, t_min=MIN_T):
    """Windows (T / 2^(j+1), T / 2^j] with lower edge >= ``t_min``, from the top."""
    pieces = []
    upper = float(T)
    while upper / 2 >= t_min:
        pieces.append((upper / 2, upper))
        upper /= 2
    return pieces


def second_moment_whole_range(store, table, ctx, T, c_f, method="engine", n_jobs=1):
    """Whole-range mode: the four statistics of (0, T] as sums over dyadic pieces.

    Zeros below the lowest piece, i.e. gamma <= T / 2^J < 2 * 10, are left out
    and counted in ``extra['excluded']``.

    Returns
    -------
    reports: list of MomentReport
        A_f, B_f, E_f and second_moment with raw values and normalizers
        summed over the pieces.
    """
    store.check_coverage(T)
    pieces = dyadic_pieces(T)
    if not pieces:
        raise ValueError(f"T expected to be >= {2 * MIN_T} for the whole-range mode, got {T}")
    per_piece = [second_moment_decomposition(store, table, ctx, lo, c_f, method=method,
                                             n_jobs=n_jobs)
                 for lo, _ in pieces]
    reports = []
    for i, name in enumerate(["A_f", "B_f", "E_f", "second_moment"]):
        parts = [piece[i] for piece in per_piece]
        first = parts[0]
        reports.append(MomentReport(
            name, T, ordered_sum(p.raw for p in parts), ordered_sum(p.normalizer for p in parts),
            lower=first.lower, upper=first.upper,
            extra={"mode": "whole_range", "pieces": [list(p) for p in pieces],
                   "n_zeros": sum(p.extra["n_zeros"] for p in parts),
                   "excluded": store.count(pieces[-1][0])}))
    return reports
