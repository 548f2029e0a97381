"""
Arithmetic sums of Hecke eigenvalues against their asymptotic main terms and
the Rankin-Selberg constant c_f.
"""

# License: BSD (3-clause)

import dataclasses
import logging
import math
import warnings
from functools import partial

import numpy as np
import pandas as pd
from scipy import stats

from .arith import alpha, beta, dirichlet_convolve, lambda_f, lambda_f_von_mangoldt, prime_sieve
from .util import parallel_map

log = logging.getLogger(__name__)

DELTA = 4 / 5 - math.sqrt(27 / 2) / 5
RESIDUAL_WARNING = 0.01
CF_GRID_POINTS = 24
POLE_ORDERS = {"lambda": 3, "alpha": 5, "beta": 5}
POLE_TAIL_TOL = 0.2
STATISTICS = ("ransel", "prime1", "prime2", "absval", "weighted_alpha", "weighted_beta",
              "multiple_square", "shifted_alpha", "shifted_beta", "convolution_alpha",
              "convolution_beta", "pole_probe")


@dataclasses.dataclass
class RankinSelbergConstant:
    """Slope c_f of sum_{n <= x} |lambda(n)|^2 against x.

    Parameters
    ----------
    c_f: float
        Fitted slope.
    fit_residual: float
        Largest |A(x) - c_f x| / (c_f x) over the fit grid.
    x_range: tuple of float
        Range of the fit.
    """
    c_f: float
    fit_residual: float
    x_range: tuple

    def __post_init__(self):
        assert self.c_f > 0, f"c_f expected to be > 0, got {self.c_f}"


@dataclasses.dataclass
class AsymptoticReport:
    """An arithmetic sum on a grid against its main term.

    Parameters
    ----------
    statistic: str
        One of ``STATISTICS``.
    x_grid: list of float
        Lengths (or sigma values for a pole probe).
    computed: list of float
        Computed sums.
    main_term: list of float
        Main terms.
    ratio: list of float | None
        computed / main_term where main_term > 0, nan elsewhere.
    extra: dict
        Further quantities.
    """
    statistic: str
    x_grid: list
    computed: list
    main_term: list
    ratio: list = None
    extra: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        if self.statistic not in STATISTICS:
            raise ValueError(
                f"statistic expected to be one of {STATISTICS}, got '{self.statistic}'")
        self.x_grid = [float(x) for x in self.x_grid]
        self.computed = [float(c) for c in self.computed]
        self.main_term = [float(m) for m in self.main_term]
        if self.ratio is None:
            self.ratio = [c / m if m > 0 else math.nan
                          for c, m in zip(self.computed, self.main_term)]

    def to_frame(self):
        return pd.DataFrame({"x": self.x_grid, "computed": self.computed,
                             "main_term": self.main_term, "ratio": self.ratio})

    def trend_toward_one(self, n_last=3):
        """Whether |ratio - 1| does not grow over the last ``n_last`` grid points."""
        tail = [abs(r - 1) for r in self.ratio[-n_last:]]
        return all(b <= a for a, b in zip(tail[:-1], tail[1:]))

    def summary(self):
        return (f"{self.statistic}: x={self.x_grid[-1]:g} computed={self.computed[-1]:.6g} "
                f"main={self.main_term[-1]:.6g} ratio={self.ratio[-1]:.4g}")


def _check_length(table, x):
    if x > table.n_max:
        raise ValueError(f"x={x} exceeds the table size {table.n_max}")
    if x < 1:
        raise ValueError(f"x expected to be >= 1, got {x}")


def _square_prefix(table, n_max):
    return np.cumsum(np.abs(table.values[:n_max + 1]) ** 2)


def estimate_cf(table, x_min, x_max, n_points=CF_GRID_POINTS):
    """Least-squares slope of A_f(x) = sum_{n <= x} |lambda(n)|^2 through the origin.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients, n_max >= x_max.
    x_min, x_max: float
        Range of a geometric grid of ``n_points`` integers.
    n_points: int
        Number of grid points.

    Returns
    -------
    constant: RankinSelbergConstant
    """
    if x_max < 2 * x_min:
        raise ValueError(f"degenerate fit range [{x_min}, {x_max}], x_max < 2 x_min")
    _check_length(table, x_max)
    _check_length(table, x_min)
    grid = np.unique(np.floor(np.geomspace(x_min, x_max, n_points)).astype(np.int64))
    prefix = _square_prefix(table, int(grid[-1]))[grid]
    x = grid.astype(float)
    c_f = float(np.dot(x, prefix) / np.dot(x, x))
    residual = float(np.max(np.abs(prefix - c_f * x) / (c_f * x)))
    if residual > RESIDUAL_WARNING:
        warnings.warn(f"Fit of c_f over [{x_min}, {x_max}] has relative residual "
                      f"{residual:.3g}.", UserWarning)
    log.info(f"c_f = {c_f:.10g} from x in [{x_min}, {x_max}], residual {residual:.3g}.")
    return RankinSelbergConstant(c_f=c_f, fit_residual=residual,
                                 x_range=(float(x_min), float(x_max)))


def default_cf(table, x_max):
    """c_f fitted over [x_max / 16, x_max]."""
    return estimate_cf(table, max(1.0, x_max / 16), x_max).c_f


def sum_suite(table, x_grid, c_f=None):
    """The four sums A_f, B_f, C_f, D_f on ``x_grid`` against their main terms.

    A_f(x) = sum_{n <= x} |lambda(n)|^2 against c_f x,
    B_f(x) = sum_{p <= x} |lambda(p)|^2 log p / p against log x,
    C_f(x) = sum_{p <= x} |lambda(p)|^2 / p against log log x and
    D_f(x) = sum_{n <= x} |lambda(n)| against x (log x)^-delta,
    delta = 4/5 - sqrt(27/2) / 5.

    Returns
    -------
    reports: list of AsymptoticReport
        'ransel', 'prime1', 'prime2' and 'absval'.
    """
    grid = np.array(sorted(int(math.floor(x)) for x in x_grid), dtype=np.int64)
    n_max = int(grid[-1])
    _check_length(table, n_max)
    if c_f is None:
        c_f = default_cf(table, n_max)
    squares = np.abs(table.values[:n_max + 1]) ** 2
    is_prime = prime_sieve(n_max)
    n = np.maximum(np.arange(n_max + 1), 1).astype(float)
    prime_squares = np.where(is_prime, squares, 0.0)
    x = grid.astype(float)
    log_x = np.log(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_log_x = np.where(x > 1, np.log(log_x), np.nan)
        absval_main = np.where(x > 1, x * log_x ** -DELTA, np.nan)
    reports = [
        AsymptoticReport("ransel", x, np.cumsum(squares)[grid], c_f * x, extra={"c_f": c_f}),
        AsymptoticReport("prime1", x, np.cumsum(prime_squares * np.log(n) / n)[grid], log_x),
        AsymptoticReport("prime2", x, np.cumsum(prime_squares / n)[grid], log_log_x),
        AsymptoticReport("absval", x, np.cumsum(np.sqrt(squares))[grid], absval_main,
                         extra={"delta": DELTA}),
    ]
    for report in reports:
        log.info(report.summary())
    return reports


def _weighted_point(table, x):
    x = int(x)
    n = np.arange(1, x + 1)
    a = alpha(table, x).values[1:]
    b = beta(table, x, n_max=x).values[1:]
    lam = table.values[1:x + 1]
    alpha_sum = math.fsum(np.abs(a) ** 2 / n)
    beta_sum = math.fsum(np.abs(b) ** 2 / n)
    log_x = math.log(x)
    expansion = 4 * log_x ** 2 * math.fsum(np.abs(lam) ** 2 / n) + \
        4 * log_x * math.fsum((lam * np.conj(a)).real / n) + alpha_sum
    return alpha_sum, beta_sum, beta_sum - expansion


def weighted_square_sums(table, x, c_f, n_jobs=1):
    """sum_{n <= x} |alpha(n)|^2 / n and sum_{n <= x} |beta_{f,x}(n)|^2 / n.

    Main terms are c_f log^3 x / 3 and 7 c_f log^3 x / 3. The beta report
    carries the residual of the expansion beta = -2 log x lambda - alpha in
    ``extra['expansion_residual']``.

    Parameters
    ----------
    x: float | list of float
        One length or a grid.

    Returns
    -------
    reports: tuple of AsymptoticReport
        'weighted_alpha' and 'weighted_beta'.
    """
    grid = [int(math.floor(v)) for v in np.atleast_1d(x)]
    for v in grid:
        _check_length(table, v)
    values = parallel_map(partial(_weighted_point, table), grid, n_jobs=n_jobs)
    cubes = [c_f * math.log(v) ** 3 for v in grid]
    reports = (
        AsymptoticReport("weighted_alpha", grid, [v[0] for v in values],
                         [c / 3 for c in cubes]),
        AsymptoticReport("weighted_beta", grid, [v[1] for v in values],
                         [7 * c / 3 for c in cubes],
                         extra={"expansion_residual": [v[2] for v in values]}),
    )
    for report in reports:
        log.info(report.summary())
    return reports


def _convolution_point(table, Lambda, x):
    x = int(x)
    sums = []
    for seq in (alpha(table, x), beta(table, x, n_max=x)):
        values = seq.values
        terms = []
        for m in Lambda.support():
            m = int(m)
            if m > x:
                break
            k = np.arange(1, x // m + 1)
            terms.append(Lambda.values[m] / m * np.sum(values[k] * np.conj(values[m * k]) / k))
        sums.append(complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms)))
    return tuple(sums)


def convolution_square_sums(table, x, c_f, Lambda=None, n_jobs=1):
    """sum_{mn <= x} Lambda_f(m) a(n) conj(a(mn)) / (mn) for a = alpha and a = beta_{f,x}.

    Main terms c_f log^4 x / 8 and 9 c_f log^4 x / 8. The computed values are
    the real parts; imaginary parts are in ``extra``.

    Parameters
    ----------
    Lambda: ArithSeq | None
        Replaces Lambda_f, e.g. by zeros.

    Returns
    -------
    reports: tuple of AsymptoticReport
        'convolution_alpha' and 'convolution_beta'.
    """
    grid = [int(math.floor(v)) for v in np.atleast_1d(x)]
    for v in grid:
        _check_length(table, v)
    if Lambda is None:
        Lambda = lambda_f_von_mangoldt(table, max(grid))
    values = parallel_map(partial(_convolution_point, table, Lambda), grid, n_jobs=n_jobs)
    quartics = [c_f * math.log(v) ** 4 for v in grid]
    reports = tuple(
        AsymptoticReport(name, grid, [v[i].real for v in values],
                         [factor * q / 8 for q in quartics],
                         extra={"imag": [v[i].imag for v in values]})
        for i, (name, factor) in enumerate([("convolution_alpha", 1), ("convolution_beta", 9)]))
    for report in reports:
        log.info(report.summary())
    return reports


def multiple_square_sum_check(table, p, y):
    """sum_{m <= y} |lambda(mp)|^2 / m against log y (bounded independently of p)."""
    grid = [int(math.floor(v)) for v in np.atleast_1d(y)]
    _check_length(table, p * max(grid))
    values = []
    for v in grid:
        m = np.arange(1, v + 1)
        values.append(math.fsum(np.abs(table.values[m * p]) ** 2 / m))
    report = AsymptoticReport("multiple_square", grid, values, [math.log(v) for v in grid],
                              extra={"p": int(p)})
    log.info(report.summary())
    return report


def shifted_sum_check(table, x, p, ell, y=None):
    """Shifted sums sum_{n <= y} a(n) conj(a(p^ell n)) / n for a = alpha and beta_{f,x}.

    Each is compared with its main term
    sum_{n <= y} |lambda(n)|^2 conj(lambda(p^ell)) w(n) / n, where w(n) is
    log n log(p^ell n) for alpha and log(x^2/n) log(x^2/(p^ell n)) for beta.
    ``ratio`` is |computed - main| over the error budget ell log^3 x / p.

    Returns
    -------
    reports: tuple of AsymptoticReport
        'shifted_alpha' and 'shifted_beta', the computed values being
        the absolute differences.
    """
    q = int(p) ** int(ell)
    if q > x:
        raise ValueError(f"p^ell = {q} exceeds x = {x}")
    y = int(math.floor(x / q)) if y is None else int(y)
    if not 1 <= y <= x:
        raise ValueError(f"y expected to be in [1, x], got {y}")
    _check_length(table, q * y)
    n = np.arange(1, y + 1)
    log_n = np.log(n)
    lam = lambda_f(table).values
    weight = np.abs(lam[n]) ** 2 * np.conj(lam[q]) / n
    log_x2 = 2 * math.log(x)
    a = alpha(table, q * y).values
    b_full = lam[:q * y + 1] * (np.log(np.maximum(np.arange(q * y + 1), 1)) - log_x2)
    budget = ell * math.log(x) ** 3 / p
    out = []
    alpha_weight = log_n * (log_n + math.log(q))
    beta_weight = (log_x2 - log_n) * (log_x2 - log_n - math.log(q))
    for name, seq, w in [("shifted_alpha", a, alpha_weight), ("shifted_beta", b_full, beta_weight)]:
        computed = np.sum(seq[n] * np.conj(seq[q * n]) / n)
        main = np.sum(weight * w)
        out.append(AsymptoticReport(
            name, [x], [abs(computed - main)], [budget],
            extra={"computed": [computed.real, computed.imag], "main": [main.real, main.imag],
                   "p": int(p), "ell": int(ell), "y": y}))
    return tuple(out)


def _convolved(table, kind, N, X):
    lam_vm = lambda_f_von_mangoldt(table, N)
    if kind == "lambda":
        seq = lambda_f(table, N)
    elif kind == "alpha":
        seq = alpha(table, N)
    else:
        if X is None:
            raise ValueError("kind 'beta' needs X")
        if N > X * X:
            raise ValueError(f"kind 'beta' needs N <= X^2, got N={N} and X={X}")
        seq = beta(table, X, n_max=N)
    return dirichlet_convolve(lam_vm, seq)


def pole_truncation(sigma, tail_tol=POLE_TAIL_TOL):
    """Smallest N with N^(1 - sigma) <= ``tail_tol``, inf when out of reach."""
    if not sigma > 1:
        raise ValueError(f"sigma expected to be > 1, got {sigma}")
    if not 0 < tail_tol < 1:
        raise ValueError(f"tail_tol expected to be in (0, 1), got {tail_tol}")
    log_n = math.log(1 / tail_tol) / (sigma - 1)
    if log_n > 700:
        return math.inf
    return math.ceil(math.exp(log_n) * (1 - 1e-12))


def pole_probe(table, kind, sigma_list, N=None, X=None, coefficients=None,
               tail_tol=POLE_TAIL_TOL):
    """Order of the pole at sigma = 1 of sum_{n <= N} |(Lambda_f * a)(n)|^2 / n^sigma.

    The order is the slope of log(sum) against log(1 / (sigma - 1)) by
    :func:`scipy.stats.linregress`. Expected orders are 3 for lambda and 5 for
    alpha and beta. The truncation has to leave a tail N^(1 - sigma) below
    ``tail_tol`` at the smallest sigma; the closer sigma comes to 1 the longer
    the table this takes, see :func:`pole_truncation`.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients.
    kind: str
        'lambda', 'alpha' or 'beta'.
    sigma_list: list of float
        At least two values > 1.
    N: int | None
        Truncation, defaults to the table size. Has to be at least
        ``pole_truncation(min(sigma_list), tail_tol)``.
    X: float | None
        Length of beta_{f,X}.
    coefficients: ArithSeq | None
        Replaces the convolution Lambda_f * a.
    tail_tol: float
        Bound on N^(1 - sigma) at the smallest sigma.

    Returns
    -------
    report: AsymptoticReport
        computed sums against (sigma - 1)^-order, with the fitted order in
        ``extra['fitted_order']`` (nan when the fit is rejected).
    """
    if kind not in POLE_ORDERS:
        raise ValueError(f"kind expected to be one of {tuple(POLE_ORDERS)}, got '{kind}'")
    sigmas = np.array(sorted(sigma_list, reverse=True), dtype=float)
    if np.any(sigmas <= 1):
        raise ValueError(f"sigma expected to be > 1, got {sigma_list}")
    if len(sigmas) < 2:
        raise ValueError("pole probe needs at least two sigma values")
    N = table.n_max if N is None else int(N)
    needed = pole_truncation(sigmas[-1], tail_tol)
    if N < needed:
        raise ValueError(
            f"truncation N={N} leaves a tail N^(1-sigma) = {N ** (1 - sigmas[-1]):.3g} > "
            f"tail_tol={tail_tol} at sigma={sigmas[-1]}; need N >= {needed}")
    conv = _convolved(table, kind, N, X) if coefficients is None else coefficients
    n = np.arange(1, N + 1, dtype=float)
    squares = np.abs(conv.values[1:N + 1]) ** 2
    sums = [math.fsum(squares / n ** s) for s in sigmas]
    order = POLE_ORDERS[kind]
    main = [(s - 1) ** -order for s in sigmas]
    extra = {"kind": kind, "N": N, "expected_order": order, "tail_tol": tail_tol,
             "tail_proxy": [float(N ** (1 - s)) for s in sigmas]}
    if min(sums) > 0:
        fit = stats.linregress(np.log(1 / (sigmas - 1)), np.log(sums))
        extra.update(fitted_order=float(fit.slope), intercept=float(fit.intercept),
                     r_value=float(fit.rvalue))
    else:
        warnings.warn(f"Pole probe '{kind}': vanishing sums, fit rejected.", UserWarning)
        extra["fitted_order"] = math.nan
    report = AsymptoticReport("pole_probe", sigmas, sums, main, extra=extra)
    log.info(f"Pole probe '{kind}': fitted order {extra['fitted_order']:.4g} "
             f"(expected {order}).")
    return report
