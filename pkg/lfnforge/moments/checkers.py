"""
Checkers comparing sums over zeros and mean values of Dirichlet polynomials
with the size of their main terms and error budgets.

The implied constants of these estimates are not known, so every checker
reports a ratio and never asserts a bound.
"""

# License: BSD (3-clause)

import logging
import math

import numpy as np
from scipy import integrate
from sklearn.utils import check_random_state

from ..arith import ArithSeq, dirichlet_convolve, lambda_f_von_mangoldt, prime_sieve
from ..lfun.context import ConvergenceError
from .base import MomentReport, ordered_sum, window_zeros

log = logging.getLogger(__name__)

QUAD_TOLERANCE = 1e-6
CLOSED_FORM_MAX_TERMS = 4000
ZERO_CHUNK = 512


def random_unit_coefficients(n, random_state=None):
    """n complex numbers exp(2 pi i u) with u uniform on [0, 1)."""
    rng = check_random_state(random_state)
    return np.exp(2j * np.pi * rng.uniform(size=n))


def as_coefficients(coeffs):
    """Complex array c with c[n] = a(n) for n >= 1 and c[0] = 0."""
    if isinstance(coeffs, ArithSeq):
        coeffs = coeffs.values
    values = np.array(coeffs, dtype=np.complex128)
    if values.ndim != 1:
        raise ValueError(f"coefficients expected to be one-dimensional, got {values.shape}")
    values[:1] = 0
    return values


def _zero_sum(gammas, func):
    """Componentwise exact sum of func(gamma chunk) over all chunks."""
    parts = [func(gammas[i:i + ZERO_CHUNK]) for i in range(0, len(gammas), ZERO_CHUNK)]
    return ordered_sum(complex(v) for part in parts for v in part) if parts else 0.0


def prime_power_base(n):
    """p when n = p^m with m >= 1, otherwise None."""
    if n < 2:
        return None
    p = next((d for d in range(2, math.isqrt(n) + 1) if n % d == 0), n)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def distance_to_prime_power(x):
    """Distance from x to the nearest prime power other than x."""
    best = math.inf
    lo, hi = math.floor(x), math.ceil(x)
    if lo == hi:
        lo, hi = lo - 1, hi + 1
    while lo >= 2 and x - lo < best:
        if prime_power_base(lo) is not None:
            best = x - lo
            break
        lo -= 1
    while hi - x < best:
        if prime_power_base(hi) is not None:
            best = hi - x
            break
        hi += 1
    return best


def gonek_budget(x, T):
    """The three error terms x log(2xT) loglog(3x), log x min(T, x/<x>), log(2T) min(T, 1/log x)."""
    log_x = math.log(x)
    first = x * math.log(2 * x * T) * math.log(math.log(3 * x))
    second = log_x * min(T, x / distance_to_prime_power(x))
    third = math.log(2 * T) * (min(T, 1 / log_x) if log_x > 0 else T)
    return first, second, third


def landau_gonek_check(store, table, x, T):
    """sum_{0 < gamma <= T} x^rho against -(T / 2pi) Lambda_f(x).

    Parameters
    ----------
    store: ZeroStore
        Zeros covering (0, T].
    table: CoefficientTable
        Coefficients of the form, with n_max >= x when x is an integer.
    x: float
        Base, at least 1. Lambda_f(x) vanishes unless x is a prime power.
    T: float
        Height.

    Returns
    -------
    report: MomentReport
        raw = |sum - main term|, normalizer = the sum of the three error terms.
    """
    if x < 1:
        raise ValueError(f"x expected to be >= 1, got {x}")
    store.check_coverage(T)
    gammas = np.array([r.gamma for r in store.window(0, T)], dtype=float)
    log_x = math.log(x)
    total = _zero_sum(gammas, lambda g: math.sqrt(x) * np.exp(1j * g * log_x))
    lam = 0.0
    if float(x).is_integer() and prime_power_base(int(x)) is not None:
        lam = lambda_f_von_mangoldt(table, int(x))[int(x)]
    main = -T / (2 * math.pi) * complex(lam)
    residual = complex(total) - main
    budget = gonek_budget(x, T)
    report = MomentReport(
        "landau_gonek", T, abs(residual), sum(budget),
        extra={"x": x, "sum": [complex(total).real, complex(total).imag],
               "main_term": [main.real, main.imag], "budget_terms": list(budget),
               "relative_to_main": abs(residual) / abs(main) if main != 0 else math.nan,
               "n_zeros": len(gammas)})
    log.info(report.summary())
    return report


def _mv_closed_form(n, c, T0, H):
    """int_T0^(T0+H) |sum c n^-it|^2 dt summed pairwise."""
    log_n = np.log(n)
    diff = log_n[None, :] - log_n[:, None]
    weights = c[:, None] * np.conj(c[None, :])
    off = diff != 0
    phase = np.zeros_like(weights)
    phase[off] = (np.exp(1j * diff[off] * (T0 + H)) - np.exp(1j * diff[off] * T0)) \
        / (1j * diff[off])
    return float(H * np.sum(np.abs(c) ** 2) + np.sum(weights[off] * phase[off]).real)


def mv_meanvalue_check(coeffs, T0, H):
    """int_T0^(T0+H) |sum a(n) n^-it|^2 dt against H sum |a(n)|^2.

    The integral is computed with :func:`scipy.integrate.quad` on panels of
    unit length and, for up to 4000 terms, checked against the closed form of
    the integrated double sum.

    Returns
    -------
    report: MomentReport
        raw = |integral - H sum |a|^2|, normalizer = sum n |a(n)|^2.
    """
    if not H > 0:
        raise ValueError(f"H expected to be > 0, got {H}")
    values = as_coefficients(coeffs)
    n = np.flatnonzero(values)
    c = values[n]
    diagonal = math.fsum(np.abs(c) ** 2)
    normalizer = math.fsum(n * np.abs(c) ** 2)
    if len(n) == 0:
        return MomentReport("mv_meanvalue", T0, 0.0, 0.0, extra={"H": H, "integral": 0.0})
    log_n = np.log(n)

    def integrand(t):
        return abs(np.sum(c * np.exp(-1j * t * log_n))) ** 2

    edges = np.append(np.arange(T0, T0 + H, 1.0), T0 + H)
    pieces = []
    for a, b in zip(edges[:-1], edges[1:]):
        value, error = integrate.quad(integrand, a, b, limit=50)
        if error > QUAD_TOLERANCE * max(1.0, abs(value)):
            raise ConvergenceError(f"quadrature failed on [{a}, {b}]: error estimate {error:.3g}")
        pieces.append(value)
    integral = math.fsum(pieces)
    extra = {"H": H, "integral": integral, "diagonal": H * diagonal, "n_terms": len(n)}
    if len(n) <= CLOSED_FORM_MAX_TERMS:
        closed = _mv_closed_form(n, c, T0, H)
        if abs(closed - integral) > QUAD_TOLERANCE * max(1.0, abs(closed)):
            raise ConvergenceError(f"quadrature {integral} disagrees with the closed form {closed}")
        extra["closed_form"] = closed
    report = MomentReport("mv_meanvalue", T0, abs(integral - H * diagonal), normalizer,
                          extra=extra)
    log.info(report.summary())
    return report


def _prime_poly_moment(gammas, primes, a, w, shift_factor, m):
    """sum over zeros of |sum_p a(p) p^-(k rho + w)|^(2m) with k = shift_factor."""
    if len(primes) == 0:
        return 0.0
    log_p = np.log(primes)

    def chunk(g):
        exponent = -(shift_factor * (0.5 + 1j * g[:, None]) + w) * log_p[None, :]
        return np.abs(np.exp(exponent) @ a) ** (2 * m)

    return _zero_sum(gammas, chunk).real


def prime_poly_moment_check(store, a, x, m, w=0.0, T=None, C=1.0):
    """High moments of prime Dirichlet polynomials over the zeros 0 < gamma <= T.

    With P1(rho) = sum_{p <= x} a(p) p^-(rho + w) and
    P2(rho) = sum_{p <= sqrt(x)} a(p) p^-(2 rho + w), the sums of
    |P1|^(2m) and |P2|^(2m) are compared with
    m! N (sum |a(p)|^2 / p)^m and m! N (sum |a(p)|^2 / p^2)^m.

    Parameters
    ----------
    store: ZeroStore
        Zeros covering (0, T].
    a: dict
        Coefficients a(p) by prime; missing primes count as 0.
    x: float
        Length, 2 <= x <= T with x^m <= T^(2/3).
    m: int
        Moment order.
    w: complex
        Shift with Re w >= 0.
    T: float | None
        Height, defaults to the store's T_max.
    C: float
        Constant of the budget; ``extra['within_budget']`` is raw <= C * normalizer.

    Returns
    -------
    reports: tuple of MomentReport
        The first and the second sum.
    """
    T = store.T_max if T is None else T
    w = complex(w)
    if int(m) != m or m < 1:
        raise ValueError(f"m expected to be a natural number, got {m}")
    if w.real < 0:
        raise ValueError(f"Re(w) expected to be >= 0, got w={w}")
    if not 2 <= x <= T:
        raise ValueError(f"x expected to be in [2, T={T}], got {x}")
    if x ** m > T ** (2 / 3):
        raise ValueError(f"x^m = {x ** m:.6g} exceeds T^(2/3) = {T ** (2 / 3):.6g}")
    store.check_coverage(T)
    gammas = np.array([r.gamma for r in store.window(0, T)], dtype=float)
    n_zeros = len(gammas)
    reports = []
    for name, bound, k in [("prime_poly_first", x, 1), ("prime_poly_second", math.sqrt(x), 2)]:
        primes = np.flatnonzero(prime_sieve(int(math.floor(bound))))
        coefficients = np.array([complex(a.get(int(p), 0)) for p in primes], dtype=np.complex128)
        raw = _prime_poly_moment(gammas, primes, coefficients, w, k, int(m))
        mass = math.fsum(np.abs(coefficients) ** 2 / primes.astype(float) ** k)
        normalizer = math.factorial(int(m)) * n_zeros * mass ** m
        reports.append(MomentReport(
            name, T, raw, normalizer,
            extra={"x": x, "m": int(m), "w": [w.real, w.imag], "C": C, "n_zeros": n_zeros,
                   "within_budget": bool(raw <= C * normalizer * (1 + 1e-12))}))
        log.info(reports[-1].summary())
    return tuple(reports)


def discrete_mean_check(store, table, coeffs, T):
    """sum_{T < gamma <= 2T} |A(rho)|^2 against its main term.

    The main term is (T / pi) (log X sum |a(n)|^2 / n - Re sum (Lambda_f * a)(n) conj(a(n)) / n)
    with X = sqrt(q) T / 2pi and A(s) = sum a(n) n^-s.
    """
    values = as_coefficients(coeffs)
    n_max = len(values) - 1
    records = window_zeros(store, T)
    n = np.flatnonzero(values)
    c = values[n]
    log_n = np.log(n)

    def chunk(g):
        return np.abs(np.exp(-(0.5 + 1j * g[:, None]) * log_n[None, :]) @ c) ** 2

    raw = _zero_sum(np.array([r.gamma for r in records]), chunk).real if len(n) else 0.0
    X = math.sqrt(table.form.level) * T / (2 * math.pi)
    conv = dirichlet_convolve(lambda_f_von_mangoldt(table, n_max), ArithSeq.custom(values))
    idx = np.arange(1, n_max + 1)
    diagonal = math.fsum(np.abs(values[1:]) ** 2 / idx)
    cross = math.fsum((conv.values[1:] * np.conj(values[1:]) / idx).real)
    main = T / math.pi * (math.log(X) * diagonal - cross)
    report = MomentReport("discrete_mean", T, raw, main,
                          extra={"X": X, "diagonal": diagonal, "cross": cross,
                                 "n_zeros": len(records)})
    log.info(report.summary())
    return report


def dirichlet_bound_check(store, coeffs, T):
    """sum_{T < gamma <= 2T} |B(gamma)|^2 against (log T / loglog T)(sqrt(S1 S2) + S3^2) + S1 log T.

    B(t) = sum b(n) n^-it, S1 = sum |b|^2 (T + n), S2 = sum |b|^2 (T + n) log^2 n
    and S3 = sum |b|.
    """
    if T <= math.exp(math.e):
        raise ValueError(f"T expected to be > e^e, got {T}")
    values = as_coefficients(coeffs)
    records = window_zeros(store, T)
    n = np.flatnonzero(values)
    b = values[n]
    log_n = np.log(n)

    def chunk(g):
        return np.abs(np.exp(-1j * g[:, None] * log_n[None, :]) @ b) ** 2

    raw = _zero_sum(np.array([r.gamma for r in records]), chunk).real if len(n) else 0.0
    weights = np.abs(b) ** 2 * (T + n)
    s1 = math.fsum(weights)
    s2 = math.fsum(weights * log_n ** 2)
    s3 = math.fsum(np.abs(b))
    log_t = math.log(T)
    budget = log_t / math.log(log_t) * (math.sqrt(s1 * s2) + s3 ** 2) + s1 * log_t
    report = MomentReport("dirichlet_bound", T, raw, budget,
                          extra={"S1": s1, "S2": s2, "S3": s3, "n_zeros": len(records)})
    log.info(report.summary())
    return report
