"""
Real-valued Z-function on the critical line, the phase theta_f and S_f(t).
"""

# License: BSD (3-clause)

import logging
import math

import numpy as np

from ..arith import lambda_f_von_mangoldt
from .context import ConvergenceError
from .engine import evaluate_L
from .gamma import log_q

log = logging.getLogger(__name__)

ZERO_DISTANCE = 1e-6
SMALL_VALUE = 1e-8
MAX_PHASE_STEP = math.pi / 4


def theta_phase(form, t, mp):
    """phi(t) = t log(sqrt(q)/2pi) + Im log Gamma(1/2 + kappa + it).

    psi_f(1/2 + it) = exp(-2 i phi(t)). The log-gamma branch is continuous in
    t, so no unwrapping is needed.
    """
    t = mp.mpf(t)
    kappa = mp.mpf(form.weight - 1) / 2
    return t * log_q(form, mp) + mp.im(mp.loggamma(mp.mpf(0.5) + kappa + 1j * t))


def theta_f(form, t, mp):
    """phi(t) / pi, the smooth part of the zero counting function."""
    return theta_phase(form, t, mp) / mp.pi


def main_term_count(t, level=1):
    """(t/pi) log(sqrt(q) t / (2 pi e)), the leading terms of theta_f for level q."""
    if t <= 0:
        return 0.0
    return t / math.pi * math.log(math.sqrt(level) * t / (2 * math.pi * math.e))


def _check_z_defined(form):
    if not form.self_dual:
        raise ValueError(f"Z undefined for the non-self-dual form {form.label}")
    eps = form.root_number
    if eps is None or eps not in (1, -1):
        raise ValueError(f"Z undefined for root number {eps} of {form.label}")
    return int(eps.real)


def rotate_to_real(form, t, value, mp):
    """Z from L(1/2 + it): the real (eps = +1) or imaginary (eps = -1) part of
    exp(i phi(t)) L(1/2 + it).

    The other part has to stay below 2^(-2 prec / 3) max(1, |L|), a third of the
    working bits above the unit roundoff.
    """
    sign = _check_z_defined(form)
    rotated = mp.expj(theta_phase(form, t, mp)) * value
    z, other = (rotated.real, rotated.imag) if sign == 1 else (rotated.imag, rotated.real)
    tol = mp.ldexp(1, -(2 * mp.prec) // 3) * max(1, abs(value))
    if abs(other) > tol:
        raise ValueError(
            f"rotated L(1/2+{t}i) is not real: residual part {mp.nstr(other, 5)} > "
            f"{mp.nstr(tol, 5)}")
    return z


def z_function(table, t, ctx):
    """Hardy's Z for a self-dual form with eps = +1 or -1.

    Z(t)^2 = |L(1/2 + it)|^2 and sign changes of Z are the zeros of odd
    multiplicity on the critical line.
    """
    form = table.form
    _check_z_defined(form)
    mp = ctx.mp
    value = evaluate_L(table, mp.mpc(0.5, t), ctx)
    return rotate_to_real(form, t, value, mp)


def _phase_increment(a, b):
    return float(np.angle(complex(b) / complex(a)))


def track_phase(func, z0, z1, mp, n_steps=8, max_depth=12):
    """Continuous change of arg func(z) along the segment [z0, z1].

    The segment is cut in ``n_steps`` pieces; a piece whose phase increment
    exceeds pi/4 is bisected.

    Returns
    -------
    change: float
        Total change of the argument in radians.
    """
    z0, z1 = mp.mpc(z0), mp.mpc(z1)

    def piece(a, b, fa, fb, depth):
        delta = _phase_increment(fa, fb)
        if abs(delta) <= MAX_PHASE_STEP:
            return delta
        if depth >= max_depth:
            raise ConvergenceError(
                f"phase of L does not settle between {mp.nstr(a, 8)} and {mp.nstr(b, 8)}; "
                f"too close to a zero?")
        mid = (a + b) / 2
        fmid = func(mid)
        return piece(a, mid, fa, fmid, depth + 1) + piece(mid, b, fmid, fb, depth + 1)

    points = [z0 + (z1 - z0) * i / n_steps for i in range(n_steps + 1)]
    values = [func(z) for z in points]
    return sum(piece(points[i], points[i + 1], values[i], values[i + 1], 0)
               for i in range(n_steps))


def dirichlet_sigma(n_terms):
    """Abscissa beyond which the series of log L truncated at n_terms is
    accurate to about 1e-12."""
    return 1 + math.log(2e12) / math.log(n_terms)


def log_L_series(table, s, n_terms):
    """log L(s, f) = sum Lambda_f(n) / log n n^-s, absolutely convergent for Re s > 1."""
    lam = lambda_f_von_mangoldt(table, n_terms).values
    n = np.arange(2, n_terms + 1)
    weights = lam[2:] / np.log(n)
    return complex(np.sum(weights * np.exp(-complex(s) * np.log(n))))


def s_f(table, t, ctx, store=None, n_terms=None):
    """S_f(t) = arg L(1/2 + it) / pi, the argument taken continuously from +infinity.

    The argument at sigma_c is read off the Dirichlet series of log L; from
    there the phase of L is tracked along the horizontal segment down to 1/2.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients of f.
    t: float
        Height, not the ordinate of a zero.
    ctx: EvalContext
        Evaluation context.
    store: ZeroStore | None
        When given, t closer than 1e-6 to a stored ordinate is rejected.
    n_terms: int | None
        Length of the log L series, by default min(n_max, 20000).

    Returns
    -------
    value: float
    """
    if store is not None:
        gammas = store.gammas
        if len(gammas) and np.min(np.abs(gammas - t)) < ZERO_DISTANCE:
            raise ValueError(f"t={t} too close to a zero ordinate")
    mp = ctx.mp
    if n_terms is None:
        n_terms = min(table.n_max, 20000)
    sigma_c = dirichlet_sigma(n_terms)
    if abs(evaluate_L(table, mp.mpc(0.5, t), ctx)) <= SMALL_VALUE:
        raise ValueError(f"t={t} too close to a zero ordinate: |L(1/2+it)| <= {SMALL_VALUE}")
    start = log_L_series(table, complex(sigma_c, t), n_terms).imag
    change = track_phase(lambda z: evaluate_L(table, z, ctx),
                         mp.mpc(sigma_c, t), mp.mpc(0.5, t), mp,
                         n_steps=int(math.ceil((sigma_c - 0.5) / 0.25)))
    return (start + change) / math.pi
