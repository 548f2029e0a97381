"""
Evaluation of L(s, f) anywhere in the plane by incomplete gamma sums.

With Q = sqrt(q) / (2 pi), kappa = (k - 1) / 2 and any A = exp(i beta),
|beta| < pi / 2,

    L(s) = sum_n lambda(n) n^-s G(s + kappa, n A / Q)
         + eps psi(s) sum_n conj(lambda(n)) n^(s-1) G(1 - s + kappa, n / (A Q)),

where G(a, x) = Gamma(a, x) / Gamma(a) is the regularized upper incomplete
gamma function. The rotation beta towards the sign of Im(s) keeps the terms
from growing like exp(pi |t| / 2) and the sums converge geometrically.
"""

# License: BSD (3-clause)

import logging
import math

from .gamma import _is_pole, psi_f

log = logging.getLogger(__name__)

GUARD_BITS = 20


def rotation_angle(t, precision):
    """beta = sign(t) (pi/2 - theta) with theta = min(pi/4, precision log 2 / |t|)."""
    if t == 0:
        return 0.0
    theta = min(math.pi / 4, precision * math.log(2) / abs(t))
    return math.copysign(math.pi / 2 - theta, t)


def guard_bits(t, beta):
    """Bits lost to cancellation between terms of size exp(|t| theta)."""
    return int(math.ceil(abs(t) * (math.pi / 2 - abs(beta)) / math.log(2))) + GUARD_BITS


def terms_needed(form, s, beta, precision):
    """Number of terms after which both incomplete gamma sums are negligible."""
    Q = math.sqrt(form.level) / (2 * math.pi)
    sigma, t = float(s.real), float(s.imag)
    kappa = (form.weight - 1) / 2
    decay = math.cos(beta)
    budget = abs(t) * (math.pi / 2 - abs(beta)) + precision * math.log(2) + GUARD_BITS
    n = Q * budget / decay
    for _ in range(3):
        n = Q * (budget + (abs(sigma) + kappa + 1) * math.log(1 + n / Q)) / decay
    return int(math.ceil(n)) + 1


def split_sums(table, s, ctx, beta=None):
    """The two incomplete gamma sums (P, R) with L(s) = P + eps R.

    R includes the factor psi_f(s). Both depend on beta; their combination
    with the true root number does not, which is how the root number is
    found.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients of f.
    s: complex | mpc
        Evaluation point.
    ctx: EvalContext
        Evaluation context.
    beta: float | None
        Rotation angle, by default :func:`rotation_angle`.

    Returns
    -------
    P, R: mpc
        At the current precision of ``ctx.mp``.
    """
    mp = ctx.mp
    form = table.form
    s = mp.mpc(s)
    t = float(s.imag)
    if beta is None:
        beta = rotation_angle(t, mp.prec)
    if not abs(beta) < math.pi / 2:
        raise ValueError(f"rotation angle expected in (-pi/2, pi/2), got {beta}")
    target_prec = mp.prec
    with mp.extraprec(guard_bits(t, beta)):
        kappa = mp.mpf(form.weight - 1) / 2
        a_left, a_right = s + kappa, 1 - s + kappa
        if _is_pole(mp, a_left):
            return mp.mpc(0), mp.mpc(0)
        n_terms = terms_needed(form, s, beta, target_prec)
        if n_terms > table.n_max:
            raise ValueError(
                f"coefficient table too short: need n <= {n_terms} at s={mp.nstr(s, 8)}, "
                f"have {table.n_max}")
        lam = ctx.coefficients(table, n_terms)
        lam_bar = ctx.coefficients(table.conjugate(), n_terms)
        A = mp.expj(beta)
        Q = mp.sqrt(form.level) / (2 * mp.pi)
        x_left, x_right = A / Q, 1 / (A * Q)
        left = mp.fsum(
            lam[n] * mp.power(n, -s) * mp.gammainc(a_left, n * x_left, regularized=True)
            for n in range(1, n_terms + 1) if lam[n] != 0)
        right = mp.fsum(
            lam_bar[n] * mp.power(n, s - 1) *
            mp.gammainc(a_right, n * x_right, regularized=True)
            for n in range(1, n_terms + 1) if lam_bar[n] != 0)
        right *= psi_f(form, s, mp)
    return +left, +right


def _root_number(form, mp):
    eps = form.root_number
    if eps is None:
        raise ValueError(
            f"root number of {form.label} unknown, run compute_root_number first")
    return mp.mpc(eps.real, eps.imag)


def evaluate_L(table, s, ctx, beta=None):
    """L(s, f) at the working precision of ``ctx``.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients of f, whose descriptor carries the root number.
    s: complex | mpc
        Evaluation point.
    ctx: EvalContext
        Evaluation context.
    beta: float | None
        Rotation angle, see :func:`split_sums`.

    Returns
    -------
    value: mpc
    """
    mp = ctx.mp
    eps = _root_number(table.form, mp)
    left, right = split_sums(table, s, ctx, beta=beta)
    return left + eps * right


def evaluate_L_prime(table, s, ctx, order=1):
    """d^order/ds^order L(s, f) by numerical differentiation of :func:`evaluate_L`."""
    mp = ctx.mp
    s = mp.mpc(s)
    _root_number(table.form, mp)
    return mp.diff(lambda h: evaluate_L(table, s + h, ctx), 0, order)
