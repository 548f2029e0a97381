"""
Upper bound for log|L(sigma + it, f)| by short prime sums, valid for
mu >= mu_0 where exp(-mu_0) = mu_0.
"""

# License: BSD (3-clause)

import dataclasses
import logging
import math

import mpmath
import numpy as np

from ..arith import prime_sieve
from .engine import evaluate_L

log = logging.getLogger(__name__)

MU_0 = float(mpmath.lambertw(1).real)


@dataclasses.dataclass
class PrimeInequality:
    """Both sides of the prime-sum bound at one point.

    ``slack = rhs - lhs`` is the room left for the O(1) term; the bound
    predicts it stays bounded below as T grows.
    """
    t: float
    x: float
    mu: float
    lhs: float
    rhs: float
    terms: dict

    @property
    def slack(self):
        return self.rhs - self.lhs


def prime_inequality(table, ctx, t, x, mu=MU_0, T=None, sigma=0.5):
    """Evaluate log|L(sigma + it)| against the prime-sum bound.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients of f up to x.
    ctx: EvalContext
        Evaluation context.
    t: float
        Height, T <= t <= 2T.
    x: float
        Length of the prime sum, 3 <= x <= T^2.
    mu: float
        Shift parameter, mu_0 <= mu <= log(x) / 4.
    T: float | None
        Window height, defaults to t.
    sigma: float
        Real part, 1/2 <= sigma <= 1/2 + mu / log x.

    Returns
    -------
    result: PrimeInequality
    """
    T = t if T is None else T
    if mu < MU_0:
        raise ValueError(f"mu expected to be >= mu_0 = {MU_0:.6f}, got {mu}")
    if not 3 <= x <= T * T:
        raise ValueError(f"x expected to be in [3, T^2] = [3, {T * T:g}], got {x}")
    if mu > math.log(x) / 4:
        raise ValueError(f"mu expected to be <= log(x)/4 = {math.log(x) / 4:.6g}, got {mu}")
    sigma_mu = 0.5 + mu / math.log(x)
    if not 0.5 <= sigma <= sigma_mu:
        raise ValueError(f"sigma expected to be in [1/2, {sigma_mu:.6g}], got {sigma}")
    n_x = int(math.floor(x))
    if n_x > table.n_max:
        raise ValueError(f"coefficient table too short: need n <= {n_x}, have {table.n_max}")
    mp = ctx.mp
    lhs = float(mp.log(abs(evaluate_L(table, mp.mpc(sigma, t), ctx))))

    s = complex(sigma_mu, t)
    primes = np.flatnonzero(prime_sieve(n_x))
    lam = table.values
    chi = table.form.character
    weights = np.log(x / primes) / math.log(x)
    prime_sum = np.sum(lam[primes] * np.exp(-s * np.log(primes)) * weights).real
    small = primes[primes <= math.sqrt(x)]
    square_values = np.array([lam[p * p] - chi(int(p)) for p in small], dtype=complex)
    square_weights = np.log(math.sqrt(x) / small) / math.log(math.sqrt(x))
    square_sum = np.sum(
        square_values * np.exp(-2 * s * np.log(small)) * square_weights).real
    log_term = (1 + mu) * math.log(T) / math.log(x)
    rhs = float(prime_sum + square_sum + log_term)
    terms = {"prime": float(prime_sum), "prime_square": float(square_sum),
             "log_term": log_term}
    log.debug(f"log|L| = {lhs:.6g} <= {rhs:.6g} at t={t}, x={x}.")
    return PrimeInequality(t=float(t), x=float(x), mu=float(mu), lhs=lhs, rhs=rhs, terms=terms)
