"""
Derivatives by Cauchy's integral formula on a small circle.
"""

# License: BSD (3-clause)

import logging
import math

from .context import ConvergenceError
from .engine import evaluate_L

log = logging.getLogger(__name__)

MAX_NODES = 1024


def cauchy_derivative(func, s, m, R, mp, max_nodes=MAX_NODES):
    """m-th derivative of an analytic ``func`` at s.

    f^(m)(s) = m! / R^m * (1/N) sum_j f(s + R e^(2 pi i j/N)) e^(-2 pi i j m/N),
    the trapezoidal rule on the circle |w - s| = R. Starting from 16 + 2m
    nodes, the node count is doubled (reusing all previous values) until two
    estimates agree to 2^(-precision/2).

    Parameters
    ----------
    func: callable
        Maps an ``mpc`` to an ``mpc``.
    s: complex | mpc
        Center.
    m: int
        Order, m >= 0.
    R: float
        Radius, 0 < R < 1/2.
    mp: mpmath.MPContext
        Context fixing the precision.
    max_nodes: int
        Give up beyond this many nodes.

    Returns
    -------
    derivative: mpc
    """
    if m < 0 or int(m) != m:
        raise ValueError(f"m expected to be a natural number, got {m}")
    if not 0 < R < 0.5:
        raise ValueError(f"R expected to be in (0, 1/2), got {R}")
    m = int(m)
    s = mp.mpc(s)
    tol = mp.ldexp(1, -(mp.prec // 2))
    with mp.extraprec(int(math.ceil(m * math.log2(1 / R))) + 10):
        radius = mp.mpf(R)
        scale = mp.factorial(m) / radius ** m

        def estimate(values):
            n = len(values)
            total = mp.fsum(v * mp.expjpi(-2 * mp.mpf(j * m) / n) for j, v in enumerate(values))
            return scale * total / n

        n_nodes = 16 + 2 * m
        values = [func(s + radius * mp.expjpi(2 * mp.mpf(j) / n_nodes))
                  for j in range(n_nodes)]
        current = estimate(values)
        while True:
            n_nodes *= 2
            odd = [func(s + radius * mp.expjpi(2 * mp.mpf(j) / n_nodes))
                   for j in range(1, n_nodes, 2)]
            merged = [None] * n_nodes
            merged[0::2], merged[1::2] = values, odd
            refined = estimate(merged)
            if abs(refined - current) <= tol * max(1, abs(refined)):
                log.debug(f"Cauchy derivative of order {m} converged with {n_nodes} nodes.")
                return +refined
            if n_nodes >= max_nodes:
                raise ConvergenceError(
                    f"Cauchy derivative of order {m} did not converge with {n_nodes} nodes: "
                    f"estimates differ by {mp.nstr(abs(refined - current), 3)}")
            values, current = merged, refined


def derivative_via_cauchy(table, s, m, R, ctx):
    """L^(m)(s, f) from values of L on the circle of radius R around s."""
    mp = ctx.mp
    return cauchy_derivative(lambda z: evaluate_L(table, z, ctx), s, m, R, mp)
