"""
Adaptive composite Gauss-Legendre quadrature of vector-valued integrands.
"""

# License: BSD (3-clause)

import logging
import math

from mpmath.calculus.quadrature import GaussLegendre

from .context import ConvergenceError

log = logging.getLogger(__name__)


def default_tolerance(mp):
    """Absolute panel tolerance, scaled by max(1, |panel value|)."""
    return mp.ldexp(1, -(mp.prec // 2 + 10))


def integrate(func, lo, hi, ctx, tol=None):
    """Integrate ``func`` over [lo, hi] on panels of width ``ctx.quadrature_step``.

    Each panel is integrated with Gauss-Legendre rules of degree
    ``ctx.quadrature_degree`` and one lower; when they disagree by more than
    ``tol`` the panel is bisected, at most ``ctx.max_depth`` times.

    Parameters
    ----------
    func: callable
        Maps a real ``mpf`` to a list of ``mpc`` values. All components are
        integrated on the same nodes.
    lo, hi: float
        Integration range.
    ctx: EvalContext
        Supplies precision, panel width, degree and depth.
    tol: mpf | None
        Panel tolerance, default :func:`default_tolerance`.

    Returns
    -------
    integrals: list of mpc
    """
    mp = ctx.mp
    if tol is None:
        tol = default_tolerance(mp)
    rule = GaussLegendre(mp)
    fine = rule.get_nodes(-1, 1, ctx.quadrature_degree, mp.prec)
    coarse = rule.get_nodes(-1, 1, ctx.quadrature_degree - 1, mp.prec)

    def apply(nodes, a, b):
        half, mid = (b - a) / 2, (b + a) / 2
        total = None
        for x, weight in nodes:
            values = func(mid + half * x)
            if total is None:
                total = [weight * v for v in values]
            else:
                total = [acc + weight * v for acc, v in zip(total, values)]
        return [half * acc for acc in total]

    def panel(a, b, depth):
        estimate = apply(fine, a, b)
        rough = apply(coarse, a, b)
        error = max(abs(e - r) for e, r in zip(estimate, rough))
        scale = max([1] + [abs(e) for e in estimate])
        if error <= tol * scale:
            return estimate
        if depth >= ctx.max_depth:
            raise ConvergenceError(
                f"quadrature did not converge on [{mp.nstr(a, 8)}, {mp.nstr(b, 8)}]: "
                f"refinements disagree by {mp.nstr(error, 3)}")
        mid = (a + b) / 2
        return [x + y for x, y in zip(panel(a, mid, depth + 1), panel(mid, b, depth + 1))]

    n_panels = max(1, int(math.ceil((hi - lo) / ctx.quadrature_step - 1e-9)))
    edges = [mp.mpf(lo) + (mp.mpf(hi) - lo) * i / n_panels for i in range(n_panels + 1)]
    total = None
    for a, b in zip(edges[:-1], edges[1:]):
        part = panel(a, b, 0)
        total = part if total is None else [x + y for x, y in zip(total, part)]
    log.debug(f"Integrated over [{lo}, {hi}] with {n_panels} panels.")
    return total
