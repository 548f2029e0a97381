"""
Numerical determination of the root number eps_f.
"""

# License: BSD (3-clause)

import logging
import math

from ..lfun.engine import rotation_angle, split_sums

log = logging.getLogger(__name__)

BASE_POINT = complex(0.5, 5.0)
RETRY_SHIFT = 1.7j
MAX_RETRIES = 4


class RootNumberError(ValueError):
    """Raised when no unimodular root number can be determined."""


def compute_root_number(table, ctx, s0=BASE_POINT, max_retries=MAX_RETRIES):
    """Solve the functional equation for eps_f.

    ``L(s0) = P(beta) + eps R(beta)`` holds for every rotation beta of the
    incomplete gamma split while P and R individually depend on beta, so two
    rotations determine eps. When the two R values nearly agree (L small on
    both sides) the base point is shifted up by 1.7i and the solve repeated.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients of f. The root number stored on its descriptor is
        ignored.
    ctx: EvalContext
        Evaluation context.
    s0: complex
        First base point.
    max_retries: int
        Number of shifted base points tried after the first.

    Returns
    -------
    eps: complex
        Root number. For self-dual forms it has to lie within the tolerance of
        +1 or -1 and is then returned exactly.
    """
    tol = 10 * 2.0 ** (-ctx.precision / 2)
    s = complex(s0)
    for attempt in range(max_retries + 1):
        beta1 = rotation_angle(s.imag, ctx.precision)
        beta2 = beta1 / 2
        p1, r1 = split_sums(table, s, ctx, beta=beta1)
        p2, r2 = split_sums(table, s, ctx, beta=beta2)
        denominator = r1 - r2
        if abs(denominator) > 2 ** (-ctx.precision / 4) * max(1, abs(r1)):
            eps = complex((p2 - p1) / denominator)
            deviation = abs(abs(eps) - 1)
            if deviation > tol:
                raise RootNumberError(
                    f"|eps| = {abs(eps):.17g} deviates from 1 by {deviation:.3g} "
                    f"> {tol:.3g}; are the coefficients those of a newform?")
            if table.form.self_dual:
                sign = math.copysign(1.0, eps.real)
                distance = abs(eps - sign)
                if distance > tol:
                    raise RootNumberError(
                        f"eps = {eps:.17g} of the self-dual form {table.form.label} deviates "
                        f"from 1 and -1 by {distance:.3g} > {tol:.3g}; are the coefficients "
                        f"those of a newform?")
                eps = complex(sign)
            else:
                eps = eps / abs(eps)
            log.info(f"Root number of {table.form.label}: {eps} (s0={s}).")
            return eps
        log.warning(f"Root number solve degenerate at s0={s}, shifting.")
        s += RETRY_SHIFT
    raise RootNumberError(
        f"root number of {table.form.label} undetermined after {max_retries + 1} base points")
