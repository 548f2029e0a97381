"""
The gamma factor psi_f of the functional equation
L(s, f) = eps_f psi_f(s) L(1 - s, f-bar).
"""

# License: BSD (3-clause)


def _is_pole(mp, z):
    """Whether z is a pole of Gamma, i.e. a non-positive integer."""
    return mp.im(z) == 0 and mp.re(z) <= 0 and mp.isint(mp.re(z))


def log_q(form, mp):
    """log(sqrt(q) / (2 pi))."""
    return mp.log(mp.sqrt(form.level) / (2 * mp.pi))


def psi_f(form, s, mp):
    """(sqrt(q)/2pi)^(1-2s) Gamma(1-s+kappa) / Gamma(s+kappa), via log-gamma.

    Parameters
    ----------
    form: FormDescriptor
        Supplies level q and weight k, kappa = (k-1)/2.
    s: complex | mpc
        Evaluation point.
    mp: mpmath.MPContext
        Context fixing the precision.

    Returns
    -------
    value: mpc
        psi_f(s). 0 at the poles of Gamma(s+kappa).
    """
    s = mp.mpc(s)
    kappa = mp.mpf(form.weight - 1) / 2
    numerator, denominator = 1 - s + kappa, s + kappa
    if _is_pole(mp, numerator):
        raise ValueError(f"psi_f has a pole at s={s}")
    if _is_pole(mp, denominator):
        return mp.mpc(0)
    return mp.exp((1 - 2 * s) * log_q(form, mp) + mp.loggamma(numerator) -
                  mp.loggamma(denominator))


def psi_log_derivative(form, s, mp):
    """psi_f'(s) / psi_f(s) = -2 log(sqrt(q)/2pi) - digamma(1-s+kappa) - digamma(s+kappa)."""
    s = mp.mpc(s)
    kappa = mp.mpf(form.weight - 1) / 2
    return -2 * log_q(form, mp) - mp.digamma(1 - s + kappa) - mp.digamma(s + kappa)
