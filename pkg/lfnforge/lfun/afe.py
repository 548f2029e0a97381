"""
Smoothed evaluation of L(s, f) and the approximate functional equation of
L'(s, f) with its five error terms.

With S(z) = sum_{n <= X} conj(lambda(n)) n^(z-1) and
G(z) = conj(eps) L(z) - psi(z) S(z),

    L(s) = sum_n lambda(n) n^-s exp(-n/X) + eps psi(s) S(s)
           - (eps/2pi i) int_(-3/4) Gamma(w) X^w G(s+w) dw
           - (eps/2pi i) int_(1/4) Gamma(w) X^w psi(s+w) S(s+w) dw.

Differentiating in s splits L'(s) into the two Dirichlet polynomials
M1 = sum_{n <= X} alpha(n) n^-s and M2 = eps psi(s) sum_{n <= X} beta(n) n^(s-1)
plus E1 (smoothing inside X), E2 (smoothed tail), E3 (psi'/psi + 2 log X times
S(s)) and E4, E5 (the two differentiated contour integrals).
"""

# License: BSD (3-clause)

import dataclasses
import logging
import math

import mpmath

from .engine import _root_number, evaluate_L, evaluate_L_prime
from .gamma import psi_f, psi_log_derivative
from .hardy import rotate_to_real
from .quadrature import integrate

log = logging.getLogger(__name__)

LEFT_LINE = -0.75
RIGHT_LINE = 0.25
TAIL_LENGTH = 4.0
RECORD_DIGITS = 25
METHODS = ("contour", "engine")


@dataclasses.dataclass
class PointEval:
    """Values of L and L' at one point with the pieces of the AFE.

    Parameters
    ----------
    s: complex
        Evaluation point.
    L: mpc
        L(s, f).
    L_prime: mpc
        L'(s, f), the sum of all components.
    Z: mpf | None
        Hardy's Z(t) when s is on the critical line of a self-dual form.
    components: dict | None
        'M1', 'M2', 'E1', ..., 'E5' (or 'E45' when the contour terms are
        taken as one remainder), 'E3_magnitude' and 'X'.
    """
    s: complex
    L: object
    L_prime: object
    Z: object = None
    components: dict = None

    @property
    def error_total(self):
        """Sum of the error terms E1..E5."""
        if self.components is None:
            return None
        keys = [k for k in ("E1", "E2", "E3", "E4", "E5", "E45")
                if self.components.get(k) is not None]
        return sum(self.components[k] for k in keys)

    def to_record(self):
        """JSON-compatible dict with values as decimal strings."""
        def fmt(z):
            if z is None:
                return None
            if isinstance(z, (int, float)):
                return repr(z)
            if hasattr(z, "imag") and z.imag != 0:
                return {"re": mpmath.nstr(z.real, RECORD_DIGITS),
                        "im": mpmath.nstr(z.imag, RECORD_DIGITS)}
            return mpmath.nstr(z.real, RECORD_DIGITS)

        record = {"s": {"re": repr(float(self.s.real)), "im": repr(float(self.s.imag))},
                  "L": fmt(self.L), "L_prime": fmt(self.L_prime), "Z": fmt(self.Z)}
        if self.components is not None:
            record["components"] = {k: fmt(v) for k, v in sorted(self.components.items())}
        return record


class _DirichletPieces:
    """Finite sums over n <= X of conj(lambda(n)) n^(z-1), with and without log n."""
    def __init__(self, lam_bar, n_x, mp):
        self.mp = mp
        self.terms = [(lam_bar[n], mp.log(n)) for n in range(1, n_x + 1) if lam_bar[n] != 0]

    def __call__(self, z, with_log=False):
        mp = self.mp
        total, total_log = mp.mpc(0), mp.mpc(0)
        for c, log_n in self.terms:
            term = c * mp.exp((z - 1) * log_n)
            total += term
            if with_log:
                total_log += term * log_n
        return (total, total_log) if with_log else total


def coefficient_demand(X, precision):
    """Largest n of the smoothed sum, where exp(-n/X) < 2^-precision e^-5."""
    return int(math.ceil(X * (precision * math.log(2) + 5)))


def _smoothed_sums(lam, s, X, n_demand, mp, derivative):
    """sum lambda(n) n^-s exp(-n/X) and, with derivative, the alpha pieces."""
    n_x = int(math.floor(X))
    x = mp.mpf(X)
    smoothed = mp.mpc(0)
    m1, e1, e2 = mp.mpc(0), mp.mpc(0), mp.mpc(0)
    for n in range(1, n_demand + 1):
        if lam[n] == 0:
            continue
        log_n = mp.log(n)
        base = lam[n] * mp.exp(-s * log_n)
        weight = mp.exp(-n / x)
        smoothed += base * weight
        if derivative:
            alpha_term = -base * log_n
            if n <= n_x:
                m1 += alpha_term
                e1 += alpha_term * (weight - 1)
            else:
                e2 += alpha_term * weight
    return smoothed, m1, e1, e2


def _contour_integrals(table, s, ctx, X, pieces, eps, derivative, height):
    """Both truncated contour integrals (including the factor eps / 2pi).

    Returns a dict with 'I1', 'I2' and, with derivative, 'E4', 'E5'.
    """
    mp = ctx.mp
    form = table.form
    log_x = mp.log(X)
    eps_bar = mp.conj(eps)

    def left_values(v):
        w = mp.mpc(LEFT_LINE, v)
        z = s + w
        g = eps_bar * evaluate_L(table, z, ctx) - psi_f(form, z, mp) * pieces(z)
        kernel = mp.gamma(w) * mp.exp(w * log_x) * g
        if not derivative:
            return [kernel]
        return [kernel, kernel * (mp.digamma(w) + log_x)]

    def right_values(v):
        w = mp.mpc(RIGHT_LINE, v)
        z = s + w
        kernel = mp.gamma(w) * mp.exp(w * log_x) * psi_f(form, z, mp)
        if not derivative:
            return [kernel * pieces(z)]
        total, total_log = pieces(z, with_log=True)
        return [kernel * total, kernel * (psi_log_derivative(form, z, mp) * total + total_log)]

    factor = eps / (2 * mp.pi)
    left = [factor * v for v in integrate(left_values, -height, height, ctx)]
    right = [factor * v for v in integrate(right_values, -height, height, ctx)]
    out = {"I1": left[0], "I2": right[0]}
    if derivative:
        top, bottom = left_values(mp.mpf(height))[0], left_values(mp.mpf(-height))[0]
        boundary = 1j * factor * (top - bottom)
        out["E4"] = boundary + left[1]
        out["E5"] = -right[1]
    return out


def smoothed_L(table, s, ctx, return_components=False):
    """L(s, f) from the smoothed sum, the reflected sum and two contour integrals.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients of f up to X (precision log 2 + 5).
    s: complex
        Evaluation point, 1/2 <= Re(s) <= 1/2 + O(1 / log T).
    ctx: EvalContext
        Fixes precision, X, contour height and quadrature.
    return_components: bool
        Also return the four pieces of the identity.

    Returns
    -------
    value: mpc
        L(s, f).
    components: dict
        Only if return_components: 'smoothed', 'reflected', 'I1', 'I2' with
        value = smoothed + reflected - I1 - I2.
    """
    mp = ctx.mp
    with mp.extraprec(10):
        s = mp.mpc(s)
        t = float(s.imag)
        form = table.form
        eps = _root_number(form, mp)
        X = ctx.x_for(t, form)
        n_demand = coefficient_demand(X, mp.prec)
        if n_demand > table.n_max:
            raise ValueError(
                f"coefficient table too short: need n <= {n_demand} for X={X:.6g}, "
                f"have {table.n_max}")
        lam = ctx.coefficients(table, n_demand)
        pieces = _DirichletPieces(ctx.coefficients(table.conjugate(), int(X)), int(X), mp)
        smoothed = _smoothed_sums(lam, s, X, n_demand, mp, derivative=False)[0]
        reflected = eps * psi_f(form, s, mp) * pieces(s)
        integrals = _contour_integrals(table, s, ctx, X, pieces, eps, derivative=False,
                                       height=ctx.height_for(t))
        value = smoothed + reflected - integrals["I1"] - integrals["I2"]
    if return_components:
        components = {"smoothed": +smoothed, "reflected": +reflected,
                      "I1": +integrals["I1"], "I2": +integrals["I2"]}
        return +value, components
    return +value


def contour_tail_estimate(table, s, ctx):
    """Absolute integrand mass of both contour integrals just beyond the
    truncation height, over |Im w| in [H, H + 4]."""
    mp = ctx.mp
    s = mp.mpc(s)
    t = float(s.imag)
    form = table.form
    eps = _root_number(form, mp)
    X = ctx.x_for(t, form)
    log_x = mp.log(X)
    pieces = _DirichletPieces(ctx.coefficients(table.conjugate(), int(X)), int(X), mp)
    height = ctx.height_for(t)

    def magnitudes(v):
        w_left, w_right = mp.mpc(LEFT_LINE, v), mp.mpc(RIGHT_LINE, v)
        z_left, z_right = s + w_left, s + w_right
        g = mp.conj(eps) * evaluate_L(table, z_left, ctx) - \
            psi_f(form, z_left, mp) * pieces(z_left)
        left = abs(mp.gamma(w_left) * mp.exp(w_left * log_x) * g)
        right = abs(mp.gamma(w_right) * mp.exp(w_right * log_x) *
                    psi_f(form, z_right, mp) * pieces(z_right))
        return [mp.mpc(left + right)]

    # single pass per panel, no refinement
    upper = integrate(magnitudes, height, height + TAIL_LENGTH, ctx, tol=mp.inf)[0]
    lower = integrate(magnitudes, -height - TAIL_LENGTH, -height, ctx, tol=mp.inf)[0]
    return float((upper.real + lower.real) / (2 * mp.pi))


def _main_terms(table, s, ctx, X, eps, mp):
    """M1, E1, E2 (by direct summation), M2, E3, E3_magnitude and S(s)."""
    form = table.form
    n_demand = coefficient_demand(X, mp.prec)
    if n_demand > table.n_max:
        raise ValueError(
            f"coefficient table too short: need n <= {n_demand} for X={X:.6g}, "
            f"have {table.n_max}")
    lam = ctx.coefficients(table, n_demand)
    n_x = int(math.floor(X))
    pieces = _DirichletPieces(ctx.coefficients(table.conjugate(), n_x), n_x, mp)
    _, m1, e1, e2 = _smoothed_sums(lam, s, X, n_demand, mp, derivative=True)
    total, total_log = pieces(s, with_log=True)
    eps_psi = eps * psi_f(form, s, mp)
    log_x = mp.log(X)
    m2 = eps_psi * (total_log - 2 * log_x * total)
    e3 = eps_psi * (psi_log_derivative(form, s, mp) + 2 * log_x) * total
    e3_magnitude = abs(mp.fsum(lam[n] * mp.exp(-s * mp.log(n)) for n in range(1, n_x + 1)))
    components = {"M1": m1, "M2": m2, "E1": e1, "E2": e2, "E3": e3,
                  "E3_magnitude": e3_magnitude, "X": mp.mpf(X)}
    return components, pieces


def afe_L_prime(table, s, ctx, method="contour"):
    """L'(s, f) as two Dirichlet polynomials of length X plus E1..E5.

    Parameters
    ----------
    table: CoefficientTable
        Coefficients of f.
    s: complex
        Evaluation point, normally 1/2 + it with t in ``ctx.t_range``.
    ctx: EvalContext
        Evaluation context.
    method: str
        'contour' integrates E4 and E5 (and L itself) along the shifted
        lines. 'engine' takes L and L' from the incomplete gamma engine and
        reports E4 + E5 as the single remainder 'E45'.

    Returns
    -------
    point: PointEval
    """
    if method not in METHODS:
        raise ValueError(f"method expected to be one of {METHODS}, got '{method}'")
    mp = ctx.mp
    with mp.extraprec(10):
        s = mp.mpc(s)
        t = float(s.imag)
        ctx.check_t(t)
        form = table.form
        eps = _root_number(form, mp)
        X = ctx.x_for(t, form)
        components, pieces = _main_terms(table, s, ctx, X, eps, mp)
        main = components["M1"] + components["M2"] + components["E1"] + \
            components["E2"] + components["E3"]
        if method == "contour":
            lam = ctx.coefficients(table, coefficient_demand(X, mp.prec))
            smoothed = _smoothed_sums(lam, s, X, coefficient_demand(X, mp.prec), mp,
                                      derivative=False)[0]
            integrals = _contour_integrals(table, s, ctx, X, pieces, eps, derivative=True,
                                           height=ctx.height_for(t))
            value = smoothed + eps * psi_f(form, s, mp) * pieces(s) - \
                integrals["I1"] - integrals["I2"]
            components["E4"], components["E5"] = integrals["E4"], integrals["E5"]
            derivative = main + integrals["E4"] + integrals["E5"]
        else:
            value = evaluate_L(table, s, ctx)
            derivative = evaluate_L_prime(table, s, ctx)
            components["E4"], components["E5"] = None, None
            components["E45"] = derivative - main
    z = None
    if form.self_dual and form.root_number is not None and s.real == 0.5:
        z = rotate_to_real(form, t, +value, mp)
    components = {k: (None if v is None else +v) for k, v in components.items()}
    point = PointEval(s=complex(s), L=+value, L_prime=+derivative, Z=z, components=components)
    log.debug(f"AFE of {form.label} at {point.s}: |L'| = {mp.nstr(abs(point.L_prime), 8)}.")
    return point
