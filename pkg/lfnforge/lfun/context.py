"""
Evaluation context shared by every analytic evaluation.
"""

# License: BSD (3-clause)

import dataclasses
import logging
import math
import threading

import mpmath

from ..util import default_precision, fingerprint

log = logging.getLogger(__name__)

MIN_PRECISION = 53
MIN_CONTOUR_HEIGHT = 10.0
MIN_X = 5.0


class ConvergenceError(RuntimeError):
    """Raised when successive quadrature refinements keep disagreeing."""


@dataclasses.dataclass
class EvalContext:
    """Working precision and approximation parameters of an evaluation.

    Every evaluation runs in a private ``mpmath.MPContext`` (one per thread),
    so the global mpmath precision is never touched.

    Parameters
    ----------
    precision: int | None
        Working precision in bits, at least 53. None reads
        ``LFNFORGE_PRECISION`` or falls back to 128.
    T: float | None
        Height of the dyadic window (T, 2T] the evaluations belong to. Sets
        the default AFE length and contour height.
    X: float | None
        Length of the approximate functional equation. Defaults to
        sqrt(q) T / (2 pi), or sqrt(q) |t| / (2 pi) without T, at least 5.
    contour_height: float | None
        Truncation |Im w| of the contour integrals, at least 10. Defaults to
        max(10, log(T)^2, precision log(2) / pi + 8).
    quadrature_step: float
        Width of the Gauss-Legendre panels.
    t_range: tuple of float | None
        Heights at which the AFE of L' may be evaluated.
    quadrature_degree: int
        Gauss-Legendre degree of a panel, 3 * 2^(degree - 1) nodes.
    max_depth: int
        Maximum number of panel bisections before giving up.
    """
    precision: int = None
    T: float = None
    X: float = None
    contour_height: float = None
    quadrature_step: float = 1.0
    t_range: tuple = None
    quadrature_degree: int = 4
    max_depth: int = 10

    def __post_init__(self):
        if self.precision is None:
            self.precision = default_precision()
        self.precision = int(self.precision)
        if self.precision < MIN_PRECISION:
            raise ValueError(
                f"precision expected to be >= {MIN_PRECISION} bits, got {self.precision}")
        if self.X is not None and not self.X > 0:
            raise ValueError(f"X expected to be > 0, got {self.X}")
        if self.contour_height is not None and self.contour_height < MIN_CONTOUR_HEIGHT:
            raise ValueError(
                f"contour_height expected to be >= {MIN_CONTOUR_HEIGHT}, "
                f"got {self.contour_height}")
        if not self.quadrature_step > 0:
            raise ValueError(f"quadrature_step expected to be > 0, got {self.quadrature_step}")
        if self.quadrature_degree < 2:
            raise ValueError(
                f"quadrature_degree expected to be >= 2, got {self.quadrature_degree}")
        if self.T is not None and not self.T > 0:
            raise ValueError(f"T expected to be > 0, got {self.T}")
        if self.t_range is not None:
            lo, hi = self.t_range
            if lo > hi:
                raise ValueError(f"t_range expected to be increasing, got {self.t_range}")
            self.t_range = (float(lo), float(hi))
        self._local = threading.local()

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_local"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._local = threading.local()

    def _thread_cache(self):
        cache = getattr(self._local, "coefficients", None)
        if cache is None:
            cache = self._local.coefficients = {}
        return cache

    @property
    def mp(self):
        """mpmath context of the calling thread at the working precision."""
        mp = getattr(self._local, "mp", None)
        if mp is None:
            mp = mpmath.MPContext()
            mp.prec = self.precision
            self._local.mp = mp
        return mp

    def x_for(self, t, form):
        """AFE length used at height t for ``form``."""
        if self.X is not None:
            return float(self.X)
        sqrt_q = math.sqrt(form.level)
        height = self.T if self.T is not None else abs(t)
        return max(sqrt_q * height / (2 * math.pi), MIN_X)

    def height_for(self, t):
        """Contour truncation height used at height t."""
        if self.contour_height is not None:
            return float(self.contour_height)
        T = self.T if self.T is not None else max(abs(t), math.e)
        return max(MIN_CONTOUR_HEIGHT, math.log(T) ** 2,
                   self.precision * math.log(2) / math.pi + 8)

    def check_t(self, t):
        if self.t_range is not None and not self.t_range[0] <= t <= self.t_range[1]:
            raise ValueError(f"t={t} outside the context range {self.t_range}")

    def replace(self, **changes):
        """Copy with some fields changed; caches are not shared."""
        fields = {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}
        fields.update(changes)
        return EvalContext(**fields)

    def describe(self):
        """Canonical one-line description of the fields."""
        return " ".join(f"{f.name}={getattr(self, f.name)!r}" for f in dataclasses.fields(self))

    @property
    def fingerprint(self):
        return fingerprint(self.describe())

    def coefficients(self, table, n):
        """lambda(0..n) of ``table`` as ``mpc`` at least at the current precision of ``mp``."""
        mp = self.mp
        cache = self._thread_cache()
        prec, cached = cache.get(table.cache_key, (0, None))
        if cached is None or prec < mp.prec or len(cached) <= n:
            cached = table.mp_values(mp, n)
            cache[table.cache_key] = (mp.prec, cached)
            log.debug(f"Converted {n} coefficients of {table.form.label} at {mp.prec} bits.")
        return cached
