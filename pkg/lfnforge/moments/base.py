"""
Report types and deterministic reductions shared by all statistics.
"""

# License: BSD (3-clause)

import dataclasses
import math

import numpy as np
import pandas as pd

REPORT_COLUMNS = ["statistic", "T", "raw", "normalizer", "ratio", "lower", "upper"]


def ordered_sum(values):
    """Correctly rounded sum, independent of the order of ``values``.

    Complex values are summed componentwise. Reports built from per-zero
    contributions are therefore identical for any worker count.
    """
    values = list(values)
    if any(isinstance(v, complex) for v in values):
        return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return math.fsum(values)


@dataclasses.dataclass
class MomentReport:
    """One statistic over a set of zeros, with its reference size.

    Parameters
    ----------
    statistic: str
        Name of the statistic.
    T: float
        Window parameter, the window is (T, 2T] unless ``extra`` says
        otherwise.
    raw: float
        Computed value.
    normalizer: float
        Reference size (main term or error budget) the value is compared to.
    ratio: float | None
        raw / normalizer, computed when None.
    lower, upper: float | None
        Range the ratio is expected in, where one is known.
    extra: dict
        Further named quantities, written to the JSON report.
    """
    statistic: str
    T: float
    raw: float
    normalizer: float
    ratio: float = None
    lower: float = None
    upper: float = None
    extra: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        self.raw = float(self.raw)
        self.normalizer = float(self.normalizer)
        if self.ratio is None:
            if self.normalizer > 0:
                self.ratio = self.raw / self.normalizer
            elif self.raw == 0:
                self.ratio = 0.0
            else:
                self.ratio = math.nan

    def to_row(self):
        return {"statistic": self.statistic, "T": float(self.T), "raw": self.raw,
                "normalizer": self.normalizer, "ratio": float(self.ratio),
                "lower": np.nan if self.lower is None else float(self.lower),
                "upper": np.nan if self.upper is None else float(self.upper)}

    def to_dict(self):
        out = self.to_row()
        out["extra"] = dict(self.extra)
        return out

    def summary(self):
        """One line for the command line."""
        line = (f"{self.statistic} T={self.T:g}: raw={self.raw:.6g} "
                f"normalizer={self.normalizer:.6g} ratio={self.ratio:.4g}")
        if self.lower is not None or self.upper is not None:
            line += f" expected in [{self.lower}, {self.upper}]"
        return line


def reports_to_frame(reports):
    """Data frame with the columns statistic, T, raw, normalizer, ratio, lower, upper."""
    return pd.DataFrame([r.to_row() for r in reports], columns=REPORT_COLUMNS)


@dataclasses.dataclass
class ValueDistribution:
    """Counts N(V; T, w) of zeros in (T, 2T] with log|L(rho + w)| >= V.

    Parameters
    ----------
    T: float
        Window parameter.
    w: complex
        Shift.
    V_grid: list of float
        Increasing thresholds.
    counts: list of int
        Counts per threshold, nonincreasing.
    n_window: int
        Number of zeros in the window.
    bounds: dict
        Reference curves 'case_i', 'case_ii', 'case_iii' on ``V_grid``.
    vacuous: bool
        Whether the case (i) curve is vacuous at this T,
        i.e. 1 - 8 / logloglog T <= 0.
    case_ranges: dict
        Range of V where each reference curve applies.
    """
    T: float
    w: complex
    V_grid: list
    counts: list
    n_window: int
    bounds: dict
    vacuous: bool
    case_ranges: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        assert all(a >= b for a, b in zip(self.counts[:-1], self.counts[1:])), (
            "counts must be nonincreasing in V")
        assert not self.counts or self.counts[0] <= self.n_window, (
            f"count {self.counts[0]} exceeds the {self.n_window} zeros of the window")

    def to_frame(self):
        """Histogram with columns V, count, bound_case_i, bound_case_ii, bound_case_iii."""
        return pd.DataFrame({
            "V": [float(v) for v in self.V_grid],
            "count": [int(c) for c in self.counts],
            "bound_case_i": self.bounds["case_i"],
            "bound_case_ii": self.bounds["case_ii"],
            "bound_case_iii": self.bounds["case_iii"],
        })


def window_zeros(store, T):
    """Records in the dyadic window (T, 2T], after checking coverage."""
    store.check_coverage(2 * T)
    return store.window(T, 2 * T)


def check_shift(w, T, nonnegative_real=False):
    """|w| <= 1 and |Re w| <= 1/log T (0 <= Re w with nonnegative_real)."""
    w = complex(w)
    if T <= math.e:
        raise ValueError(f"T expected to be > e, got {T}")
    bound = 1 / math.log(T)
    if abs(w) > 1:
        raise ValueError(f"shift w={w} outside |w| <= 1")
    if nonnegative_real and not 0 <= w.real <= bound:
        raise ValueError(f"shift w={w} outside 0 <= Re(w) <= 1/log T = {bound:.6g}")
    if abs(w.real) > bound * (1 + 1e-12):
        raise ValueError(f"shift w={w} outside |Re(w)| <= 1/log T = {bound:.6g}")
    return w
