"""
Zero records on the critical line and ordered stores of them.
"""

# License: BSD (3-clause)

import dataclasses
import logging
import math

import numpy as np

log = logging.getLogger(__name__)

CLASSIFICATIONS = ("simple", "unresolved")
METHODS = ("sign_change", "argument_principle")


@dataclasses.dataclass(frozen=True)
class ZeroRecord:
    """One zero rho = 1/2 + i gamma.

    Parameters
    ----------
    gamma: float
        Ordinate, strictly positive.
    refined_to: float
        Z changes sign between gamma - refined_to and gamma + refined_to.
    L_prime_abs: float
        |L'(rho)|, nan until classified.
    classification: str
        'simple' or 'unresolved'.
    method: str
        'sign_change' or 'argument_principle'.
    multiplicity: int | None
        Number of zeros, counted with multiplicity, that the argument
        principle finds around gamma. None unless the zero was recounted.
    """
    gamma: float
    refined_to: float
    L_prime_abs: float = math.nan
    classification: str = "unresolved"
    method: str = "sign_change"
    multiplicity: int = None

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma expected to be > 0, got {self.gamma}")
        if not self.refined_to > 0:
            raise ValueError(f"refined_to expected to be > 0, got {self.refined_to}")
        if self.classification not in CLASSIFICATIONS:
            raise ValueError(
                f"classification expected to be one of {CLASSIFICATIONS}, "
                f"got '{self.classification}'")
        if self.method not in METHODS:
            raise ValueError(f"method expected to be one of {METHODS}, got '{self.method}'")
        if self.multiplicity is not None and self.multiplicity < 0:
            raise ValueError(f"multiplicity expected to be >= 0, got {self.multiplicity}")

    def _key(self):
        # nan (not yet classified) compares equal to nan
        return tuple(None if isinstance(v, float) and math.isnan(v) else v
                     for v in dataclasses.astuple(self))

    def __eq__(self, other):
        if other.__class__ is not self.__class__:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


class ZeroStore:
    """Ordered, duplicate-free collection of zeros of one form up to ``T_max``.

    Parameters
    ----------
    label: str
        Form label.
    records: iterable of ZeroRecord
        Zeros, strictly increasing in gamma.
    T_max: float
        Scan ceiling; every zero with gamma <= T_max that the scan detected is
        in the store.
    precision: int
        Working precision of the scan in bits.
    level: int
        Level q of the form, needed for the zero-count main term.
    fingerprint: str
        Fingerprint of the evaluation context that produced the store.
    """
    def __init__(self, label, records, T_max, precision, level=1, fingerprint=""):
        records = tuple(records)
        for left, right in zip(records[:-1], records[1:]):
            if not right.gamma > left.gamma:
                raise ValueError(
                    f"zero ordinates must be strictly increasing, got {left.gamma} "
                    f"then {right.gamma}")
            if right.gamma - left.gamma <= 2 * max(left.refined_to, right.refined_to):
                raise ValueError(
                    f"duplicate zeros at {left.gamma} and {right.gamma}")
        if records and records[-1].gamma > T_max:
            raise ValueError(f"zero {records[-1].gamma} above the ceiling T_max={T_max}")
        self.label = label
        self.records = records
        self.T_max = float(T_max)
        self.precision = int(precision)
        self.level = int(level)
        self.fingerprint = fingerprint

    @classmethod
    def from_unsorted(cls, label, records, T_max, precision, level=1, fingerprint=""):
        """Build a store from records in any order, merging duplicates.

        A record within 2 refined_to of the previous one is the same zero found
        twice; the first is kept and every merge is logged.
        """
        merged = []
        for record in sorted(records, key=lambda r: r.gamma):
            if merged and record.gamma - merged[-1].gamma <= 2 * max(
                    record.refined_to, merged[-1].refined_to):
                log.info(f"Merged zero at gamma={record.gamma!r} into gamma="
                         f"{merged[-1].gamma!r} of {label}.")
                continue
            merged.append(record)
        return cls(label, merged, T_max, precision, level=level, fingerprint=fingerprint)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    def __eq__(self, other):
        return (isinstance(other, ZeroStore) and self.label == other.label and
                self.records == other.records and self.T_max == other.T_max and
                self.precision == other.precision and self.level == other.level and
                self.fingerprint == other.fingerprint)

    def __repr__(self):
        return (f"ZeroStore(label='{self.label}', n_zeros={len(self)}, "
                f"T_max={self.T_max}, precision={self.precision})")

    @property
    def gammas(self):
        return np.array([r.gamma for r in self.records], dtype=float)

    def count(self, t):
        """Number of stored zeros with 0 < gamma <= t."""
        return int(np.searchsorted(self.gammas, t, side="right"))

    def window(self, lo, hi):
        """Records with lo < gamma <= hi."""
        return [r for r in self.records if lo < r.gamma <= hi]

    def check_coverage(self, hi):
        if hi > self.T_max:
            raise ValueError(
                f"incomplete store coverage: need zeros up to {hi}, store ends at "
                f"T_max={self.T_max}")

    def replace_records(self, records):
        return ZeroStore(self.label, records, self.T_max, self.precision,
                         level=self.level, fingerprint=self.fingerprint)

    def merge(self, other):
        """Ordered, deduplicating union with another store of the same form."""
        if other.label != self.label:
            raise ValueError(f"cannot merge zeros of '{other.label}' into '{self.label}'")
        return ZeroStore.from_unsorted(
            self.label, self.records + other.records, max(self.T_max, other.T_max),
            min(self.precision, other.precision), level=self.level,
            fingerprint=self.fingerprint)
