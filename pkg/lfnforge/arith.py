"""
Arithmetic functions derived from a coefficient table and Dirichlet convolution.

Sequences are dense arrays indexed by n (index 0 unused). They are either
double precision complex arrays or, when an mpmath context ``mp`` is passed,
object arrays of ``mpc`` at the precision of that context.
"""

# License: BSD (3-clause)

import dataclasses
from math import isqrt

import numpy as np

KINDS = ("alpha", "beta", "lambda_f", "Lambda_f", "mu_f", "divisor", "von_mangoldt",
         "custom")


@dataclasses.dataclass
class ArithSeq:
    """Arithmetic function on 1..n_max.

    Parameters
    ----------
    kind: str
        One of ``KINDS``.
    values: numpy.ndarray
        Values for n = 0..n_max, index 0 is 0.
    source: object | None
        The CoefficientTable the sequence was derived from.
    param: float | None
        The length parameter x of a beta sequence.
    """
    kind: str
    values: np.ndarray
    source: object = None
    param: float = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind expected to be one of {KINDS}, got '{self.kind}'")

    @property
    def n_max(self):
        return len(self.values) - 1

    @property
    def is_mp(self):
        return self.values.dtype == object

    def __getitem__(self, n):
        return self.values[n]

    def support(self):
        """Indices n >= 1 with a nonzero value."""
        nonzero = np.array([v != 0 for v in self.values[1:]], dtype=bool) if self.is_mp \
            else self.values[1:] != 0
        return np.flatnonzero(nonzero) + 1

    @classmethod
    def custom(cls, values):
        values = np.asarray(values)
        if values.dtype != object:
            values = values.astype(np.complex128)
        return cls("custom", values)


def prime_sieve(n_max):
    """Boolean array ``is_prime[0..n_max]`` by the sieve of Eratosthenes."""
    is_prime = np.ones(n_max + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(n_max) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return is_prime


def smallest_prime_factors(n_max):
    """Smallest prime factor of every n <= n_max (spf[0] = 0, spf[1] = 1)."""
    spf = np.arange(n_max + 1, dtype=np.int64)
    for p in range(2, isqrt(n_max) + 1):
        if spf[p] == p:
            segment = spf[p * p::p]
            unset = segment == np.arange(p * p, n_max + 1, p)
            segment[unset] = p
    return spf


def multiplicative_extension(local, n_max, dtype=np.complex128, one=1):
    """Dense values of the multiplicative function with f(p^e) = local(p, e).

    Parameters
    ----------
    local: callable
        ``local(p, e)`` returns the value at the prime power p^e, e >= 1.
    n_max: int
        Last index.
    dtype: numpy dtype
        Array dtype; ``object`` for extended-precision values.
    one: object
        Multiplicative identity of the value type.

    Returns
    -------
    values: numpy.ndarray
        f(0..n_max) with f(0) = 0 and f(1) = one.
    """
    values = np.full(n_max + 1, one, dtype=dtype)
    for p in np.flatnonzero(prime_sieve(n_max)):
        p = int(p)
        if p * p > n_max:
            values[p::p] *= local(p, 1)
            continue
        pe, e = p, 1
        while pe <= n_max:
            idx = np.arange(pe, n_max + 1, pe)
            idx = idx[idx % (pe * p) != 0]
            values[idx] *= local(p, e)
            pe *= p
            e += 1
    values[0] = 0 * one
    return values


def divisor_count(n_max):
    """d(n) for n <= n_max as an int64 array."""
    return multiplicative_extension(lambda p, e: e + 1, n_max, dtype=np.int64)


def divisor(n_max):
    return ArithSeq("divisor", divisor_count(n_max).astype(np.complex128))


def von_mangoldt(n_max):
    """Classical Lambda(n) = log p on prime powers p^m."""
    values = np.zeros(n_max + 1, dtype=np.complex128)
    for p in np.flatnonzero(prime_sieve(n_max)):
        p = int(p)
        pe = p
        while pe <= n_max:
            values[pe] = np.log(p)
            pe *= p
    return ArithSeq("von_mangoldt", values)


def _resolve_n_max(table, n_max):
    if n_max is None:
        return table.n_max
    if n_max > table.n_max:
        raise ValueError(f"n_max={n_max} exceeds the table size {table.n_max}")
    return n_max


def _table_values(table, n_max, mp):
    if mp is None:
        return table.values[:n_max + 1].copy()
    return np.array(table.mp_values(mp, n_max), dtype=object)


def _logs(n_max, mp):
    if mp is None:
        logs = np.log(np.maximum(np.arange(n_max + 1), 1)).astype(np.complex128)
        return logs
    return np.array([mp.mpf(0)] + [mp.log(n) for n in range(1, n_max + 1)], dtype=object)


def lambda_f(table, n_max=None, mp=None):
    n_max = _resolve_n_max(table, n_max)
    return ArithSeq("lambda_f", _table_values(table, n_max, mp), source=table)


def alpha(table, n_max=None, mp=None):
    """alpha_f(n) = -lambda_f(n) log n."""
    n_max = _resolve_n_max(table, n_max)
    values = -_table_values(table, n_max, mp) * _logs(n_max, mp)
    values[0] = 0 * values[1]
    return ArithSeq("alpha", values, source=table)


def beta(table, x, n_max=None, mp=None):
    """beta_{f,x}(n) = -lambda_f(n) log(x^2 / n), defined for n <= x^2."""
    n_max = _resolve_n_max(table, n_max)
    if n_max > x * x * (1 + 1e-12):
        raise ValueError(f"beta needs n_max <= x^2, got n_max={n_max} and x={x}")
    log_x2 = 2 * (np.log(x) if mp is None else mp.log(x))
    values = _table_values(table, n_max, mp) * (_logs(n_max, mp) - log_x2)
    values[0] = 0 * values[1]
    return ArithSeq("beta", values, source=table, param=float(x))


def _prime_power_recurrence(p, lam_p, chi_p, n_max, two):
    """a_m for p^m <= n_max with a_0 = 2, a_1 = lambda(p)."""
    prev2, prev1 = two, lam_p
    out = [(p, lam_p)]
    pe = p * p
    while pe <= n_max:
        current = lam_p * prev1 - chi_p * prev2
        out.append((pe, current))
        prev2, prev1 = prev1, current
        pe *= p
    return out


def lambda_f_von_mangoldt(table, n_max=None, mp=None):
    """Lambda_f(p^m) = (r^m + s^m) log p by the Newton recurrence, 0 off prime powers."""
    n_max = _resolve_n_max(table, n_max)
    lam = _table_values(table, n_max, mp)
    chi = table.form.character
    if mp is None:
        values = np.zeros(n_max + 1, dtype=np.complex128)
        two = 2.0
    else:
        values = np.full(n_max + 1, mp.mpc(0), dtype=object)
        two = mp.mpf(2)
    for p in np.flatnonzero(prime_sieve(n_max)):
        p = int(p)
        chi_p = chi(p) if mp is None else chi.mp_value(p, mp)
        log_p = np.log(p) if mp is None else mp.log(p)
        for pe, a in _prime_power_recurrence(p, lam[p], chi_p, n_max, two):
            values[pe] = a * log_p
    return ArithSeq("Lambda_f", values, source=table)


def mu_f(table, n_max=None, mp=None):
    """Coefficients of 1/L(s, f): mu_f(p) = -lambda(p), mu_f(p^2) = chi(p), 0 beyond."""
    n_max = _resolve_n_max(table, n_max)
    lam = _table_values(table, n_max, mp)
    chi = table.form.character
    if mp is None:
        zero, one, dtype = 0j, 1 + 0j, np.complex128
    else:
        zero, one, dtype = mp.mpc(0), mp.mpc(1), object

    def local(p, e):
        if e == 1:
            return -lam[p]
        if e == 2:
            return chi(p) if mp is None else chi.mp_value(p, mp)
        return zero

    values = multiplicative_extension(local, n_max, dtype=dtype, one=one)
    return ArithSeq("mu_f", values, source=table)


def unit(n_max):
    """The convolution identity delta_{n=1}."""
    values = np.zeros(n_max + 1, dtype=np.complex128)
    values[1] = 1
    return ArithSeq("custom", values)


def ones(n_max):
    values = np.ones(n_max + 1, dtype=np.complex128)
    values[0] = 0
    return ArithSeq("custom", values)


def dirichlet_convolve(a, b, n_max=None):
    """(a * b)(n) = sum_{d | n} a(d) b(n / d).

    The outer loop runs over the support of the sparser sequence, so the cost
    is O(n_max log n_max) for dense inputs and much less when one of them
    lives on prime powers.
    """
    if n_max is None:
        n_max = min(a.n_max, b.n_max)
    if n_max > min(a.n_max, b.n_max):
        raise ValueError(
            f"n_max={n_max} exceeds the sequence lengths {a.n_max}, {b.n_max}")
    a_values, b_values = a.values[:n_max + 1], b.values[:n_max + 1]
    is_mp = a.is_mp or b.is_mp
    if is_mp:
        a_values = a_values.astype(object)
        b_values = b_values.astype(object)
        out = np.full(n_max + 1, 0, dtype=object)
    else:
        out = np.zeros(n_max + 1, dtype=np.complex128)
    a_support = ArithSeq.custom(a_values).support()
    b_support = ArithSeq.custom(b_values).support()
    if len(b_support) < len(a_support):
        a_values, b_values, a_support = b_values, a_values, b_support
    for d in a_support:
        d = int(d)
        k = n_max // d
        out[d::d][:k] += a_values[d] * b_values[1:k + 1]
    return ArithSeq("custom", out)
