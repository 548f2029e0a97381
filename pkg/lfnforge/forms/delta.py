"""
The Ramanujan Delta function q prod (1 - q^n)^24 and its tau coefficients.
"""

# License: BSD (3-clause)

import logging
from math import log2

import numpy as np
from scipy import fft

from ..arith import prime_sieve
from .base import CoefficientTable, delta_descriptor
from .hecke import extend_exact, hecke_values

log = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 20000


def pentagonal_series(n):
    """Sparse prod_{m>=1} (1 - q^m) up to q^n by Euler's pentagonal theorem.

    Returns
    -------
    terms: list of (int, int)
        (exponent, coefficient) pairs, exponents k(3k-1)/2 with sign (-1)^k.
    """
    terms = []
    k = 0
    while True:
        added = False
        for j in ((k, -k) if k else (0,)):
            e = j * (3 * j - 1) // 2
            if e <= n:
                terms.append((e, -1 if j % 2 else 1))
                added = True
        if not added:
            break
        k += 1
    return sorted(terms)


def jacobi_cube_series(n):
    """Sparse prod (1 - q^m)^3 = sum_k (-1)^k (2k + 1) q^{k(k+1)/2} up to q^n."""
    terms = []
    k = 0
    while k * (k + 1) // 2 <= n:
        terms.append((k * (k + 1) // 2, (-1) ** k * (2 * k + 1)))
        k += 1
    return terms


def _multiply_sparse(dense, terms, n):
    out = np.zeros(n + 1, dtype=object)
    for e, c in terms:
        out[e:] += c * dense[:n + 1 - e]
    return out


def _sparse_power(terms, power, n):
    dense = np.zeros(n + 1, dtype=object)
    dense[0] = 1
    for _ in range(power):
        dense = _multiply_sparse(dense, terms, n)
    return dense


def ramanujan_tau(n_max, method="jacobi"):
    """Exact tau(0..n_max) as Python integers, tau(0) = 0.

    Parameters
    ----------
    n_max: int
        Last index.
    method: str
        'jacobi' raises the cube identity series to the 8th power,
        'pentagonal' raises Euler's series to the 24th power. Both are exact;
        the second is slower and serves as the brute-force oracle.
    """
    if n_max < 1:
        raise ValueError(f"n_max expected to be >= 1, got {n_max}")
    degree = n_max - 1
    if method == "jacobi":
        series = _sparse_power(jacobi_cube_series(degree), 8, degree)
    elif method == "pentagonal":
        series = _sparse_power(pentagonal_series(degree), 24, degree)
    else:
        raise ValueError(f"method expected to be 'jacobi' or 'pentagonal', got '{method}'")
    tau = np.zeros(n_max + 1, dtype=object)
    tau[1:] = series
    return tau


def tau_by_hecke(n_max):
    """tau(n) rebuilt from tau(p) by the exact Hecke relations."""
    tau = ramanujan_tau(n_max)
    primes = np.flatnonzero(prime_sieve(n_max))
    form = delta_descriptor()
    return extend_exact({int(p): tau[p] for p in primes}, n_max, form.weight,
                        form.character)


def _square_truncated(a):
    n = len(a)
    size = fft.next_fast_len(2 * n, real=True)
    spectrum = fft.rfft(a, size)
    return fft.irfft(spectrum * spectrum, size)[:n]


def tau_float_at_primes(n_lo, n_hi):
    """Approximate tau(p) for primes n_lo < p <= n_hi.

    The series is squared in double precision with FFTs. Rounding errors
    scale with the largest coefficient of the truncated series, so each dyadic
    level (N/2, N] gets its own expansion truncated at N, keeping the relative
    error of tau(p) near machine precision times a small power of N.
    """
    primes = np.flatnonzero(prime_sieve(n_hi))
    primes = primes[primes > n_lo]
    out = {}
    if not len(primes):
        return out
    size = max(64, 2 ** int(np.ceil(log2(n_lo + 1))))
    lower = n_lo
    while lower < n_hi:
        upper = min(size, n_hi)
        cube = np.zeros(size)
        for e, c in jacobi_cube_series(size - 1):
            cube[e] = c
        series = _square_truncated(_square_truncated(_square_truncated(cube)))
        level = primes[(primes > lower) & (primes <= upper)]
        for p in level:
            out[int(p)] = float(series[p - 1])
        log.info(f"tau(p) for {len(level)} primes in ({lower}, {upper}] by FFT.")
        lower = upper
        size *= 2
    return out


def build_delta_table(n_max, precision=128, exact_limit=DEFAULT_EXACT_LIMIT):
    """Normalized eigenvalues lambda(n) = tau(n) / n^{11/2} of Delta.

    Parameters
    ----------
    n_max: int
        Size of the table.
    precision: int
        Working precision in bits the table will be used at. Values are
        normalized lazily at that precision from the exact integers.
    exact_limit: int
        tau(n) is computed exactly for n <= exact_limit. Beyond, tau(p) comes
        from double precision FFT expansions and composite n from the Hecke
        relations.

    Returns
    -------
    table: CoefficientTable
        Table with k=12, q=1, principal character and root number +1.
    """
    if n_max < 1:
        raise ValueError(f"n_max expected to be >= 1, got {n_max}")
    if precision < 53:
        raise ValueError(
            f"precision too low for normalization: {precision} bits, need >= 53")
    n_exact = min(n_max, exact_limit)
    tau = ramanujan_tau(n_exact)
    form = delta_descriptor()
    primes = np.flatnonzero(prime_sieve(n_max))
    prime_values = {int(p): float(tau[p]) / float(p) ** 5.5 for p in primes if p <= n_exact}
    if n_max > n_exact:
        for p, t in tau_float_at_primes(n_exact, n_max).items():
            prime_values[p] = t / float(p) ** 5.5
    values = hecke_values(prime_values, n_max, form.character)
    n = np.arange(1, n_exact + 1, dtype=float)
    values[1:n_exact + 1] = np.array([float(t) for t in tau[1:]]) / n ** 5.5
    log.info(f"Built Delta table with n_max={n_max} ({n_exact} exact).")
    return CoefficientTable(form, values, exact=tau)
