"""
Filling coefficient tables from prime values through the Hecke relations.
"""

# License: BSD (3-clause)

import logging

import numpy as np

from ..arith import multiplicative_extension, prime_sieve
from .base import CoefficientTable

log = logging.getLogger(__name__)


def hecke_prime_power_values(lam_p, chi_p, max_e, one=1.0):
    """[lambda(p^0), ..., lambda(p^max_e)] from the quadratic recurrence.

    lambda(p^m) = lambda(p) lambda(p^{m-1}) - chi(p) lambda(p^{m-2}).
    """
    values = [one, lam_p]
    for _ in range(2, max_e + 1):
        values.append(lam_p * values[-1] - chi_p * values[-2])
    return values[:max_e + 1]


def _max_exponent(p, n_max):
    e, pe = 0, 1
    while pe * p <= n_max:
        pe *= p
        e += 1
    return e


def hecke_values(prime_values, n_max, character):
    """Dense complex lambda(0..n_max) from lambda(p) for every prime p <= n_max.

    Parameters
    ----------
    prime_values: dict
        Map p -> lambda_f(p).
    n_max: int
        Last index to fill.
    character: DirichletCharacter
        Nebentypus, chi(p) enters the recurrence.

    Returns
    -------
    values: numpy.ndarray
        complex128 array, values[1] = 1.
    """
    primes = np.flatnonzero(prime_sieve(n_max))
    missing = [int(p) for p in primes if int(p) not in prime_values]
    if missing:
        raise ValueError(f"missing prime value lambda({missing[0]})")
    cache = {}

    def local(p, e):
        if p not in cache:
            cache[p] = hecke_prime_power_values(
                complex(prime_values[p]), character(p), _max_exponent(p, n_max), 1 + 0j)
        return cache[p][e]

    return multiplicative_extension(local, n_max, dtype=np.complex128, one=1 + 0j)


def extend_exact(prime_values, n_max, weight, character):
    """Exact unnormalized coefficients a(n) from integer a(p).

    Uses a(p^m) = a(p) a(p^{m-1}) - chi(p) p^{k-1} a(p^{m-2}) in Python
    integers, so no precision is lost however large a(n) grows.
    """
    if not character.is_real:
        raise ValueError("exact extension needs an integer-valued (real) character")
    primes = np.flatnonzero(prime_sieve(n_max))
    cache = {}

    def local(p, e):
        if p not in cache:
            chi_p = int(round(character(p).real))
            a_p = int(prime_values[p])
            values = [1, a_p]
            for _ in range(2, _max_exponent(p, n_max) + 1):
                values.append(a_p * values[-1] - chi_p * p ** (weight - 1) * values[-2])
            cache[p] = values
        return cache[p][e]

    missing = [int(p) for p in primes if int(p) not in prime_values]
    if missing:
        raise ValueError(f"missing prime value a({missing[0]})")
    return multiplicative_extension(local, n_max, dtype=object, one=1)


def extend_by_hecke(table, primes_given, n_max):
    """Fill lambda_f(n) for all n <= n_max from the prime values of ``table``.

    Parameters
    ----------
    table: CoefficientTable
        Table whose entries at primes p <= primes_given are trusted.
    primes_given: int
        Bound on the primes with known values.
    n_max: int
        Size of the extended table.

    Returns
    -------
    table: CoefficientTable
        Prime powers filled by the quadratic Hecke recurrence, composite n by
        multiplicativity. Exact integers are extended as well when the input
        carries them for every prime up to n_max.
    """
    primes = [int(p) for p in np.flatnonzero(prime_sieve(n_max))]
    limit = min(primes_given, table.n_max)
    beyond = [p for p in primes if p > limit]
    if beyond:
        raise ValueError(f"missing prime value lambda({beyond[0]})")
    form = table.form
    values = hecke_values({p: table.values[p] for p in primes}, n_max, form.character)
    exact = None
    if table.exact is not None and (not primes or table.n_exact >= primes[-1]) \
            and form.character.is_real:
        exact = extend_exact({p: table.exact[p] for p in primes}, n_max, form.weight,
                             form.character)
    log.info(f"Extended {form.label} from primes <= {limit} to n_max={n_max}.")
    return CoefficientTable(form, values, exact=exact)
