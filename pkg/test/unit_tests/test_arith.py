# License: BSD-3

import mpmath
import numpy as np
import pytest
from numpy.testing import assert_allclose

from lfnforge.arith import (
    ArithSeq, alpha, beta, dirichlet_convolve, divisor, divisor_count, lambda_f,
    lambda_f_von_mangoldt, mu_f, multiplicative_extension, ones, prime_sieve,
    smallest_prime_factors, unit, von_mangoldt)
from lfnforge.forms import build_delta_table


@pytest.fixture(scope="module")
def delta_table():
    return build_delta_table(300)


def test_prime_sieve():
    assert list(np.flatnonzero(prime_sieve(30))) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_smallest_prime_factors():
    spf = smallest_prime_factors(30)
    assert [int(spf[n]) for n in (2, 9, 15, 25, 29, 30)] == [2, 3, 3, 5, 29, 2]


def test_divisor_count():
    assert list(divisor_count(12)[1:]) == [1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]


def test_multiplicative_extension_of_identity():
    values = multiplicative_extension(lambda p, e: p ** e, 50, dtype=np.int64)
    assert list(values[1:]) == list(range(1, 51))


def test_von_mangoldt():
    values = von_mangoldt(16).values.real
    assert_allclose(values[[2, 4, 8, 16, 3, 9]], np.log([2, 2, 2, 2, 3, 3]))
    assert values[6] == 0 and values[1] == 0


def test_convolution_of_ones_is_divisor_count():
    assert_allclose(dirichlet_convolve(ones(100), ones(100)).values, divisor(100).values)


def test_convolution_with_unit():
    seq = ArithSeq.custom(np.arange(21))
    assert_allclose(dirichlet_convolve(seq, unit(20)).values, seq.values)


def test_convolution_length_check():
    with pytest.raises(ValueError, match="exceeds the sequence lengths"):
        dirichlet_convolve(ones(10), ones(20), n_max=15)


def test_mu_f_inverts_lambda(delta_table):
    product = dirichlet_convolve(mu_f(delta_table), lambda_f(delta_table))
    assert_allclose(product.values, unit(300).values, atol=1e-12)


def test_lambda_f_von_mangoldt_is_minus_mu_alpha(delta_table):
    lam_vm = lambda_f_von_mangoldt(delta_table)
    expected = -dirichlet_convolve(mu_f(delta_table), alpha(delta_table)).values
    assert_allclose(lam_vm.values, expected, atol=1e-11)
    assert_allclose(lam_vm[2], delta_table[2] * np.log(2))
    assert lam_vm[6] == 0


def test_beta_expansion(delta_table):
    x = 17.5
    b = beta(delta_table, x)
    expected = -2 * np.log(x) * lambda_f(delta_table).values - alpha(delta_table).values
    assert_allclose(b.values, expected, atol=1e-13)
    assert b.param == x


def test_beta_needs_short_range(delta_table):
    with pytest.raises(ValueError, match="beta needs n_max <= x\\^2"):
        beta(delta_table, 10, n_max=101)


def test_identity_in_extended_precision(delta_table):
    mp = mpmath.MPContext()
    mp.prec = 128
    lam_vm = lambda_f_von_mangoldt(delta_table, 60, mp=mp)
    expected = dirichlet_convolve(mu_f(delta_table, 60, mp=mp), alpha(delta_table, 60, mp=mp))
    for n in range(1, 61):
        assert abs(lam_vm[n] + expected[n]) < mp.mpf(10) ** -20


def test_unknown_kind():
    with pytest.raises(ValueError, match="kind expected to be one of"):
        ArithSeq("zeta", np.zeros(3))
