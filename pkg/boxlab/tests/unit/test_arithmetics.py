import math

import pytest

from boxlab.arithmetics import (
    ell,
    fib,
    fib_matrix_power,
    fib_signed,
    fibonacci_product_modulus,
    lucas,
    lucas_lower_bound,
    nks,
    odd_primes,
    pisano,
    pisano_anomalies,
    pisano_by_factorisation,
    rank_of_apparition,
    sigma_divisors,
    sl_order,
)
from boxlab.common.exceptions import OutOfRangeError


def test_fib_small_values():
    """fib() agrees with the recurrence on the first terms"""
    assert [fib(n) for n in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    assert fib(19) == 4181


def test_fib_signed_negative_indices():
    """F_-n = (-1)^(n+1) F_n"""
    assert [fib_signed(-n) for n in range(1, 6)] == [1, -1, 2, -3, 5]


def test_lucas_values():
    assert [lucas(n) for n in range(6)] == [2, 1, 3, 4, 7, 11]


def test_fib_matrix_power_negative_exponent():
    """A^-1 = [[0, 1], [1, -1]] and reduction is applied entrywise"""
    assert fib_matrix_power(-1) == ((0, 1), (1, -1))
    assert fib_matrix_power(-1, 5) == ((0, 1), (1, 4))
    assert fib_matrix_power(5, 1000) == ((8, 5), (5, 3))


def test_pisano_known_periods():
    """delta(N) matches the classical Pisano periods"""
    assert pisano(2) == 3
    assert pisano(5) == 20
    assert pisano(10) == 60
    assert pisano(25) == 100


def test_pisano_of_fibonacci_numbers():
    """delta(F_q) = 4q for odd q >= 5 and delta(F_3) = 3"""
    for q in (5, 7, 11, 13):
        assert pisano(fib(q)) == 4 * q
    assert pisano(fib(3)) == 3
    assert pisano_anomalies(range(1, 18)) == [3]


def test_pisano_of_fibonacci_products_is_the_lcm():
    """delta(F_5 F_7) = lcm(20, 28) = 140, not 4^2 * 35"""
    assert fibonacci_product_modulus([5, 7]) == 65
    assert pisano(65) == math.lcm(20, 28) == 140


def test_pisano_rejects_small_modulus():
    with pytest.raises(OutOfRangeError):
        pisano(1)
    with pytest.raises(OutOfRangeError):
        pisano_by_factorisation(1)


def test_pisano_iteration_agrees_with_prime_power_lifting():
    """Walking the pair (F_e, F_e+1) and the lcm over prime powers give one period"""
    assert [N for N in range(2, 5001) if pisano(N) != pisano_by_factorisation(N)] == []


@pytest.mark.parametrize("m, n", [(5, 13), (4, 25), (8, 9), (7, 11), (13, 89), (16, 125)])
def test_pisano_of_coprime_products(m, n):
    assert pisano(m * n) == math.lcm(pisano(m), pisano(n)) == pisano_by_factorisation(m * n)


def test_pisano_of_three_fibonacci_factors():
    modulus = fibonacci_product_modulus([5, 7, 11])
    assert modulus == 5 * 13 * 89
    assert pisano(modulus) == math.lcm(20, 28, 44) == pisano_by_factorisation(modulus)


def test_lucas_lower_bound():
    assert lucas_lower_bound(10) == 8
    assert all(lucas_lower_bound(N) <= pisano(N) for N in range(2, 200))


def test_rank_of_apparition():
    assert rank_of_apparition(5) == 5
    assert rank_of_apparition(10) == 15
    assert rank_of_apparition(125) == 125


def test_sl_order():
    """|SL_m(Z/NZ)| from the product formula"""
    assert sl_order(2, 2) == 6
    assert sl_order(2, 3) == 24
    assert sl_order(2, 5) == 120
    assert sl_order(3, 2) == 168
    assert sl_order(2, 4) == 48
    assert sl_order(2, 6) == sl_order(2, 2) * sl_order(2, 3)


def test_sigma_divisors():
    assert [sigma_divisors(n) for n in range(1, 7)] == [1, 3, 4, 7, 6, 12]


def test_ell_and_primes():
    assert odd_primes(3) == [3, 5, 7]
    assert ell(1) == 3
    assert ell(2) == 21
    assert ell(3) == 21 * 31


def test_nks_rational_exponent():
    """N_k(s) = 2^floor(ks) for exact rationals"""
    assert [nks("3/2", k) for k in range(1, 5)] == [2, 8, 16, 64]
    assert nks(1, 3) == 8


def test_nks_rejects_small_exponent():
    with pytest.raises(OutOfRangeError):
        nks("1/2", 1)
    with pytest.raises(OutOfRangeError):
        nks(1, 0)
