"""Number theory behind the box space schedules.

Fibonacci and Lucas numbers, the Pisano period delta(N) (the order of the
Fibonacci matrix A = [[1, 1], [1, 0]] modulo N), the rank of apparition,
orders of SL_m(Z/NZ), divisor sums, ell_k and the 2^floor(ks) schedules.
Everything is exact integer arithmetic.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from sympy import divisor_sigma, divisors, factorint, prime

from boxlab.common.exceptions import OutOfRangeError
from boxlab.common.typing import IntMatrix2, Rational

logger = logging.getLogger(__name__)


def _fib_pair(n: int, modulus: int = None) -> Tuple[int, int]:
    """(F_n, F_n+1) by fast doubling, n >= 0, optionally reduced"""
    a, b = 0, 1
    for bit in bin(n)[2:]:
        # F_2m = F_m (2 F_m+1 - F_m), F_2m+1 = F_m^2 + F_m+1^2
        c = a * (2 * b - a)
        d = a * a + b * b
        a, b = (d, c + d) if bit == "1" else (c, d)
        if modulus is not None:
            a, b = a % modulus, b % modulus
    return a, b


def fib(n: int) -> int:
    """The n-th Fibonacci number, F_0 = 0 and F_1 = 1.

    Examples
    --------
    >>> fib(19)
    4181
    """
    if n < 0:
        raise OutOfRangeError(f"fib expects n >= 0, use fib_signed for {n}")
    return _fib_pair(n)[0]


def fib_signed(n: int) -> int:
    """F_n for any integer n, with F_-n = (-1)^(n+1) F_n"""
    if n >= 0:
        return fib(n)
    value = fib(-n)
    return value if (-n) % 2 == 1 else -value


def lucas(n: int) -> int:
    """The n-th Lucas number, L_0 = 2 and L_1 = 1"""
    if n < 0:
        raise OutOfRangeError(f"lucas expects n >= 0, got {n}")
    f, g = _fib_pair(n)
    return 2 * g - f


def fib_matrix_power(n: int, modulus: int = None) -> IntMatrix2:
    """A^n = [[F_n+1, F_n], [F_n, F_n-1]] for any integer n, optionally reduced."""
    if modulus is not None and n >= 0:
        f, g = _fib_pair(n, modulus)
        return ((g, f), (f, (g - f) % modulus))
    matrix = (
        (fib_signed(n + 1), fib_signed(n)),
        (fib_signed(n), fib_signed(n - 1)),
    )
    if modulus is None:
        return matrix
    return tuple(tuple(x % modulus for x in row) for row in matrix)


def _is_identity_power(e: int, modulus: int) -> bool:
    return fib_matrix_power(e, modulus) == ((1 % modulus, 0), (0, 1 % modulus))


@lru_cache(maxsize=None)
def _pisano_prime_power(p: int, k: int) -> int:
    # delta(p) divides p - 1 when p = +-1 mod 5 and 2(p + 1) otherwise
    bound = {2: 3, 5: 20}.get(p) or (p - 1 if p % 5 in (1, 4) else 2 * (p + 1))
    period = next(d for d in divisors(bound) if _is_identity_power(d, p))
    modulus = p**k
    while not _is_identity_power(period, modulus):
        period *= p
    return period


@lru_cache(maxsize=None)
def pisano(modulus: int) -> int:
    """The Pisano period delta(N): least e >= 1 with A^e = I mod N.

    Iterates the pair (F_e, F_e+1) mod N until it returns to (0, 1), which
    takes delta(N) <= 6N steps.

    Examples
    --------
    >>> pisano(10)
    60
    """
    if modulus < 2:
        raise OutOfRangeError(f"pisano expects N >= 2, got {modulus}")
    a, b, e = 1, 1, 1
    while (a, b) != (0, 1):
        a, b = b, (a + b) % modulus
        e += 1
    return e


def pisano_by_factorisation(modulus: int) -> int:
    """delta(N) as the lcm of the periods of the prime power factors of N.

    Each prime power period is the least divisor of its known bound whose
    matrix power is the identity, lifted by factors of p. Used to cross-check
    :func:`pisano`, never by it.
    """
    if modulus < 2:
        raise OutOfRangeError(f"pisano expects N >= 2, got {modulus}")
    return math.lcm(*(_pisano_prime_power(p, k) for p, k in factorint(modulus).items()))


def rank_of_apparition(modulus: int) -> int:
    """Least e >= 1 with N dividing F_e"""
    if modulus < 2:
        raise OutOfRangeError(f"rank_of_apparition expects N >= 2, got {modulus}")
    a, b, e = 1, 1, 1
    while a % modulus:
        a, b = b, (a + b) % modulus
        e += 1
    return e


def sl_order(m: int, modulus: int) -> int:
    """|SL_m(Z/NZ)|.

    For N = p^k the order is p^(k(m^2-1)) (1 - p^-m) ... (1 - p^-2); the
    general case multiplies the prime power factors together.
    """
    if m < 2 or modulus < 2:
        raise OutOfRangeError(f"sl_order expects m, N >= 2, got ({m}, {modulus})")
    order = 1
    for p, k in factorint(modulus).items():
        local = p ** ((k - 1) * (m * m - 1) + m * (m - 1) // 2)
        for i in range(2, m + 1):
            local *= p**i - 1
        order *= local
    return order


def sigma_divisors(n: int) -> int:
    """Sum of the divisors of n"""
    if n < 1:
        raise OutOfRangeError(f"sigma expects n >= 1, got {n}")
    return int(divisor_sigma(n))


def nth_prime(i: int) -> int:
    """p_i with p_1 = 2"""
    if i < 1:
        raise OutOfRangeError(f"prime index must be >= 1, got {i}")
    return int(prime(i))


def first_primes(k: int) -> List[int]:
    return [nth_prime(i) for i in range(1, k + 1)]


def odd_primes(k: int) -> List[int]:
    """q_1 = 3, q_2 = 5, ... the first k odd primes"""
    return [nth_prime(i) for i in range(2, k + 2)]


def ell(k: int) -> int:
    """ell_k = (2^p_1 - 1) ... (2^p_k - 1), the order of X modulo P_1 ... P_k"""
    if k < 1:
        raise OutOfRangeError(f"ell expects k >= 1, got {k}")
    return math.prod((1 << p) - 1 for p in first_primes(k))


def nks(s: Rational, k: int) -> int:
    """N_k(s) = 2^floor(ks) for an exact rational s >= 1"""
    s = Fraction(s)
    if s < 1:
        raise OutOfRangeError(f"nks expects s >= 1, got {s}")
    if k < 1:
        raise OutOfRangeError(f"nks expects k >= 1, got {k}")
    return 1 << math.floor(k * s)


def fibonacci_product_modulus(qs: Sequence[int]) -> int:
    return math.prod(fib(q) for q in qs)


def pisano_anomalies(ns: Iterable[int]) -> List[int]:
    """Odd n with F_n >= 2 for which delta(F_n) differs from 4n"""
    anomalies = []
    for n in ns:
        if n % 2 == 0 or fib(n) < 2:
            continue
        if pisano(fib(n)) != 4 * n:
            logger.debug(f"delta(F_{n}) = {pisano(fib(n))}, expected {4 * n}")
            anomalies.append(n)
    return anomalies


def lucas_lower_bound(modulus: int) -> int:
    """2 max{t : L_t <= N}, a lower bound for delta(N)"""
    t = 1
    while lucas(t + 1) <= modulus:
        t += 1
    return 2 * t
