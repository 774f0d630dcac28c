"""Arithmetic in F_2[X] and its quotient rings.

Polynomials over F_2 are represented as non-negative integers: the
polynomial b_n X^n + ... + b_1 X + b_0 is the integer with bits b_n ... b_0.
The zero polynomial has degree -1, a sentinel that never reaches a division.

The lamplighter box space uses the primitive polynomials P_i of prime
degree p_i and the ideal generated by P_1 ... P_k; both come from here.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from sympy import primefactors

from boxlab.arithmetics import first_primes
from boxlab.common.exceptions import (
    InvalidInputError,
    InvalidModulusError,
    NonUnitError,
    OutOfRangeError,
)

logger = logging.getLogger(__name__)

PolyF2 = int

MAX_PRIMITIVE_DEGREE = 20


def degree(a: PolyF2) -> int:
    """Degree of a, -1 for the zero polynomial."""
    return a.bit_length() - 1


def poly_add(a: PolyF2, b: PolyF2) -> PolyF2:
    """Sum of a and b (coefficient-wise XOR)."""
    return a ^ b


def poly_mul(a: PolyF2, b: PolyF2) -> PolyF2:
    """Schoolbook product of a and b."""
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def poly_divmod(a: PolyF2, b: PolyF2) -> Tuple[PolyF2, PolyF2]:
    """Long division of a by b, returns (quotient, remainder)."""
    if b == 0:
        raise InvalidModulusError("division by the zero polynomial")
    m = degree(a)
    n = degree(b)
    if m < n:
        return 0, a
    b <<= m - n
    q = 0
    for i in range(m - n + 1):
        q <<= 1
        if (a >> (m - i)) & 1:
            a ^= b
            q ^= 1
        b >>= 1
    return q, a


def poly_mod(a: PolyF2, m: PolyF2) -> PolyF2:
    return poly_divmod(a, m)[1]


def poly_gcd(a: PolyF2, b: PolyF2) -> PolyF2:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _check_modulus(m: PolyF2) -> None:
    if degree(m) < 1:
        raise InvalidModulusError(
            f"modulus {poly_str(m)} must have degree >= 1, got degree {degree(m)}"
        )


def poly_mul_mod(a: PolyF2, b: PolyF2, m: PolyF2) -> PolyF2:
    """Remainder of a*b after division by m (deg m >= 1).

    Examples
    --------
    >>> poly_mul_mod(0b11, 0b11, 0b111)  # (X+1)^2 mod X^2+X+1
    2
    """
    _check_modulus(m)
    return poly_mod(poly_mul(a, b), m)


def poly_pow_mod(a: PolyF2, e: int, m: PolyF2) -> PolyF2:
    """a**e mod m by square-and-multiply, e >= 0."""
    _check_modulus(m)
    result = 1
    a = poly_mod(a, m)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, a), m)
        a = poly_mod(poly_mul(a, a), m)
        e >>= 1
    return poly_mod(result, m)


def is_irreducible(p: PolyF2) -> bool:
    """True iff p (degree >= 1) has no factor of degree between 1 and deg(p)/2.

    Uses Rabin's criterion: X^(2^d) = X mod p and gcd(X^(2^(d/r)) - X, p) = 1
    for every prime r dividing d.
    """
    d = degree(p)
    if d < 1:
        raise InvalidInputError(f"irreducibility needs degree >= 1, got {poly_str(p)}")
    if d == 1:
        return True
    x = 0b10
    if _frobenius(x, d, p) != poly_mod(x, p):
        return False
    for r in primefactors(d):
        h = _frobenius(x, d // r, p) ^ x
        if poly_gcd(p, h) != 1:
            return False
    return True


def _frobenius(a: PolyF2, times: int, m: PolyF2) -> PolyF2:
    """a^(2^times) mod m"""
    for _ in range(times):
        a = poly_mod(poly_mul(a, a), m)
    return a


def multiplicative_order(a: PolyF2, m: PolyF2) -> int:
    """Least e >= 1 with a^e = 1 mod m, for a unit a of F_2[X]/(m).

    The order is found from the factorisation of |(F_2[X]/(m))^x| when m
    is irreducible and by direct iteration otherwise.
    """
    _check_modulus(m)
    a = poly_mod(a, m)
    if a == 0 or poly_gcd(a, m) != 1:
        raise NonUnitError(f"{poly_str(a)} is not a unit modulo {poly_str(m)}")
    if is_irreducible(m):
        e = (1 << degree(m)) - 1
        for r in primefactors(e):
            while e % r == 0 and poly_pow_mod(a, e // r, m) == 1:
                e //= r
        return e
    e, power = 1, a
    while power != 1:
        power = poly_mod(poly_mul(power, a), m)
        e += 1
    return e


@lru_cache(maxsize=None)
def find_primitive_poly(d: int) -> PolyF2:
    """The lexicographically least primitive polynomial of degree d.

    Candidates are scanned in increasing integer order (the lexicographic
    order on coefficient bit strings read from the top degree down), so the
    answer is deterministic.

    Examples
    --------
    >>> poly_str(find_primitive_poly(5))
    'X^5+X^2+1'
    """
    if not 1 <= d <= MAX_PRIMITIVE_DEGREE:
        raise OutOfRangeError(
            f"primitive polynomial degree must lie in [1, {MAX_PRIMITIVE_DEGREE}], got {d}"
        )
    target = (1 << d) - 1
    for p in range(1 << d, 1 << (d + 1)):
        # a primitive polynomial has a nonzero constant term
        if not p & 1:
            continue
        if is_irreducible(p) and multiplicative_order(0b10, p) == target:
            logger.debug(f"primitive polynomial of degree {d}: {poly_str(p)}")
            return p
    raise InvalidInputError(f"no primitive polynomial of degree {d}")


@lru_cache(maxsize=None)
def primitive_product(k: int) -> PolyF2:
    """P_1 ... P_k, the generator of the ideal I_k (p_1 = 2, p_2 = 3, ...)."""
    if k < 1:
        raise OutOfRangeError(f"k must be >= 1, got {k}")
    product = 1
    for p in first_primes(k):
        product = poly_mul(product, find_primitive_poly(p))
    return product


def poly_str(p: PolyF2) -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(degree(p), -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else "X" if i == 1 else f"X^{i}")
    return "+".join(terms)


def poly_to_hex(p: PolyF2) -> str:
    """Little-endian hex of the coefficient bits, e.g. X^2+X+1 -> "07"."""
    nbytes = max(1, (p.bit_length() + 7) // 8)
    return p.to_bytes(nbytes, "little").hex()


def poly_from_hex(text: str) -> PolyF2:
    return int.from_bytes(bytes.fromhex(text), "little")


@dataclass(frozen=True)
class QuotientRingF2:
    """The ring F_2[X]/(modulus); residues are polynomials of degree < deg(modulus)"""

    modulus: PolyF2

    def __post_init__(self):
        _check_modulus(self.modulus)

    @property
    def degree(self) -> int:
        return degree(self.modulus)

    @property
    def size(self) -> int:
        return 1 << self.degree

    def reduce(self, a: PolyF2) -> PolyF2:
        return poly_mod(a, self.modulus)

    def mul(self, a: PolyF2, b: PolyF2) -> PolyF2:
        return poly_mul_mod(a, b, self.modulus)

    def pow(self, a: PolyF2, e: int) -> PolyF2:
        return poly_pow_mod(a, e, self.modulus)

    def order(self, a: PolyF2) -> int:
        return multiplicative_order(a, self.modulus)

    def x_powers(self, count: int) -> list:
        """[X^0, X^1, ..., X^(count-1)] reduced modulo the modulus."""
        powers, current = [], poly_mod(1, self.modulus)
        for _ in range(count):
            powers.append(current)
            current = poly_mod(current << 1, self.modulus)
        return powers
