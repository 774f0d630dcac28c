import pytest

from boxlab.arithmetics import ell
from boxlab.common.exceptions import InvalidModulusError, NonUnitError, OutOfRangeError
from boxlab.finfield_poly import (
    QuotientRingF2,
    degree,
    find_primitive_poly,
    is_irreducible,
    multiplicative_order,
    poly_divmod,
    poly_from_hex,
    poly_gcd,
    poly_mul,
    poly_mul_mod,
    poly_pow_mod,
    poly_str,
    poly_to_hex,
    primitive_product,
)


def test_degree_of_zero_is_minus_one():
    assert degree(0) == -1
    assert degree(1) == 0
    assert degree(0b1011) == 3


def test_poly_mul_characteristic_two():
    """(X + 1)^2 = X^2 + 1 over F_2"""
    assert poly_mul(0b11, 0b11) == 0b101


def test_poly_divmod_reconstructs():
    a, b = 0b1101101, 0b1011
    q, r = poly_divmod(a, b)
    assert poly_mul(q, b) ^ r == a
    assert degree(r) < degree(b)


def test_division_by_zero_polynomial():
    with pytest.raises(InvalidModulusError):
        poly_divmod(0b101, 0)


def test_constant_modulus_is_rejected():
    with pytest.raises(InvalidModulusError):
        poly_mul_mod(0b11, 0b11, 1)


def test_poly_gcd():
    # X^2 + 1 = (X + 1)^2 and X^2 + X = X (X + 1)
    assert poly_gcd(0b101, 0b110) == 0b11


def test_is_irreducible():
    assert is_irreducible(0b111)
    assert is_irreducible(0b1011)
    assert not is_irreducible(0b101)
    assert not is_irreducible(0b110001)


def test_find_primitive_poly_is_least():
    """The least primitive polynomials of degrees 2, 3 and 5"""
    assert find_primitive_poly(2) == 0b111
    assert find_primitive_poly(3) == 0b1011
    assert poly_str(find_primitive_poly(5)) == "X^5+X^2+1"


def test_find_primitive_poly_range():
    with pytest.raises(OutOfRangeError):
        find_primitive_poly(0)
    with pytest.raises(OutOfRangeError):
        find_primitive_poly(21)


def test_multiplicative_order_of_x():
    assert multiplicative_order(0b10, 0b111) == 3
    assert multiplicative_order(0b10, 0b1011) == 7


def test_non_unit_has_no_order():
    """X + 1 shares a factor with (X + 1)^2"""
    with pytest.raises(NonUnitError):
        multiplicative_order(0b11, 0b101)


def test_primitive_product_orders():
    """X has order ell_k modulo P_1 ... P_k"""
    assert primitive_product(2) == 0b110001
    for k in (1, 2, 3):
        ring = QuotientRingF2(primitive_product(k))
        assert ring.order(0b10) == ell(k)


def test_quotient_ring_operations():
    ring = QuotientRingF2(0b1011)
    assert ring.size == 8
    assert ring.reduce(0b1000) == 0b011
    assert ring.pow(0b10, 7) == 1
    assert ring.mul(0b10, ring.pow(0b10, 6)) == 1
    assert ring.x_powers(4) == [1, 0b10, 0b100, 0b011]
    assert poly_pow_mod(0b10, 0, 0b1011) == 1


def test_hex_encoding():
    assert poly_to_hex(0b111) == "07"
    assert poly_from_hex(poly_to_hex(0x1F3A5)) == 0x1F3A5
