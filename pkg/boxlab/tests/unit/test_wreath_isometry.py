import pytest

from boxlab.common.exceptions import BudgetExceededError, InvalidInputError
from boxlab.wreath_isometry import (
    LampBijection,
    all_identity_fixing_bijections,
    distance_spectra_agree,
    induced_map,
    twisted_map,
    verify_isomorphism,
)


def test_lamp_bijection_validation():
    with pytest.raises(InvalidInputError):
        LampBijection((0, 1, 1, 2))
    b = LampBijection((0, 2, 3, 1))
    assert b.fixes_identity
    assert b.inverse() == (0, 3, 1, 2)


def test_identity_fixing_bijections():
    bijections = all_identity_fixing_bijections()
    assert len(bijections) == 6
    assert all(b.fixes_identity for b in bijections)


def test_induced_map_keeps_the_cursor():
    b = LampBijection((0, 2, 3, 1))
    assert induced_map(b, 3, (1, 2, 3, 2)) == (2, 3, 1, 2)
    with pytest.raises(InvalidInputError):
        induced_map(b, 3, (1, 2, 2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_every_lamp_bijection_induces_an_isomorphism(n):
    """Z/4 wr Z/n and (Z/2 x Z/2) wr Z/n have isomorphic Cayley graphs"""
    for b in all_identity_fixing_bijections():
        verdict = verify_isomorphism(b, n)
        assert verdict["isomorphic"]
        assert verdict["fixes_identity"]
        assert verdict["elements"] == 4**n * n
        assert verdict["edges_checked"] == 5 * 4**n * n


def test_identity_moving_bijection_needs_to_be_unpointed():
    with pytest.raises(InvalidInputError):
        LampBijection((1, 0, 2, 3))
    moved = LampBijection((1, 0, 2, 3), pointed=False)
    assert not moved.fixes_identity


def test_identity_moving_bijection_is_not_base_point_preserving():
    """Still a graph isomorphism, but the identity goes elsewhere"""
    verdict = verify_isomorphism(LampBijection((1, 0, 2, 3), pointed=False), 2)
    assert verdict["bijective"]
    assert verdict["isomorphic"]
    assert not verdict["fixes_identity"]


def test_cursor_twisted_map_is_rejected():
    """Changing the relabelling with the cursor breaks the shift edges"""
    b, other = all_identity_fixing_bijections()[:2]
    verdict = verify_isomorphism(b, 3, mapping=twisted_map(b, other, 3))
    assert verdict["bijective"]
    assert not verdict["isomorphic"]
    assert verdict["witness"] is not None


def test_isomorphism_budget():
    with pytest.raises(BudgetExceededError):
        verify_isomorphism(all_identity_fixing_bijections()[0], 9)


def test_distance_spectra_agree():
    assert distance_spectra_agree(2)
    assert distance_spectra_agree(3)
