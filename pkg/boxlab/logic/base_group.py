"""Abstract Base Classes for boxlab groups"""
from typing import List

from boxlab.common.exceptions import InvalidElementError
from boxlab.common.typing import Element


class BoxlabGroupLogic:
    """Abstract base class for a group with exact element arithmetic.

    Infinite parents (Z, the SOL lattice, the lamplighter group) implement
    this directly; finite quotients extend QuotientGroupLogic.
    """

    name: str = None

    def identity(self) -> Element:
        """Returns the neutral element in canonical form"""
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def product(self, a: Element, b: Element) -> Element:
        """Multiplies two canonical elements without validating them.

        Parameters
        ----------
        a: Element
            left factor, canonical for this group
        b: Element
            right factor, canonical for this group

        Returns
        -------
        Element
            the canonical form of a * b
        """
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def inverse(self, a: Element) -> Element:
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def generators(self) -> List[Element]:
        """Returns the canonical symmetric generating multiset.

        Returns
        -------
        List[Element]
            generators in a fixed order; the inverse of every entry occurs in the list
        """
        raise NotImplementedError("Abstract class method. Cannot be called directly.")


class QuotientGroupLogic(BoxlabGroupLogic):
    """Abstract base class for the finite quotient families"""

    spec = None

    def order(self) -> int:
        """Returns the exact group order from the family's closed form"""
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def is_canonical(self, a: Element) -> bool:
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def reduce(self, representative: tuple) -> Element:
        """Maps an exact parent-style representative to its canonical class.

        Parameters
        ----------
        representative: tuple
            integer tuple in the family's lifted encoding (see lift)

        Returns
        -------
        Element
            the canonical element of this quotient
        """
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def lift(self, a: Element) -> tuple:
        """Returns a representative of a that reduce() of a coarser quotient accepts"""
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def multiply(self, a: Element, b: Element) -> Element:
        """Checked product: both factors must be canonical"""
        for x in (a, b):
            if not self.is_canonical(x):
                raise InvalidElementError(f"{x} is not a canonical element of {self.spec}")
        return self.product(a, b)

    def project(self, a: Element, coarser: "QuotientGroupLogic") -> Element:
        """The image of a under the quotient map onto a coarser member of a filtration"""
        return coarser.reduce(self.lift(a))

    def to_json(self, a: Element) -> dict:
        return {"family": self.spec.family, "element": list(a)}
