"""Finite group families and their infinite parents.

``group_for`` turns a GroupSpec into the family object that carries the
arithmetic; the module level functions below are thin wrappers around it.
"""
from functools import lru_cache
from typing import List

from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.typing import Element
from boxlab.logic import QuotientGroupLogic

from .CyclicGroup import CyclicGroup
from .HeisenbergQuotient import HeisenbergQuotient
from .LamplighterQuotient import LamplighterQuotient
from .parents import IntegerParent, LamplighterParent, SolParent, parent_membership
from .SLQuotient import SLQuotient
from .SolQuotient import SolQuotient
from .WreathOverCycle import WreathOverCycle
from .ZCrossZ2Quotient import ZCrossZ2Quotient


@lru_cache(maxsize=64)
def group_for(spec: GroupSpec) -> QuotientGroupLogic:
    family, params = spec.family, spec.params
    if family.startswith("wreath-"):
        return WreathOverCycle(family[len("wreath-") :], *params)
    constructors = {
        "cyclic": CyclicGroup,
        "sol": SolQuotient,
        "sl": SLQuotient,
        "lamplighter": LamplighterQuotient,
        "heisenberg": HeisenbergQuotient,
        "zxz2": ZCrossZ2Quotient,
    }
    return constructors[family](*params)


def identity(spec: GroupSpec) -> Element:
    return group_for(spec).identity()


def multiply(spec: GroupSpec, a: Element, b: Element) -> Element:
    return group_for(spec).multiply(a, b)


def inverse(spec: GroupSpec, a: Element) -> Element:
    return group_for(spec).inverse(a)


def generators(spec: GroupSpec) -> List[Element]:
    return group_for(spec).generators()


def group_order(spec: GroupSpec) -> int:
    return group_for(spec).order()


__all__ = [
    "CyclicGroup",
    "HeisenbergQuotient",
    "IntegerParent",
    "LamplighterParent",
    "LamplighterQuotient",
    "SLQuotient",
    "SolParent",
    "SolQuotient",
    "WreathOverCycle",
    "ZCrossZ2Quotient",
    "generators",
    "group_for",
    "group_order",
    "identity",
    "inverse",
    "multiply",
    "parent_membership",
]
