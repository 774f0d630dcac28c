"""Filtrations (N_k) of the parent groups, described by their quotients G/N_k"""
import math
import re
from fractions import Fraction
from typing import Optional, Sequence

from boxlab.arithmetics import fib, nks
from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import Rational
from boxlab.groups import IntegerParent, LamplighterParent, SolParent
from boxlab.logic import BoxlabFiltrationLogic, BoxlabGroupLogic


class SolCongruence(BoxlabFiltrationLogic):
    """Gamma(base^k) in the SOL lattice, quotients SolQuotient(base^k)"""

    name = "sol"

    def __init__(self, base: int = 5):
        if base < 2:
            raise InvalidInputError(f"congruence base must be >= 2, got {base}")
        self.base = base

    def spec(self, k: int) -> GroupSpec:
        return GroupSpec.sol(self.base**k)

    def parent(self) -> BoxlabGroupLogic:
        return SolParent(self.base)

    def to_json(self) -> dict:
        return {"schedule": self.name, "base": self.base}


class SolFibonacciSchedule(BoxlabFiltrationLogic):
    """Gamma(N_k) with N_k = F_q1 ... F_qk for a list of odd primes q_i"""

    name = "solfib"

    def __init__(self, qs: Sequence[int] = (5, 7, 11, 13)):
        self.qs = tuple(qs)

    def modulus(self, k: int) -> int:
        if not 1 <= k <= len(self.qs):
            raise InvalidInputError(f"schedule {self.qs} has no component {k}")
        return math.prod(fib(q) for q in self.qs[:k])

    def spec(self, k: int) -> GroupSpec:
        return GroupSpec.sol(self.modulus(k))

    def parent(self) -> Optional[BoxlabGroupLogic]:
        return None

    def to_json(self) -> dict:
        return {"schedule": self.name, "qs": list(self.qs)}


class LamplighterSchedule(BoxlabFiltrationLogic):
    """N_k = kernel of the lamplighter group onto F_2[X]/(P_1 ... P_k) x| Z/ell_k"""

    name = "lamplighter"

    def spec(self, k: int) -> GroupSpec:
        return GroupSpec.lamplighter(k)

    def parent(self) -> BoxlabGroupLogic:
        return LamplighterParent()

    def to_json(self) -> dict:
        return {"schedule": self.name}


class ZSchedule(BoxlabFiltrationLogic):
    """N_k(s) Z in Z with N_k(s) = 2^floor(ks)"""

    name = "z"

    def __init__(self, s: Rational = 1):
        self.s = Fraction(s)
        if self.s < 1:
            raise InvalidInputError(f"s must be >= 1, got {self.s}")

    def spec(self, k: int) -> GroupSpec:
        return GroupSpec.cyclic(nks(self.s, k))

    def parent(self) -> BoxlabGroupLogic:
        return IntegerParent(self.s)

    def to_json(self) -> dict:
        return {"schedule": self.name, "s": str(self.s)}


class SLCongruence(BoxlabFiltrationLogic):
    """Principal congruence subgroups of SL_m(Z) of level p^k or N_k(s)"""

    name = "sl"

    def __init__(self, m: int = 2, p: int = None, s: Rational = None):
        if (p is None) == (s is None):
            raise InvalidInputError("SL congruence schedule needs exactly one of p and s")
        self.m = m
        self.p = p
        self.s = None if s is None else Fraction(s)

    def modulus(self, k: int) -> int:
        return self.p**k if self.p is not None else nks(self.s, k)

    def spec(self, k: int) -> GroupSpec:
        return GroupSpec.sl(self.m, self.modulus(k))

    def parent(self) -> Optional[BoxlabGroupLogic]:
        return None

    def to_json(self) -> dict:
        level = {"p": self.p} if self.p is not None else {"s": str(self.s)}
        return {"schedule": self.name, "m": self.m, **level}


class ZCrossZ2Schedule(BoxlabFiltrationLogic):
    """<(2^k, eps)> in Z x Z/2 (eps = None for 2^k Z x Z/2).

    eps = 1 does not give a decreasing sequence, since (2^(k+1), 1) is
    not a multiple of (2^k, 1); verify_filtration reports it.
    """

    name = "zxz2"

    def __init__(self, eps: Optional[int] = 0):
        self.eps = eps

    def spec(self, k: int) -> GroupSpec:
        return GroupSpec.zxz2(2**k, self.eps)

    def parent(self) -> Optional[BoxlabGroupLogic]:
        return None

    def to_json(self) -> dict:
        return {"schedule": self.name, "eps": self.eps}


def parse_schedule(text: str) -> BoxlabFiltrationLogic:
    """Parses a schedule selector.

    Accepted forms: ``sol:5^k``, ``solfib`` or ``solfib:5,7,11``,
    ``lamplighter``, ``z:<s>``, ``sl:<m>,<p>^k``, ``sl:<m>,s=<s>`` and
    ``zxz2:<eps>`` with eps in {0, 1, full}. Rationals are written a/b.
    """
    family, _, arg = text.partition(":")
    try:
        if family == "sol":
            match = re.fullmatch(r"(\d+)\^k", arg or "5^k")
            return SolCongruence(int(match.group(1)))
        if family == "solfib":
            return SolFibonacciSchedule([int(q) for q in arg.split(",")] if arg else (5, 7, 11, 13))
        if family == "lamplighter":
            return LamplighterSchedule()
        if family == "z":
            return ZSchedule(Fraction(arg or "1"))
        if family == "sl":
            m, _, level = arg.partition(",")
            if level.startswith("s="):
                return SLCongruence(int(m), s=Fraction(level[2:]))
            return SLCongruence(int(m), p=int(re.fullmatch(r"(\d+)\^k", level).group(1)))
        if family == "zxz2":
            return ZCrossZ2Schedule(None if arg == "full" else int(arg or 0))
    except (AttributeError, ValueError, ZeroDivisionError) as exp:
        raise InvalidInputError(f"cannot parse schedule {text!r}: {exp}") from exp
    raise InvalidInputError(
        f"Unknown schedule {text!r}, choose one of sol, solfib, lamplighter, z, sl, zxz2"
    )
