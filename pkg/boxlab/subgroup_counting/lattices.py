"""Sublattices of Z^2 in Hermite normal form and the dihedral group D_4.

A sublattice L of finite index is stored by its unique Hermite normal form:
L is spanned by the rows (a, b) and (0, d) with a, d >= 1 and 0 <= b < d, so
that [Z^2 : L] = a d. Matrices act on column vectors.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import IntMatrix2

Vector = Tuple[int, int]

IDENTITY: IntMatrix2 = ((1, 0), (0, 1))
# the reflections in the horizontal axis and in the diagonal generate D_4
D4_GENERATORS: Tuple[IntMatrix2, IntMatrix2] = (((1, 0), (0, -1)), ((0, 1), (1, 0)))


def mat_mul(f: IntMatrix2, g: IntMatrix2) -> IntMatrix2:
    return tuple(
        tuple(sum(f[i][k] * g[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def mat_vec(f: IntMatrix2, v: Vector) -> Vector:
    return (f[0][0] * v[0] + f[0][1] * v[1], f[1][0] * v[0] + f[1][1] * v[1])


def determinant(f: IntMatrix2) -> int:
    return f[0][0] * f[1][1] - f[0][1] * f[1][0]


def mat_inv(f: IntMatrix2) -> IntMatrix2:
    det = determinant(f)
    if det not in (1, -1):
        raise InvalidInputError(f"{f} is not invertible over Z")
    return ((f[1][1] * det, -f[0][1] * det), (-f[1][0] * det, f[0][0] * det))


@lru_cache(maxsize=None)
def matrix_group(gens: Tuple[IntMatrix2, ...] = D4_GENERATORS) -> Tuple[IntMatrix2, ...]:
    """All products of the generators, identity first, in discovery order"""
    elements = [IDENTITY]
    seen = {IDENTITY}
    for f in elements:
        for g in gens:
            h = mat_mul(f, g)
            if h not in seen:
                seen.add(h)
                elements.append(h)
        if len(elements) > 10**4:
            raise InvalidInputError("the generated matrix group is not finite")
    return tuple(elements)


@dataclass(frozen=True, order=True)
class Sublattice:
    """Finite index sublattice of Z^2 spanned by the rows (a, b) and (0, d)"""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.a < 1 or self.d < 1 or not 0 <= self.b < self.d:
            raise InvalidInputError(
                f"({self.a}, {self.b}, {self.d}) is not in Hermite normal form"
            )

    @property
    def index(self) -> int:
        return self.a * self.d

    @property
    def basis(self) -> List[List[int]]:
        return [[self.a, self.b], [0, self.d]]

    def contains(self, v: Vector) -> bool:
        u, r = divmod(v[0], self.a)
        return r == 0 and (v[1] - u * self.b) % self.d == 0

    def reduce(self, v: Vector) -> Vector:
        """The representative of v + L in [0, a) x [0, d)"""
        u, x = divmod(v[0], self.a)
        return (x, (v[1] - u * self.b) % self.d)

    def cosets(self) -> List[Vector]:
        return [(x, y) for x in range(self.a) for y in range(self.d)]

    def contains_lattice(self, other: "Sublattice") -> bool:
        return all(self.contains(tuple(row)) for row in other.basis)

    @classmethod
    def scalar(cls, k: int) -> "Sublattice":
        return cls(k, 0, k)

    @classmethod
    def diagonal(cls, k: int) -> "Sublattice":
        """k times the lattice spanned by (1, 1) and (1, -1)"""
        return cls(k, k, 2 * k)

    @classmethod
    def from_basis(cls, rows: Sequence[Vector]) -> "Sublattice":
        """Hermite normal form of the lattice spanned by two independent rows"""
        (p, q), (r, s) = rows
        # row reduce the first column with the extended Euclidean algorithm
        while r != 0:
            t = p // r
            p, q, r, s = r, s, p - t * r, q - t * s
        if p < 0:
            p, q = -p, -q
        s = abs(s)
        if p == 0 or s == 0:
            raise InvalidInputError(f"{rows} do not span a finite index sublattice")
        return cls(p, q % s, s)

    def to_json(self) -> dict:
        return {"basis": self.basis, "index": self.index}


def sublattices_of_index(n: int) -> Iterator[Sublattice]:
    for a in range(1, n + 1):
        if n % a == 0:
            d = n // a
            for b in range(d):
                yield Sublattice(a, b, d)


def enumerate_sublattices(max_index: int) -> List[Sublattice]:
    """All sublattices of index <= max_index, ordered by index, each once.

    Examples
    --------
    >>> enumerate_sublattices(1)
    [Sublattice(a=1, b=0, d=1)]
    """
    if max_index < 1:
        raise InvalidInputError(f"max index must be >= 1, got {max_index}")
    return [L for n in range(1, max_index + 1) for L in sublattices_of_index(n)]


def is_invariant(L: Sublattice, gens: Sequence[IntMatrix2] = D4_GENERATORS) -> bool:
    """True iff g L is contained in L for every g, checked on the basis rows.

    Every generator must lie in GL_2(Z); for a finite group this makes g L
    contained in L equivalent to g L = L.
    """
    for g in gens:
        if determinant(g) not in (1, -1):
            raise InvalidInputError(f"{g} has determinant {determinant(g)}, not +-1")
        if not all(L.contains(mat_vec(g, tuple(row))) for row in L.basis):
            return False
    return True


def invariant_sublattices(
    max_index: int, gens: Sequence[IntMatrix2] = D4_GENERATORS
) -> List[Sublattice]:
    """Every sublattice of index <= max_index fixed by gens, with no shape filter"""
    return [L for L in enumerate_sublattices(max_index) if is_invariant(L, gens)]


def d4_invariant_sublattices(max_index: int) -> List[Sublattice]:
    """D_4-invariant sublattices of index <= max_index.

    An invariant lattice has d = a or d = 2a, so other forms are skipped;
    :func:`invariant_sublattices` scans without that filter.
    """
    found = []
    for L in enumerate_sublattices(max_index):
        if L.a != L.d and 2 * L.a != L.d:
            continue
        if is_invariant(L):
            found.append(L)
    return found


def invariant_lattice_type(L: Sublattice) -> Tuple[str, int]:
    """("scalar", k) for kZ^2 and ("diagonal", k) for k(Z(1, 1) + Z(1, -1))"""
    if L == Sublattice.scalar(L.a):
        return "scalar", L.a
    if L.d % 2 == 0 and L == Sublattice.diagonal(L.d // 2):
        return "diagonal", L.d // 2
    raise InvalidInputError(f"{L} is neither kZ^2 nor a scaled diagonal lattice")


def displacement_lattice_contained(L: Sublattice, f: IntMatrix2) -> bool:
    """True iff (I - f) Z^2 is contained in L"""
    columns = ((1 - f[0][0], -f[1][0]), (-f[0][1], 1 - f[1][1]))
    return all(L.contains(c) for c in columns)
