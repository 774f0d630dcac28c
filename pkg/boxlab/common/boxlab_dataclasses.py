import os
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from boxlab.common.exceptions import InvalidInputError

LAMP_GROUPS = ("z2", "z4", "z2xz2")
FAMILIES = (
    "cyclic",
    "sol",
    "sl",
    "wreath-z2",
    "wreath-z4",
    "wreath-z2xz2",
    "lamplighter",
    "heisenberg",
    "zxz2",
)
# params[1] of a zxz2 spec: 0 and 1 select <(n, eps)>, 2 selects nZ x Z/2
ZXZ2_FULL_FIBRE = 2


@dataclass(frozen=True)
class GroupSpec:
    """A member of one of the finite group families, e.g. GroupSpec("sol", (5,))"""

    family: str
    params: Tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInputError(
                f"Unknown group family {self.family!r}, choose one of {FAMILIES}"
            )
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))

    def __str__(self) -> str:
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    def to_json(self) -> dict:
        return {"family": self.family, "params": list(self.params)}

    @classmethod
    def from_json(cls, data: dict) -> "GroupSpec":
        return cls(data["family"], tuple(data["params"]))

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls("cyclic", (n,))

    @classmethod
    def sol(cls, modulus: int) -> "GroupSpec":
        return cls("sol", (modulus,))

    @classmethod
    def sl(cls, m: int, modulus: int) -> "GroupSpec":
        return cls("sl", (m, modulus))

    @classmethod
    def wreath(cls, lamp: str, n: int) -> "GroupSpec":
        if lamp not in LAMP_GROUPS:
            raise InvalidInputError(
                f"Unknown lamp group {lamp!r}, choose one of {LAMP_GROUPS}"
            )
        return cls(f"wreath-{lamp}", (n,))

    @classmethod
    def lamplighter(cls, k: int) -> "GroupSpec":
        return cls("lamplighter", (k,))

    @classmethod
    def heisenberg(cls, modulus: int) -> "GroupSpec":
        return cls("heisenberg", (modulus,))

    @classmethod
    def zxz2(cls, n: int, eps: Optional[int]) -> "GroupSpec":
        return cls("zxz2", (n, ZXZ2_FULL_FIBRE if eps is None else eps))


@dataclass
class GraphMetrics:
    """Coarse invariants of one Cayley graph; girth None means acyclic"""

    order: int = None
    degree: int = None
    diameter: int = None
    girth: Optional[int] = None
    lambda1: float = None
    cheeger_lower: float = None
    cheeger_upper: float = None
    cheeger_exact: Optional[float] = None

    def to_json(self) -> dict:
        data = asdict(self)
        data["girth"] = "acyclic" if self.girth is None else self.girth
        return data


@dataclass(frozen=True)
class DAlphaParams:
    """Property D_alpha parameters: diam(G/M) >= K * |G/M| ** alpha"""

    alpha: Fraction
    K: Fraction

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise InvalidInputError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.K > 0:
            raise InvalidInputError(f"K must be positive, got {self.K}")


@dataclass
class ComponentData:
    """One component of a box space while it is being computed"""

    k: int = None
    spec: GroupSpec = None
    metrics: GraphMetrics = None
    offset: int = None
    build_runtime: float = None
    metrics_runtime: float = None


@dataclass
class MatchingVerdict:
    """Outcome of a ratio-bounded matching search at budget (D, R, H).

    status is "matched" (assignment re-verifies) or "distinguished"
    (obstruction holds a Hall-violating index set).
    """

    status: str
    D: int
    R: Fraction
    H: int
    assignment: Dict[int, int] = field(default_factory=dict)
    obstruction: Optional[dict] = None

    @property
    def matched(self) -> bool:
        return self.status == "matched"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "D": self.D,
            "R": str(self.R),
            "H": self.H,
            "assignment": {str(k): j for k, j in sorted(self.assignment.items())},
            "obstruction": self.obstruction,
        }


@dataclass
class SubgroupCensus:
    """Counts a_n of normal subgroups of index exactly n and cumulative s_n"""

    max_n: int
    a: Dict[int, int]
    provenance: str
    s: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.s:
            total = 0
            for n in range(1, self.max_n + 1):
                total += self.a.get(n, 0)
                self.s[n] = total

    def a_n(self, n: int) -> int:
        return self.a.get(n, 0)

    def s_n(self, n: int) -> int:
        if n < 1:
            return 0
        if n > self.max_n:
            raise InvalidInputError(f"census only covers n <= {self.max_n}, got {n}")
        return self.s[n]


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checks: List[dict] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)

    def check(self, label: str, ok: bool, **details) -> bool:
        self.checks.append({"check": label, "ok": bool(ok), **details})
        if not ok:
            self.passed = False
        return ok

    def to_json(self) -> dict:
        return asdict(self)


def default_max_vertices() -> int:
    return int(os.environ.get("BOXLAB_MAX_VERTICES", 10**6))


@dataclass
class RunConfig:
    """Command line selections, echoed verbatim into every report"""

    subcommand: str = None
    options: Dict[str, object] = field(default_factory=dict)
    max_vertices: int = field(default_factory=default_max_vertices)
    max_subset_order: int = 22
    tolerance: float = 1e-9
    output_format: str = "json"
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_subset_order <= 0:
            raise InvalidInputError("budgets must be positive")
        if self.output_format not in ("json", "csv"):
            raise InvalidInputError(
                f"output format must be json or csv, got {self.output_format!r}"
            )

    def to_json(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "options": {k: _jsonable(v) for k, v in sorted(self.options.items())},
            "max_vertices": self.max_vertices,
            "max_subset_order": self.max_subset_order,
            "tolerance": self.tolerance,
            "output_format": self.output_format,
        }


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)
