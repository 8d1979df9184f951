"""
Pydantic models for the values exchanged between the computation modules and the CLI.
"""

import re
from enum import StrEnum
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from rational_fourfolds.errors import DomainError

Parity = Literal["odd", "even", "unspecified"]
RankMethod = Literal["lie-model", "closed", "low-degree"]


class IntersectionForm(BaseModel):
    """Diagonalised intersection form of a simply connected four-manifold."""

    model_config = ConfigDict(frozen=True)

    b2_plus: int = Field(ge=0, description="Number of +1 entries in the diagonal form")
    b2_minus: int = Field(ge=0, description="Number of -1 entries in the diagonal form")

    @property
    def b2(self) -> int:
        return self.b2_plus + self.b2_minus

    @property
    def signature(self) -> int:
        return self.b2_plus - self.b2_minus

    @classmethod
    def from_rank_signature(cls, b2: int, signature: int | None = None) -> "IntersectionForm":
        """Split b2 by signature; the default is the positive definite form."""
        if b2 < 0:
            raise DomainError(f"b2 must be non-negative, got {b2}")
        signature = b2 if signature is None else signature
        if abs(signature) > b2 or (b2 + signature) % 2:
            raise DomainError(f"signature {signature} is impossible for b2 = {b2}")
        return cls(b2_plus=(b2 + signature) // 2, b2_minus=(b2 - signature) // 2)

    def label(self) -> str:
        return f"({self.b2_plus},{self.b2_minus})"


class RankTable(BaseModel):
    """k -> rk pi_k(M) (x) Q for 2 <= k <= max_degree, tagged with the route used."""

    model_config = ConfigDict(frozen=True)

    ranks: dict[int, int] = Field(description="Homotopy degree k -> rational rank")
    max_degree: int = Field(ge=2, description="Highest homotopy degree computed")
    method: RankMethod = Field(description="Route that produced the table")

    @field_validator("ranks")
    @classmethod
    def non_negative_ranks(cls, v: dict[int, int]) -> dict[int, int]:
        for k, rank in v.items():
            if k < 2:
                raise ValueError(f"rank tables start at pi_2, got k={k}")
            if rank < 0:
                raise ValueError(f"negative rank {rank} at k={k}")
        return dict(sorted(v.items()))

    def rows(self) -> list[dict[str, int]]:
        return [{"k": k, "rank": r} for k, r in self.ranks.items()]


class MethodComparison(BaseModel):
    form: IntersectionForm
    tables: dict[str, RankTable] = Field(default_factory=dict)
    agree: bool = True
    disagreements: list[int] = Field(default_factory=list, description="Degrees k that differ")
    notes: list[str] = Field(default_factory=list)


class CohomologyRing(BaseModel):
    """H*(M; R) = R[x_1..x_b2] / I with deg x_i = 2."""

    form: IntersectionForm
    generators: list[str]
    degree: int = 2
    relations: list[str]


_GROUP_PATTERN = re.compile(r"^\s*(SU|Spin|Sp|G2|F4|E6|E7|E8)\s*\(?\s*(\d*)\s*\)?\s*$", re.I)
_FAMILIES = {
    "su": "SU",
    "spin": "Spin",
    "sp": "Sp",
    "g2": "G2",
    "f4": "F4",
    "e6": "E6",
    "e7": "E7",
    "e8": "E8",
}


class SimpleGroup(BaseModel):
    """Compact simple simply connected Lie group."""

    model_config = ConfigDict(frozen=True)

    family: Literal["SU", "Spin", "Sp", "G2", "F4", "E6", "E7", "E8"]
    parameter: int | None = None

    @model_validator(mode="after")
    def check_parameter(self) -> "SimpleGroup":
        minimum = {"SU": 2, "Spin": 5, "Sp": 1}.get(self.family)
        if minimum is None:
            if self.parameter is not None:
                raise ValueError(f"{self.family} takes no parameter")
        elif self.parameter is None or self.parameter < minimum:
            raise ValueError(f"{self.family}(n) needs n >= {minimum}, got {self.parameter}")
        return self

    @classmethod
    def parse(cls, text: str) -> "SimpleGroup":
        """Accepts ``SU3``, ``SU(3)``, ``Spin10``, ``Sp2``, ``G2`` and friends."""
        match = _GROUP_PATTERN.match(text)
        if not match:
            raise DomainError(f"unknown group name {text!r}")
        family = _FAMILIES[match.group(1).lower()]
        digits = match.group(2)
        try:
            if family in ("SU", "Spin", "Sp"):
                return cls(family=family, parameter=int(digits) if digits else None)
            if digits:
                raise DomainError(f"unknown group name {text!r}")
            return cls(family=family)
        except ValueError as e:
            if isinstance(e, DomainError):
                raise
            raise DomainError(f"invalid group {text!r}: {e}") from e

    def label(self) -> str:
        return f"{self.family}({self.parameter})" if self.parameter is not None else self.family


class Space(StrEnum):
    GAUGE_GROUP = "gauge-group"
    BTILDE = "btilde"
    BSTAR = "bstar"
    LOOP_BTILDE = "loop-btilde"
    LOOP_BSTAR = "loop-bstar"

    @property
    def label(self) -> str:
        return {
            "gauge-group": "G^e",
            "btilde": "B~",
            "bstar": "B*",
            "loop-btilde": "Omega B~",
            "loop-bstar": "Omega B*",
        }[self.value]


class BundleContext(BaseModel):
    """A principal G-bundle over M, as far as the ring computations need it."""

    model_config = ConfigDict(frozen=True)

    group: SimpleGroup
    b2: int = Field(ge=0, description="Second Betti number of the base")
    form_parity: Parity = Field(default="unspecified", description="Parity of the form")
    c2_parity: Parity = Field(default="unspecified", description="Parity of c_2(P)")


class RingPresentation(BaseModel):
    """Free graded-commutative algebra: degree -> number of generators."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["exterior", "polynomial"]
    generators: dict[int, int] = Field(description="Degree -> generator count")
    label: str = Field(description="The space whose (co)homology this presents")

    @model_validator(mode="after")
    def parity_discipline(self) -> "RingPresentation":
        wanted = 1 if self.kind == "exterior" else 0
        for degree, count in self.generators.items():
            if degree < 1 or degree % 2 != wanted:
                raise ValueError(f"{self.kind} presentation with a degree-{degree} generator")
            if count < 1:
                raise ValueError(f"listed degree {degree} needs a positive count, got {count}")
        return self

    @property
    def total(self) -> int:
        return sum(self.generators.values())

    def rows(self) -> list[dict[str, Any]]:
        return [
            {"degree": d, "count": c, "kind": self.kind} for d, c in sorted(self.generators.items())
        ]


Pi1 = Literal["0", "Z2", "unknown"]


class ConnectivityReport(BaseModel):
    gauge_group_connected: Literal["yes", "no", "unknown"]
    pi1_btilde: Pi1
    pi1_bstar: Pi1
    notes: list[str] = Field(default_factory=list)


class DegreeComparison(BaseModel):
    loop_degree: int
    loop_count: int
    shifted_count: int
    agree: bool


class ConsistencyReport(BaseModel):
    """Loop-space counts versus cohomology counts shifted down by one."""

    context: BundleContext
    max_degree: int
    comparisons: dict[str, list[DegreeComparison]]
    mismatches: dict[str, list[int]]


class Query(BaseModel):
    command: Literal["ranks", "loops", "gauge", "check", "suspension"]
    parameters: dict[str, Any] = Field(default_factory=dict)
    output_format: Literal["table", "json"] = "table"


class ResultDocument(BaseModel):
    query: Query
    result: dict[str, Any] = Field(default_factory=dict)
    warnings: list[str] = Field(default_factory=list)
