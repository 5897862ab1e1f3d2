"""
Pydantic payloads for everything the command line reads or prints.
"""

from typing import Any, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from tspread.config import settings
from tspread.modules.cm_classifier import CmVerdict
from tspread.modules.homological import BettiTable, InvariantReport
from tspread.modules.lexseg_model import LexsegmentSpec, SegmentKind
from tspread.modules.monomial_core import SquarefreeMonomial
from tspread.modules.primary_decomp import PrimeDecomposition

# -----------------------------------------------------------
#                SPEC
# -----------------------------------------------------------

class SpecPayload(BaseModel):
    n: int
    d: int
    t: int
    kind: SegmentKind = SegmentKind.ARBITRARY
    u: list[int]
    v: list[int]

    @classmethod
    def from_spec(cls, spec: LexsegmentSpec) -> "SpecPayload":
        return cls(n=spec.n, d=spec.d, t=spec.t, kind=spec.kind, u=spec.u.to_json(), v=spec.v.to_json())

    def to_spec(self) -> LexsegmentSpec:
        u = SquarefreeMonomial.from_indices(self.u, self.n)
        v = SquarefreeMonomial.from_indices(self.v, self.n)
        return LexsegmentSpec(self.n, self.d, self.t, u, v, self.kind)


# -----------------------------------------------------------
#                RESULTS
# -----------------------------------------------------------

class DecompositionPayload(BaseModel):
    spec: SpecPayload
    primes: list[list[int]]
    provenance: list[str]
    heights: list[int]
    unmixed: bool
    notes: dict[str, Any] = Field(default_factory=dict)
    verified: Optional[bool] = None

    @classmethod
    def build(cls, spec: LexsegmentSpec, found: PrimeDecomposition) -> "DecompositionPayload":
        return cls(spec=SpecPayload.from_spec(spec), primes=[list(p) for p in found.supports],
                   provenance=[tag.value for tag in found.provenance], heights=found.heights,
                   unmixed=found.is_unmixed, notes=dict(found.notes))


class BettiRow(BaseModel):
    i: int
    j: int
    beta: int


class BettiPayload(BaseModel):
    spec: SpecPayload
    source: str
    rows: list[BettiRow]
    totals: list[int]
    linear: bool
    verified: Optional[bool] = None

    @classmethod
    def build(cls, spec: LexsegmentSpec, table: BettiTable, source: str) -> "BettiPayload":
        return cls(spec=SpecPayload.from_spec(spec), source=source,
                   rows=[BettiRow(**row) for row in table.rows()],
                   totals=table.totals(), linear=table.is_linear)


class InvariantPayload(BaseModel):
    spec: SpecPayload
    pd_I: int
    pd_SmodI: int
    depth: int
    dim: int
    height: int
    is_cm: bool
    sources: dict[str, str]

    @classmethod
    def build(cls, spec: LexsegmentSpec, report: InvariantReport) -> "InvariantPayload":
        return cls(spec=SpecPayload.from_spec(spec), pd_I=report.pd_I, pd_SmodI=report.pd_SmodI,
                   depth=report.depth_SmodI, dim=report.dim_SmodI, height=report.height,
                   is_cm=report.is_cm, sources=dict(report.source))


class VerdictPayload(BaseModel):
    spec: SpecPayload
    is_cm: bool
    branch: str
    witness: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def build(cls, verdict: CmVerdict) -> "VerdictPayload":
        return cls(spec=SpecPayload.from_spec(verdict.spec), is_cm=verdict.is_cm,
                   branch=verdict.branch.value, witness=dict(verdict.witness))


# -----------------------------------------------------------
#                SWEEPS
# -----------------------------------------------------------

class SweepConfig(BaseModel):
    """A box of (n, d, t) values; an empty range is allowed and yields no specs."""

    n_min: int = 1
    n_max: int = 7
    d_min: int = 1
    d_max: int = 3
    t_min: int = 1
    t_max: int = 2
    kinds: list[SegmentKind] = Field(default_factory=lambda: list(SegmentKind))
    oracle: bool = True
    workers: int = Field(default_factory=lambda: settings.SWEEP_WORKERS)
    output: Optional[str] = None

    @field_validator("n_min", "d_min", "t_min")
    @classmethod
    def positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("range lower bounds must be at least 1")
        return value

    @field_validator("workers")
    @classmethod
    def at_least_one_worker(cls, value: int) -> int:
        if value < 1:
            raise ValueError("workers must be at least 1")
        return value

    @model_validator(mode="after")
    def within_caps(self) -> "SweepConfig":
        if self.n_max > settings.FORMULA_CAP:
            raise ValueError(f"n_max={self.n_max} exceeds the formula cap {settings.FORMULA_CAP}")
        if self.oracle and self.n_max >= self.n_min and self.n_max > settings.ORACLE_CAP:
            raise ValueError(f"n_max={self.n_max} exceeds the oracle cap {settings.ORACLE_CAP}; "
                             "lower it or pass --no-oracle")
        return self


class SweepRecord(BaseModel):
    spec: SpecPayload
    kind: SegmentKind
    is_completely: Optional[bool] = None
    branch: Optional[str] = None
    checks: dict[str, str] = Field(default_factory=dict)
    details: dict[str, Any] = Field(default_factory=dict)
    trace: Optional[list[str]] = None
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None or any(outcome == "fail" for outcome in self.checks.values())
