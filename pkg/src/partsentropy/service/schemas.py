"""Pydantic request/response models for the analysis service.

Every analysis returns a ``Report`` whose ``body`` carries all inputs
echoed back plus the results; ``generated_at`` stays outside the body so
identical requests produce byte-identical bodies.
"""

from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

SCHEMA_VERSION = 1


class BodySpec(BaseModel):
    """Geometry document: disk/ball by radius, polygon/polytope by vertices."""

    model_config = ConfigDict(extra="forbid")

    dim: Literal[2, 3]
    kind: Literal["disk", "polygon", "ball", "polytope"]
    radius: float | None = None
    vertices: list[list[float]] | None = None
    faces: list[list[int]] | None = None

    @model_validator(mode="after")
    def _fields_match_kind(self):
        if self.kind in ("disk", "ball"):
            if self.radius is None:
                raise ValueError(f"{self.kind} requires a radius")
        elif self.vertices is None:
            raise ValueError(f"{self.kind} requires vertices")
        if self.kind == "polytope" and self.faces is None:
            raise ValueError("polytope requires faces")
        return self

    def to_dict(self) -> dict:
        return self.model_dump(exclude_none=True)


class GroupSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["cyclic", "dihedral", "tetrahedral", "octahedral", "icosahedral"]
    n: int | None = Field(default=None, ge=1)


class PdfSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["discrete", "grid"]
    probs: list[float] | None = None
    nodes: list[list[float]] | None = None
    weights: list[float] | None = None
    values: list[float] | None = None
    domain: str | None = None


class PkfRequest(BaseModel):
    a: BodySpec
    b: BodySpec


class ContainmentRequest(BaseModel):
    a: BodySpec  # moving part
    b: BodySpec  # container


class McRequest(BaseModel):
    mode: Literal["collision", "containment"]
    a: BodySpec  # moving body
    b: BodySpec  # fixed body / container
    n_samples: int = Field(ge=1000)
    seed: int
    workers: int = Field(default=1, ge=1)
    convergence: list[int] | None = None


class PartsEntropyRequest(BaseModel):
    part: BodySpec
    container: BodySpec
    obstacle: BodySpec | None = None
    method: Literal["analytic", "mc"] = "analytic"
    assume_no_jamming: bool = False
    n_samples: int | None = Field(default=None, ge=1000)
    seed: int | None = None
    workers: int = Field(default=1, ge=1)


class EntropyRequest(BaseModel):
    pdf: PdfSpec
    units: Literal["nats", "bits"] = "nats"


class TheoremsRequest(BaseModel):
    group: GroupSpec
    subgroup: str = Field(description="cyclic subgroup label such as 'c4'")
    subgroup2: str | None = None
    variants: list[Literal["coset", "double_coset", "nested"]] | None = None
    n_pdfs: int = Field(default=1000, ge=1)
    seed: int


class SymmetrizeRequest(BaseModel):
    group: GroupSpec
    subgroup: str
    pdf: list[float] | None = None
    seed: int | None = None


class DosrRequest(BaseModel):
    system_complexity: float = Field(ge=0)
    part_complexities: list[float]
    aggregation: Literal["max", "mean"] = "max"


class GenerationsRequest(BaseModel):
    shape: BodySpec
    group: GroupSpec
    noise_sigma: float = Field(ge=0)
    generations: int = Field(ge=1)
    trials: int = Field(ge=1)
    corrected: bool = False
    seed: int
    workers: int = Field(default=1, ge=1)


class McEstimateModel(BaseModel):
    value: float
    std_error: float
    ci_low: float
    ci_high: float
    n_samples: int
    seed: int
    hit_count: int
    domain_volume: float


class PkfBody(BaseModel):
    analysis: Literal["pkf"] = "pkf"
    dim: int
    a: BodySpec
    b: BodySpec
    functionals_a: dict[str, float]
    functionals_b: dict[str, float]
    value: float


class ContainmentBody(BaseModel):
    analysis: Literal["containment"] = "containment"
    dim: int
    part: BodySpec
    container: BodySpec
    value: float
    warning: bool
    note: str | None = None


class ConvergenceRow(BaseModel):
    n: int
    estimate: float
    std_error: float


class McBody(BaseModel):
    analysis: Literal["mc"] = "mc"
    mode: Literal["collision", "containment"]
    a: BodySpec
    b: BodySpec
    n_samples: int
    seed: int
    estimate: McEstimateModel
    analytic_value: float
    analytic_negative: bool
    ci_contains_analytic: bool
    warning: bool
    note: str | None = None
    convergence: list[ConvergenceRow] | None = None


class PartsEntropyBody(BaseModel):
    analysis: Literal["parts_entropy"] = "parts_entropy"
    status: Literal["ok", "infeasible"]
    method: Literal["analytic", "mc"]
    part: BodySpec
    container: BodySpec
    obstacle: BodySpec | None = None
    entropy_nats: float | None = None
    entropy_bits: float | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    free_volume: float | None = None
    containment_value: float | None = None
    collision_value: float | None = None
    estimate: McEstimateModel | None = None
    warning: bool = False
    note: str | None = None
    diagnostics: dict[str, float] | None = None


class EntropyBody(BaseModel):
    analysis: Literal["entropy"] = "entropy"
    kind: Literal["discrete", "grid"]
    size: int
    value_nats: float
    value_bits: float
    units: Literal["nats", "bits"]


class TheoremVariantResult(BaseModel):
    variant: Literal["coset", "double_coset", "nested"]
    min_slack: float
    mean_slack: float


class TheoremsBody(BaseModel):
    analysis: Literal["theorems"] = "theorems"
    group: GroupSpec
    group_order: int
    subgroup: str
    subgroup_ids: list[int]
    subgroup2: str | None = None
    subgroup2_ids: list[int] | None = None
    n_pdfs: int
    seed: int
    variants: list[TheoremVariantResult]
    overall_min_slack: float
    all_nonnegative: bool


class SymmetrizeBody(BaseModel):
    analysis: Literal["symmetrize"] = "symmetrize"
    group: GroupSpec
    group_order: int
    subgroup: str
    subgroup_ids: list[int]
    seed: int | None = None
    pdf_in: list[float]
    pdf_out: list[float]
    entropy_before_nats: float
    entropy_after_nats: float
    entropy_nondecreasing: bool


class DosrBody(BaseModel):
    analysis: Literal["dosr"] = "dosr"
    system_complexity: float
    part_complexities: list[float]
    aggregation: Literal["max", "mean"]
    aggregate_part_complexity: float
    value: float


class GenerationRow(BaseModel):
    generation: int
    mean_deviation: float
    se_deviation: float
    mean_sq_deviation: float
    se_sq_deviation: float


class GenerationsBody(BaseModel):
    analysis: Literal["generations"] = "generations"
    shape: BodySpec
    group: GroupSpec
    noise_sigma: float
    generations: int
    trials: int
    corrected: bool
    seed: int
    per_generation: list[GenerationRow]


ReportBody = Union[
    PkfBody,
    ContainmentBody,
    McBody,
    PartsEntropyBody,
    EntropyBody,
    TheoremsBody,
    SymmetrizeBody,
    DosrBody,
    GenerationsBody,
]


class Report(BaseModel):
    """Envelope for every analysis result; only ``body`` is determinism-bearing."""

    schema_version: int = SCHEMA_VERSION
    generated_at: str
    workers: int | None = None
    body: ReportBody = Field(discriminator="analysis")
