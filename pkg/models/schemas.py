from fractions import Fraction
from typing import Annotated, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator, WithJsonSchema, field_validator


def _parse_rational(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError("rationals must be given as integers or strings like '-3/7'")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not an exact rational: {value!r}")
    raise ValueError(f"not an exact rational: {value!r}")


Rational = Annotated[
    Fraction,
    PlainValidator(_parse_rational),
    PlainSerializer(str, return_type=str),
    WithJsonSchema({"type": "string", "examples": ["-3/7"]}),
]
Combination = Dict[str, Rational]


def _check_torsion(values: List[int]) -> List[int]:
    for order in values:
        if order < 2:
            raise ValueError(f"torsion order must be an integer >= 2, got {order}")
    return values


# ----------------------------------------------------------------------------
# Presentations
# ----------------------------------------------------------------------------

class LieGroupData(BaseModel):
    model_config = ConfigDict(frozen=True)

    free_rank: int = Field(ge=0)
    torsion_factors: List[int] = []
    odd_degrees: List[int] = []

    @field_validator("torsion_factors")
    @classmethod
    def _torsion_orders(cls, values: List[int]) -> List[int]:
        return _check_torsion(values)

    @field_validator("odd_degrees")
    @classmethod
    def _odd_degrees(cls, values: List[int]) -> List[int]:
        for degree in values:
            if degree % 2 == 0 or degree < 3:
                raise ValueError(f"rational homotopy of a Lie group sits in odd degrees >= 3, got {degree}")
        return values

    @property
    def rank(self) -> int:
        return self.free_rank + len(self.odd_degrees)

    def degree_of(self, j: int) -> int:
        """|x_j| for 1 <= j <= r."""
        if j <= self.free_rank:
            return 1
        return self.odd_degrees[j - self.free_rank - 1]


class SphericalGenerator(BaseModel):
    name: str
    degree: int = Field(ge=2, description="|f|; the loop generator s⁻¹f sits in degree |f|-1")


class MonoidData(BaseModel):
    """π₁ data plus the spherical generators of H*(ΩG;Q)."""

    model_config = ConfigDict(frozen=True)

    free_rank: int = Field(ge=0)
    torsion_factors: List[int] = []
    spherical: List[SphericalGenerator] = []

    @field_validator("torsion_factors")
    @classmethod
    def _torsion_orders(cls, values: List[int]) -> List[int]:
        return _check_torsion(values)

    @field_validator("spherical")
    @classmethod
    def _distinct_names(cls, values: List[SphericalGenerator]) -> List[SphericalGenerator]:
        seen = set()
        for gen in values:
            if gen.name in seen:
                raise ValueError(f"duplicate spherical generator name {gen.name!r}")
            seen.add(gen.name)
        return values

    @classmethod
    def from_lie_group(cls, data: LieGroupData) -> "MonoidData":
        spherical = [
            SphericalGenerator(name=f"sx{data.free_rank + k + 1}", degree=d)
            for k, d in enumerate(data.odd_degrees)
        ]
        return cls(free_rank=data.free_rank, torsion_factors=data.torsion_factors, spherical=spherical)


class ManifoldGenerator(BaseModel):
    name: str
    degree: int = Field(le=-1, description="non-positive shifted degree")
    truncation: Optional[int] = Field(default=None, ge=2)


class ManifoldSpec(BaseModel):
    name: str = "M"
    dimension: Optional[int] = None
    generators: List[ManifoldGenerator] = []


class ActionClassSpec(BaseModel):
    name: str
    degree: int = Field(ge=1)
    images: Dict[str, str] = Field(default_factory=dict, description="source monomial -> image expression")


class LoopOperatorSpec(BaseModel):
    entries: Dict[str, str] = {}
    unlisted: Literal["zero", "error"] = "error"


class SamelsonEntry(BaseModel):
    left: str
    right: str
    value: Combination = {}


class SamelsonSpec(BaseModel):
    entries: List[SamelsonEntry] = []


# ----------------------------------------------------------------------------
# Model files (versioned, discriminated on `kind`)
# ----------------------------------------------------------------------------

class _ModelFileBase(BaseModel):
    schema_version: Literal[1] = 1
    name: str
    aliases: List[str] = []
    notes: str = ""


class LieGroupModelFile(_ModelFileBase):
    kind: Literal["lie_group"]
    group: LieGroupData
    samelson: Optional[SamelsonSpec] = None


class SphereActionModelFile(_ModelFileBase):
    kind: Literal["sphere_action"]
    which: Literal["S1", "S3"]
    manifold: ManifoldSpec
    action: List[ActionClassSpec] = []


class RationalActionModelFile(_ModelFileBase):
    kind: Literal["rational_action"]
    monoid: MonoidData
    manifold: ManifoldSpec
    action: List[ActionClassSpec] = []
    hur: Dict[str, Combination] = {}
    b_loop: Optional[LoopOperatorSpec] = None
    samelson: Optional[SamelsonSpec] = None


class HepworthModelFile(_ModelFileBase):
    kind: Literal["hepworth"]
    monoid: MonoidData
    manifold: ManifoldSpec
    action: List[ActionClassSpec] = []
    sigma: Dict[str, Combination] = {}
    b_loop: Optional[LoopOperatorSpec] = None


ModelFile = Annotated[
    Union[LieGroupModelFile, SphereActionModelFile, RationalActionModelFile, HepworthModelFile],
    Field(discriminator="kind"),
]


class CatalogEntry(BaseModel):
    name: str
    aliases: List[str] = []
    kind: str
    notes: str = ""


# ----------------------------------------------------------------------------
# Run configuration
# ----------------------------------------------------------------------------

class VerificationWindow(BaseModel):
    degree: int = Field(default=10, ge=1)
    group_range: int = Field(default=2, ge=0)
    max_cases: int = Field(default=4000, ge=1)
    seed: int = 0


Command = Literal["build", "apply-b", "bracket", "table", "verify", "decompose", "semidirect-check"]


class SignMutationSpec(BaseModel):
    sum: Literal["group", "poly"]
    position: int = Field(ge=1)


class RunConfig(BaseModel):
    command: Command
    model: str
    window: VerificationWindow = VerificationWindow()
    output_format: Literal["text", "structured"] = "text"
    a: Optional[str] = None
    b: Optional[str] = None
    tensor: Optional[str] = None
    mutate: Optional[SignMutationSpec] = None


# ----------------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------------

class Counterexample(BaseModel):
    inputs: List[str]
    lhs: str
    rhs: str


class IdentityReport(BaseModel):
    name: str
    checked: int = 0
    passed: int = 0
    failed: int = 0
    sampled: bool = False
    counterexample: Optional[Counterexample] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


class SuiteReport(BaseModel):
    model: str
    rule: str
    window: VerificationWindow
    sections: List[IdentityReport] = []

    @property
    def ok(self) -> bool:
        return all(section.ok for section in self.sections)


class ModelSummary(BaseModel):
    model: str
    rule: str
    generators: List[Dict[str, Union[str, int]]]
    window_basis_size: int


class TableRow(BaseModel):
    input: str
    output: str


class TableReport(BaseModel):
    model: str
    rule: str
    rows: List[TableRow] = []


class ApplyBResult(BaseModel):
    model: str
    input: str
    output: str


class BracketResult(BaseModel):
    model: str
    a: str
    b: str
    output: str


class DecompositionReport(BaseModel):
    group: str
    factors: List[str] = []
    checked: int = 0
    matched: int = 0
    mismatch: Optional[Counterexample] = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None and self.checked == self.matched


# ----------------------------------------------------------------------------
# API payloads
# ----------------------------------------------------------------------------

class ModelRequest(BaseModel):
    model: str
    tensor: Optional[str] = None


class ApplyBRequest(ModelRequest):
    a: str


class BracketRequest(ModelRequest):
    a: str
    b: str


class WindowedRequest(ModelRequest):
    window: Optional[VerificationWindow] = None
