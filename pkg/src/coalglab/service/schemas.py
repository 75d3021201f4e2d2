"""Pydantic request and response models for the coalglab service.

The payloads mirror the JSON file formats: coalgebras as sparse
structure-constant quadruples with exact scalar strings, presentations as
coefficient arrays over a tagged ring.  Every command responds with a
Report carrying the command name, tool version, boolean verdict, structured
details, warnings, and the seed used by any randomized check.
"""
from __future__ import annotations

from typing import Any, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field


class GFTag(BaseModel):
    model_config = ConfigDict(extra="forbid")

    GF: int


FieldTag = Union[Literal["Q"], GFTag]
RingTag = Union[Literal["Q", "quaternion"], GFTag]


class CoalgebraPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    field: FieldTag = "Q"
    dim: int
    delta: List[Tuple[int, int, int, str]]
    eps: List[str]
    basis_names: Optional[List[str]] = None

    def as_file_dict(self) -> dict:
        data = {
            "field": "Q" if self.field == "Q" else {"GF": self.field.GF},
            "dim": self.dim,
            "delta": [list(q) for q in self.delta],
            "eps": list(self.eps),
        }
        if self.basis_names is not None:
            data["basis_names"] = list(self.basis_names)
        return data


class PresentationPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ring: RingTag
    precision: Optional[int] = None
    generators: int
    relations: List[List[List[Any]]]

    def as_file_dict(self) -> dict:
        ring = self.ring if isinstance(self.ring, str) else {"GF": self.ring.GF}
        data = {
            "ring": ring,
            "generators": self.generators,
            "relations": self.relations,
        }
        if self.precision is not None:
            data["precision"] = self.precision
        return data


class ConstructRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["kn", "quat-cn", "group-likes"]
    n: int
    field: FieldTag = "Q"


class CoalgebraRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    coalgebra: CoalgebraPayload
    seed: int = 0


class SplitRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    presentation: PresentationPayload
    precision: Optional[int] = None
    seed: int = 0


class Report(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: str
    version: str
    verdict: bool
    details: dict
    warnings: List[str] = Field(default_factory=list)
    seed: Optional[int] = None


class ErrorBody(BaseModel):
    error: str
    message: str
