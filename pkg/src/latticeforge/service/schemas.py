"""Request and response models for the session API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class CreateSessionRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    algorithm: Optional[dict] = None


class ReplaceGridRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    algorithm: dict


class SaveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    path: Optional[str] = None


class MeasureRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertex: int
    axis: Literal["x", "y", "z"]
    sign: Literal["+", "-"] = "+"
    b0: Optional[int] = None


class LocalComplementRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertex: int


class MinimizeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    node_budget: int = Field(default=200_000, ge=1, le=5_000_000)


class BindingIn(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["rotx", "roty", "rotz"]
    row: int
    col: int
    theta: float


class CompileRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    bindings: list[BindingIn] = Field(default_factory=list)


class SubmitRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    qasm: str
    endpoint: Optional[str] = None
    json_wrap: bool = False


class MetricsOut(BaseModel):
    min_lattice: tuple[int, int]
    qubit_count: int
    t_count: int


class SessionStateOut(BaseModel):
    session_id: str
    name: str
    version: int
    prepared: bool
    metrics: MetricsOut
    lattice: dict


class MeasurementRecordOut(BaseModel):
    vertex: int
    axis: str
    sign: str
    b0: Optional[int]
    corrections: dict[int, str]


class MeasureResponse(BaseModel):
    record: MeasurementRecordOut
    version: int
    lattice: dict


class LocalComplementResponse(BaseModel):
    vertex: int
    version: int
    lattice: dict


class MinimizeResponse(BaseModel):
    lc_sequence: list[int]
    complete: bool
    cz_count: int
    version: int
    lattice: dict


class RotationSiteOut(BaseModel):
    kind: str
    row: int
    col: int


class CompileResponse(BaseModel):
    qasm: str
    qubits: int


class SubmissionResultOut(BaseModel):
    endpoint: str
    status: int
    body: str
    ok: bool
    warning: Optional[str] = None


class HistoryEventOut(BaseModel):
    seq: int
    op: str
    args: dict
