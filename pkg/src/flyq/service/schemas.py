"""Request/response models for the HTTP API.

Circuits travel as the text interchange format; states come back as
[re, im] amplitude pairs in basis order, matching the JSON conventions of
the core package.
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field


class RunRequest(BaseModel):
    circuit: str = Field(description="circuit in the text format")
    shots: int = Field(default=0, ge=0)
    seed: int = 0
    strict: bool = Field(
        default=True,
        description="reject non-adjacent two-qubit gates instead of routing them",
    )


class RunResponse(BaseModel):
    num_qubits: int
    amplitudes: list[list[float]]
    counts: Optional[dict[str, int]] = None
    seed: int


class CurvesRequest(BaseModel):
    kind: Literal["step", "well"]
    n: int = Field(default=1, ge=1)
    v_min: float = 0.0
    v_max: float
    samples: int = Field(default=101, ge=1)


class CurvesResponse(BaseModel):
    csv: str
    rows: list[tuple[float, float]]


class CalibrateRequest(BaseModel):
    target: float = Field(description="target phase in radians")
    kind: Literal["step", "well"]
    n: int = Field(default=1, ge=1)
    energy_mev: Optional[float] = Field(
        default=None, description="incident energy for micron reporting"
    )
    mstar: float = Field(default=1.0, gt=0)


class CalibrateResponse(BaseModel):
    v_over_e: float
    resonance_width: float
    achieved_phase: float
    width_um: Optional[float] = None


class RouteRequest(BaseModel):
    circuit: str
    verify: bool = False
    tol: float = Field(default=1e-9, gt=0)


class RouteResponse(BaseModel):
    routed: str
    global_phase: float
    instructions: int
    verified: Optional[bool] = None
    distance: Optional[float] = None
    phase: Optional[float] = None


class VerifyGatesRequest(BaseModel):
    quick: bool = False


class BatteryRowModel(BaseModel):
    name: str
    passed: bool
    details: dict


class VerifyGatesResponse(BaseModel):
    passed: bool
    rows: list[BatteryRowModel]


class BudgetRequest(BaseModel):
    circuit: str
    lengths: Optional[dict[str, float]] = Field(
        default=None, description="per-kind gate lengths in microns"
    )
    l_phi: float = Field(default=30.0, gt=0)


class BudgetResponse(BaseModel):
    max_path: float
    l_phi: float
    ok: bool
    per_qubit: list[float]
