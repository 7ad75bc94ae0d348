from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

Command = Literal["invariants", "els-check", "gamma", "surface", "pair"]

# Number of quartics each command takes
ARITY = {"invariants": 1, "els-check": 1, "gamma": 3, "surface": 3, "pair": 3}


class TripleFile(BaseModel):
    """Input document: quartics as lists of five exact rational strings"""
    quartics: List[List[str]]

    @field_validator("quartics")
    @classmethod
    def five_coefficients(cls, value):
        for q in value:
            if len(q) != 5:
                raise ValueError(f"a quartic needs 5 coefficients, got {len(q)}")
        return value


class JobSpec(BaseModel):
    command: Command
    quartics: List[List[str]]
    precision_ceiling: Optional[int] = None
    verbose: bool = False
    output: Optional[str] = None
    config: Optional[str] = None


class PointReport(BaseModel):
    x: str
    z: str
    precision: Optional[int] = None  # None at the real place


class PlaceReport(BaseModel):
    place: str
    point: PointReport
    gamma_value: str
    gamma_class: str
    symbol: int


class SolubilityReport(BaseModel):
    place: str
    soluble: bool


class Report(BaseModel):
    command: Command
    status: Literal["ok", "invalid", "error"] = "ok"
    reason: Optional[str] = None
    inputs: List[List[str]] = Field(default_factory=list)
    I: Optional[str] = None
    J: Optional[str] = None
    Delta: Optional[str] = None
    m: Optional[List[str]] = None  # [c0, c1, c2], ascending in phi
    m_choices: int = 0
    alpha1: Optional[List[str]] = None
    beta1: Optional[List[str]] = None
    gamma1: Optional[List[str]] = None  # [A, B, C] for A x^2 + B xz + C z^2
    surface: Optional[List[str]] = None  # 27 coefficients in (i, j, k) order
    solubility: List[SolubilityReport] = Field(default_factory=list)
    places: List[PlaceReport] = Field(default_factory=list)
    value: Optional[str] = None
    shortcut: bool = False
