from pydantic import BaseModel, Field, field_validator
from typing import Dict, List, Optional

class ComplexPayload(BaseModel):
    """Schema for a complex given by its facets"""
    facets: List[List[str]]

    @field_validator("facets")
    @classmethod
    def facets_nonempty(cls, facets: List[List[str]]) -> List[List[str]]:
        for facet in facets:
            if not facet:
                raise ValueError("facets must be nonempty")
            if len(set(facet)) != len(facet):
                raise ValueError(f"duplicate vertex in facet {facet}")
        return facets

class WeightEntry(BaseModel):
    """Schema for one entry of a weights file"""
    face: str
    w: float

class SpectrumReport(BaseModel):
    """Schema for spectrum command output"""
    dim: int
    op: str
    weighting: str
    order: int
    eigenvalues: List[float]
    lambda_max: float
    top_multiplicity: Optional[int] = None
    has_top: Optional[bool] = None
    kernel_dimension: int
    reoriented: List[str] = Field(default_factory=list)

class BalanceWitnessPayload(BaseModel):
    """Schema for a switching or negative-cycle witness"""
    kind: str  # "switching" or "negative_cycle"
    switching: Optional[Dict[str, int]] = None
    negative_cycle: Optional[List[str]] = None

class ComponentBalance(BaseModel):
    """Schema for the balance of one B_i component"""
    high_faces: List[str]
    low_faces: List[str]
    balanced: bool
    witness: BalanceWitnessPayload

class BalanceReport(BaseModel):
    """Schema for balance command output"""
    dim: int
    components: List[ComponentBalance]
    balanced_count: int
    reoriented: List[str] = Field(default_factory=list)

class ComponentsReport(BaseModel):
    """Schema for path-component command output"""
    dim: int
    components: List[List[str]]
    path_connected: bool

class CircuitPayload(BaseModel):
    """Schema for one circuit"""
    top_faces: List[str]
    shared_faces: List[str]
    length: int
    classification: str
    forbidden: bool

class CircuitReport(BaseModel):
    """Schema for circuits command output"""
    dim: int
    max_len: int
    complete: bool
    circuits: List[CircuitPayload]
    has_forbidden: bool

class BettiReport(BaseModel):
    """Schema for betti command output, indexed from dimension -1"""
    reduced_betti: List[int]
    acyclic: bool
    euler_characteristic: int

class MatrixExport(BaseModel):
    """Schema for an exported matrix with face-label headers"""
    name: str
    dim: int
    rows: List[str]
    columns: List[str]
    entries: List[List[float]]

class VerificationReport(BaseModel):
    """Schema for one verification trial"""
    pipeline: str
    trial: int
    digest: str
    dim: Optional[int] = None
    lambda_max: Optional[float] = None
    top_multiplicity: Optional[int] = None
    balanced_components: Optional[int] = None
    forbidden_circuit: Optional[bool] = None
    circuits_complete: Optional[bool] = None
    checks: Dict[str, bool] = Field(default_factory=dict)
    agree: bool
    detail: Optional[str] = None

class VerificationSummary(BaseModel):
    """Schema for the closing line of a verification stream"""
    pipeline: str
    seed: int
    trials: int
    records: int
    disagreements: int
