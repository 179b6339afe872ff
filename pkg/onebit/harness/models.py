# onebit/harness/models.py

from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import Field, field_validator

from backend.models.base import CustomModel
from onebit.channel_model.models import SystemConfig
from onebit.transceive.models import Processing


class ExperimentName(str, Enum):
    FIG2 = "fig2"
    FIG3 = "fig3"
    PARETO = "pareto"
    OPTIMAL_K = "optimal-k"
    OPTIMAL_TAU0 = "optimal-tau0"
    OPTIMAL_RHO = "optimal-rho"
    DUALITY_CHECK = "duality-check"
    VALIDATION = "validation"


class SweepOverrides(CustomModel):
    """Sweep lists that replace the per-experiment defaults"""

    M_values: Optional[List[int]] = None
    rho_db: Optional[List[float]] = None
    weights: Optional[List[Tuple[float, float]]] = None
    total_power_db: Optional[float] = None
    T: Optional[int] = None
    samples: Optional[int] = None

    @field_validator("M_values")
    @classmethod
    def positive_arrays(cls, v):
        if v is not None and (not v or min(v) < 1):
            raise ValueError("M_values must be a nonempty list of positive integers")
        return v


class ExperimentSpec(CustomModel):
    """One harness invocation"""

    name: ExperimentName
    config: SystemConfig
    overrides: SweepOverrides = Field(default_factory=SweepOverrides)
    trials: int = Field(..., ge=1)
    output_dir: Path
    processing: List[Processing] = Field(default_factory=lambda: [Processing.MRC, Processing.ZF])
    max_workers: int = Field(1, ge=1)


class ExperimentResult(CustomModel):
    """What a run wrote and whether its built-in checks held"""

    name: ExperimentName
    files: List[str]
    passed: bool = True
    summary: Dict[str, float] = Field(default_factory=dict)
    timings: Dict[str, float] = Field(default_factory=dict)
