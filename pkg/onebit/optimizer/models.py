# onebit/optimizer/models.py

from typing import List, Optional, Tuple

import numpy as np
from pydantic import ConfigDict, Field, model_validator

from backend.config.settings import settings
from backend.models.base import CustomModel
from onebit.channel_model.models import SystemConfig
from onebit.errors import DomainError
from onebit.transceive.models import Processing


class OperatingPoint(CustomModel):
    """Decision variables (K, tau0, rho_u) of the EE/SE tradeoff"""

    model_config = ConfigDict(frozen=True)

    K: int = Field(..., ge=1)
    tau0: int = Field(..., ge=1)
    rho_u: float = Field(..., gt=0)

    @property
    def tau(self) -> int:
        return self.tau0 * self.K

    @property
    def rho_db(self) -> float:
        return float(10 * np.log10(self.rho_u))

    def check_against(self, config: SystemConfig, processing: Processing) -> None:
        if self.K > config.K_max:
            raise DomainError(f"K={self.K} exceeds K_max={config.K_max}")
        if self.tau >= config.T:
            raise DomainError(f"tau={self.tau} must be below T={config.T}")
        if Processing(processing) == Processing.ZF and self.K > config.M - 2:
            raise DomainError(f"ZF needs K <= M - 2, got K={self.K}, M={config.M}")


class ParetoPoint(CustomModel):
    """(SE, EE) pair and the operating point that produced it"""

    se: float = Field(..., ge=0)
    ee: float = Field(..., ge=0)
    point: OperatingPoint
    weights: Tuple[float, float]
    objective: Optional[float] = None


class SearchGrid(CustomModel):
    """Candidate values per decision variable, each sorted ascending"""

    K_values: np.ndarray
    tau0_values: np.ndarray
    rho_values: np.ndarray

    @model_validator(mode="after")
    def check_sorted(self) -> "SearchGrid":
        for name in ("K_values", "tau0_values", "rho_values"):
            values = getattr(self, name)
            if values.ndim != 1:
                raise ValueError(f"{name} must be a vector")
            if values.size > 1 and np.any(np.diff(values) <= 0):
                raise ValueError(f"{name} must be strictly increasing")
        return self

    @property
    def shape(self) -> Tuple[int, int, int]:
        return (self.K_values.size, self.tau0_values.size, self.rho_values.size)

    @staticmethod
    def rho_grid_db(
        min_db: Optional[float] = None, max_db: Optional[float] = None, step_db: Optional[float] = None
    ) -> np.ndarray:
        min_db = settings.RHO_GRID_MIN_DB if min_db is None else min_db
        max_db = settings.RHO_GRID_MAX_DB if max_db is None else max_db
        step_db = settings.RHO_GRID_STEP_DB if step_db is None else step_db
        count = int(np.floor((max_db - min_db) / step_db + 1e-9)) + 1
        return min_db + step_db * np.arange(count)

    @classmethod
    def default(
        cls,
        config: SystemConfig,
        processing: Processing,
        rho_db: Optional[np.ndarray] = None,
        tau0_max: Optional[int] = None,
    ) -> "SearchGrid":
        k_upper = config.K_max
        if Processing(processing) == Processing.ZF:
            k_upper = min(k_upper, config.M - 2)
        tau0_max = settings.TAU0_MAX if tau0_max is None else tau0_max
        rho_db = cls.rho_grid_db() if rho_db is None else np.asarray(rho_db, dtype=float)
        return cls(
            K_values=np.arange(1, max(k_upper, 0) + 1),
            tau0_values=np.arange(1, tau0_max + 1),
            rho_values=10.0 ** (rho_db / 10.0),
        )

    @classmethod
    def single(cls, point: OperatingPoint) -> "SearchGrid":
        return cls(
            K_values=np.array([point.K]),
            tau0_values=np.array([point.tau0]),
            rho_values=np.array([point.rho_u]),
        )


class GridEvaluation(CustomModel):
    """SE / EE over a SearchGrid; infeasible cells are masked out"""

    grid: SearchGrid
    se: np.ndarray
    ee: np.ndarray
    feasible: np.ndarray


WeightList = List[Tuple[float, float]]
