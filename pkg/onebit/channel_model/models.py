# onebit/channel_model/models.py

"""
Scenario parameters and per-drop channel state.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
from pydantic import ConfigDict, Field, ValidationError, field_validator, model_validator

from backend.config.scenario_loader import ScenarioLoader
from backend.models.base import CustomModel
from onebit.errors import ConfigurationError, DimensionError

logger = logging.getLogger(__name__)


class SystemConfig(CustomModel):
    """All scenario parameters of a single-cell one-bit massive MIMO system"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    M: int = Field(..., gt=0, description="Number of BS antennas")
    K: int = Field(..., gt=0, description="Active terminals")
    K_max: int = Field(0, ge=0, description="Terminal pool size; 0 means K_max = K")
    tau0: int = Field(1, gt=0, description="Relative pilot length, tau = tau0 * K")
    T: int = Field(..., gt=0, description="Coherence interval in symbols")
    rho_u: float = Field(..., gt=0, description="Operating power (linear)")
    gamma: float = Field(0.5, gt=0, lt=1, description="Uplink fraction of the data interval")
    r_min: float = Field(100.0, gt=0, description="Exclusion radius in meters")
    r_max: float = Field(500.0, gt=0, description="Cell radius in meters")
    d_bar: float = Field(10 ** 0.8, gt=0, description="Non-logarithmic shadowing value")
    kappa: float = Field(3.8, gt=0, description="Path-loss exponent")
    seed: int = Field(0, ge=0, description="Master RNG seed")

    @model_validator(mode="before")
    @classmethod
    def default_pool_size(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("K_max"):
            data = dict(data)
            data["K_max"] = data.get("K")
        return data

    @field_validator("rho_u", "r_min", "r_max", "d_bar", "kappa")
    @classmethod
    def finite(cls, v: float) -> float:
        if not np.isfinite(v):
            raise ValueError("must be finite")
        return v

    @model_validator(mode="after")
    def check_consistency(self) -> "SystemConfig":
        if self.K > self.K_max:
            raise ValueError(f"K={self.K} exceeds terminal pool K_max={self.K_max}")
        if self.tau >= self.T:
            raise ValueError(
                f"pilot length tau = tau0*K = {self.tau} must be below T={self.T}"
            )
        if self.r_min >= self.r_max:
            raise ValueError(f"r_min={self.r_min} must be below r_max={self.r_max}")
        return self

    @property
    def tau(self) -> int:
        return self.tau0 * self.K

    @property
    def data_fraction(self) -> float:
        """(T - tau) / T, the share of the coherence interval carrying data"""
        return (self.T - self.tau) / self.T

    def replace(self, **changes: Any) -> "SystemConfig":
        """Validated copy with some fields changed."""
        data = self.model_dump()
        if "K" in changes and "K_max" not in changes:
            data["K_max"] = max(self.K_max, changes["K"])
        data.update(changes)
        return type(self).from_dict(data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SystemConfig":
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid system config: {e}") from e

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SystemConfig":
        """Load a config document (JSON or YAML); unknown keys are rejected."""
        try:
            data = ScenarioLoader().load(path)
        except (OSError, ValueError) as e:
            raise ConfigurationError(f"Could not read config {path}: {e}") from e
        config = cls.from_dict(data)
        logger.info(f"Loaded config from {path}: M={config.M}, K={config.K}, tau={config.tau}, T={config.T}")
        return config


class UserDrop(CustomModel):
    """Terminal positions and large-scale fading for one drop"""

    distances: np.ndarray
    betas: np.ndarray

    @model_validator(mode="after")
    def check_shapes(self) -> "UserDrop":
        if self.distances.shape != self.betas.shape or self.distances.ndim != 1:
            raise DimensionError(
                f"distances {self.distances.shape} and betas {self.betas.shape} must be equal-length vectors"
            )
        return self

    @property
    def K(self) -> int:
        return self.distances.shape[0]


class ChannelRealization(CustomModel):
    """Fast fading H, physical channel G and effective channel G_eff (all M x K)"""

    H: np.ndarray
    G: np.ndarray
    G_eff: np.ndarray

    @model_validator(mode="after")
    def check_shapes(self) -> "ChannelRealization":
        if not (self.H.shape == self.G.shape == self.G_eff.shape) or self.H.ndim != 2:
            raise DimensionError("H, G and G_eff must be M x K matrices of equal shape")
        return self

    @property
    def M(self) -> int:
        return self.H.shape[0]

    @property
    def K(self) -> int:
        return self.H.shape[1]
