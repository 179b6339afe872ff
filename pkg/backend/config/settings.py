# backend/config/settings.py

from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Optional


class Settings(BaseSettings):
    """Process-wide tunables for simulations and experiment runs"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "One-Bit Massive MIMO Toolkit"
    APP_VERSION: str = "0.3.0"
    ENVIRONMENT: str = "development"  # development, test, production

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_TO_CONSOLE: bool = True
    LOG_COLORED_OUTPUT: bool = True

    # Linear algebra guards
    ZF_CONDITION_LIMIT: float = 1e12
    ZF_MAX_REDRAWS: int = 25
    ARCSIN_CLAMP_TOLERANCE: float = 1e-12
    EXACT_QNOISE_MAX_DIM: int = 4096
    EXACT_DATA_COVARIANCE_MAX_M: int = 512
    EXACT_TRAINING_CROSSCHECK_MAX_DIM: int = 512

    # Duality feasibility
    SPECTRAL_RADIUS_TOLERANCE: float = 1e-6
    POWER_ITERATION_MAX_STEPS: int = 500

    # Optimizer grid
    RHO_GRID_MIN_DB: float = -30.0
    RHO_GRID_MAX_DB: float = 10.0
    RHO_GRID_STEP_DB: float = 0.5
    TAU0_MAX: int = 8

    # Experiments
    DEFAULT_TRIALS: int = 200
    FIG3_REALIZATIONS: int = 500
    MAX_WORKERS: int = 1

    # Paths
    OUTPUT_DIR: str = "results"
    SCENARIOS_DIR: str = "scenarios"

    def validate_grid(self):
        """Validate that the operating-power grid is well formed"""
        if self.RHO_GRID_STEP_DB <= 0:
            raise ValueError("RHO_GRID_STEP_DB must be positive")
        if self.RHO_GRID_MAX_DB < self.RHO_GRID_MIN_DB:
            raise ValueError(
                f"RHO_GRID_MAX_DB ({self.RHO_GRID_MAX_DB}) is below "
                f"RHO_GRID_MIN_DB ({self.RHO_GRID_MIN_DB})"
            )
        if self.TAU0_MAX < 1:
            raise ValueError("TAU0_MAX must be at least 1")


settings = Settings()
settings.validate_grid()
