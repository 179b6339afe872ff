# onebit/duality/__init__.py

from onebit.duality.models import DualityProblem, DualitySolution, DualityReport
from onebit.duality.solver import (
    build_D,
    build_Psi,
    spectral_radius,
    solve_downlink_powers,
    solve_uplink_powers,
    solve,
    duality_trial,
    duality_roundtrip,
)

__all__ = [
    "DualityProblem",
    "DualitySolution",
    "DualityReport",
    "build_D",
    "build_Psi",
    "spectral_radius",
    "solve_downlink_powers",
    "solve_uplink_powers",
    "solve",
    "duality_trial",
    "duality_roundtrip",
]
