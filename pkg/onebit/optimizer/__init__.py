# onebit/optimizer/__init__.py

from onebit.optimizer.models import OperatingPoint, ParetoPoint, SearchGrid, GridEvaluation
from onebit.optimizer.objectives import (
    efficiency_values,
    spectral_efficiency,
    energy_efficiency,
    weighted_product,
    weighted_product_objective,
    spectral_efficiency_general,
    energy_efficiency_general,
)
from onebit.optimizer.search import (
    evaluate_grid,
    optimize,
    prune_dominated,
    default_weights,
    pareto_sweep,
    benchmark_grid,
    benchmark_sweep,
)

__all__ = [
    "OperatingPoint",
    "ParetoPoint",
    "SearchGrid",
    "GridEvaluation",
    "efficiency_values",
    "spectral_efficiency",
    "energy_efficiency",
    "weighted_product",
    "weighted_product_objective",
    "spectral_efficiency_general",
    "energy_efficiency_general",
    "evaluate_grid",
    "optimize",
    "prune_dominated",
    "default_weights",
    "pareto_sweep",
    "benchmark_grid",
    "benchmark_sweep",
]
