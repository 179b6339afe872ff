# onebit/optimizer/search.py

"""
Weighted-product grid search over (K, tau0, rho_u) and Pareto sweeps.

Cells are laid out K-major, then tau0, then rho_u, all ascending, so
np.argmax picks the smallest K, then tau0, then rho_u among ties.
"""

import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from onebit.channel_model.models import SystemConfig
from onebit.errors import DomainError
from onebit.frontend.models import FrontendKind
from onebit.optimizer.models import GridEvaluation, OperatingPoint, ParetoPoint, SearchGrid
from onebit.optimizer.objectives import efficiency_values, weighted_product
from onebit.transceive.models import Processing

logger = logging.getLogger(__name__)


def feasibility_mask(config: SystemConfig, processing: Processing, grid: SearchGrid) -> np.ndarray:
    K = grid.K_values[:, None, None]
    tau0 = grid.tau0_values[None, :, None]
    rho = grid.rho_values[None, None, :]
    feasible = (K * tau0 < config.T) & (K <= config.K_max) & (rho > 0)
    if processing == Processing.ZF:
        feasible &= K <= config.M - 2
    return np.broadcast_to(feasible, grid.shape)


def evaluate_grid(
    config: SystemConfig,
    processing: Union[Processing, str],
    grid: SearchGrid,
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> GridEvaluation:
    """SE and EE on every grid cell (zeros where infeasible)."""
    processing = Processing(processing)
    feasible = feasibility_mask(config, processing, grid)

    # ZF closed form is undefined where K > M - 2, evaluate those cells at K = 1
    K = np.where(feasible, grid.K_values[:, None, None], 1)
    se, ee = efficiency_values(
        config,
        processing,
        K,
        grid.tau0_values[None, :, None],
        grid.rho_values[None, None, :],
        frontend,
    )
    se = np.where(feasible, se, 0.0)
    ee = np.where(feasible, ee, 0.0)
    return GridEvaluation(grid=grid, se=se, ee=ee, feasible=np.array(feasible))


def _argmax(evaluation: GridEvaluation, w_se: float, w_ee: float) -> Tuple[Tuple[int, int, int], float]:
    objective = weighted_product(evaluation.se, evaluation.ee, w_se, w_ee)
    objective = np.where(evaluation.feasible, objective, -np.inf)
    flat = int(np.argmax(objective))
    index = np.unravel_index(flat, objective.shape)
    return tuple(int(i) for i in index), float(objective[index])


def _pareto_point(evaluation: GridEvaluation, index, objective: float, w_se: float, w_ee: float) -> ParetoPoint:
    i, j, k = index
    grid = evaluation.grid
    point = OperatingPoint(
        K=int(grid.K_values[i]), tau0=int(grid.tau0_values[j]), rho_u=float(grid.rho_values[k])
    )
    return ParetoPoint(
        se=float(evaluation.se[index]),
        ee=float(evaluation.ee[index]),
        point=point,
        weights=(float(w_se), float(w_ee)),
        objective=objective,
    )


def optimize(
    config: SystemConfig,
    processing: Union[Processing, str],
    w_se: float,
    w_ee: float,
    grid: Optional[SearchGrid] = None,
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
    evaluation: Optional[GridEvaluation] = None,
) -> Tuple[OperatingPoint, ParetoPoint]:
    """
    Exhaustive weighted-product search.

    Args:
        config: Scenario (M, T, K_max and geometry are fixed)
        processing: mrc or zf
        w_se, w_ee: Nonnegative weights, not both zero
        grid: Search grid (defaults to SearchGrid.default)
        frontend: one-bit or the unquantized reference
        evaluation: Precomputed grid evaluation to reuse across weights

    Returns:
        (OperatingPoint, ParetoPoint) of the maximizer
    """
    processing = Processing(processing)
    if evaluation is None:
        grid = grid or SearchGrid.default(config, processing)
        if 0 in grid.shape:
            raise DomainError("search grid is empty")
        evaluation = evaluate_grid(config, processing, grid, frontend)
    if not np.any(evaluation.feasible):
        raise DomainError("search grid has no feasible operating point")

    index, objective = _argmax(evaluation, w_se, w_ee)
    best = _pareto_point(evaluation, index, objective, w_se, w_ee)
    logger.debug(
        f"optimize {processing.value} w=({w_se}, {w_ee}): K={best.point.K} tau0={best.point.tau0} "
        f"rho={best.point.rho_db:.1f} dB SE={best.se:.3f} EE={best.ee:.4g}"
    )
    return best.point, best


def prune_dominated(points: Sequence[ParetoPoint]) -> List[ParetoPoint]:
    """Sort by SE and keep the points no other point beats in both SE and EE."""
    ordered = sorted(points, key=lambda p: (-p.se, -p.ee))
    frontier: List[ParetoPoint] = []
    best_ee = -np.inf
    for candidate in ordered:
        if candidate.ee > best_ee:
            frontier.append(candidate)
            best_ee = candidate.ee
    return sorted(frontier, key=lambda p: p.se)


def default_weights(count: int = 21) -> List[Tuple[float, float]]:
    """(w, 1 - w) for w evenly spaced over [0, 1]."""
    if count < 2:
        return [(1.0, 1.0)]
    return [(float(w), float(1.0 - w)) for w in np.linspace(0.0, 1.0, count)]


def pareto_sweep(
    config: SystemConfig,
    processing: Union[Processing, str],
    weight_list: Sequence[Tuple[float, float]],
    grid: Optional[SearchGrid] = None,
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> List[ParetoPoint]:
    """One optimize per weight pair, sorted by SE, dominated points removed."""
    if not weight_list:
        raise DomainError("weight list is empty")
    processing = Processing(processing)
    grid = grid or SearchGrid.default(config, processing)
    if 0 in grid.shape:
        raise DomainError("search grid is empty")
    evaluation = evaluate_grid(config, processing, grid, frontend)

    points = [optimize(config, processing, w_se, w_ee, evaluation=evaluation)[1] for w_se, w_ee in weight_list]
    frontier = prune_dominated(points)
    logger.info(f"Pareto sweep ({processing.value}, {FrontendKind(frontend).value}): {len(frontier)} frontier points")
    return frontier


def benchmark_grid(config: SystemConfig, processing: Union[Processing, str], rho_db=None) -> SearchGrid:
    """K = 0.1 M, tau = K, only rho_u free."""
    K = max(1, int(round(0.1 * config.M)))
    full = SearchGrid.default(config, Processing(processing), rho_db=rho_db)
    return SearchGrid(K_values=np.array([K]), tau0_values=np.array([1]), rho_values=full.rho_values)


def benchmark_sweep(
    config: SystemConfig,
    processing: Union[Processing, str],
    weight_list: Sequence[Tuple[float, float]],
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> List[ParetoPoint]:
    """Pareto sweep of the conventional K = 0.1 M, tau = K operating rule."""
    bench_config = config.replace(K_max=max(config.K_max, max(1, int(round(0.1 * config.M)))))
    return pareto_sweep(bench_config, processing, weight_list, benchmark_grid(config, processing), frontend)
