# onebit/optimizer/objectives.py

"""
Spectral and energy efficiency of an operating point.

Both links share the closed-form rate under duality, so the uplink fraction
gamma drops out of the collapsed objectives. The general forms keep separate
uplink / downlink rates and powers.
"""

import logging
from typing import Union

import numpy as np

from onebit.channel_model.generator import power_geometry_factor
from onebit.channel_model.models import SystemConfig
from onebit.errors import DomainError
from onebit.frontend.models import FrontendKind
from onebit.optimizer.models import OperatingPoint
from onebit.rates.closed_form import closed_form_sinr
from onebit.transceive.models import Processing

logger = logging.getLogger(__name__)


def efficiency_values(
    config: SystemConfig,
    processing: Union[Processing, str],
    K,
    tau0,
    rho_u,
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
):
    """
    (F_SE, F_EE) for broadcastable arrays of K, tau0 and rho_u.

    F_SE = ((T - tau)/T) K R and F_EE = ((T - tau)/T) R / (rho_u E{1/beta}).
    Points with tau >= T get zero.
    """
    K = np.asarray(K, dtype=float)
    tau = K * np.asarray(tau0, dtype=float)
    rho_u = np.asarray(rho_u, dtype=float)

    rate = np.log2(1.0 + closed_form_sinr(config.M, K, tau, rho_u, processing, frontend))
    data_fraction = np.clip((config.T - tau) / config.T, 0.0, None)
    se = data_fraction * K * rate
    ee = data_fraction * rate / (rho_u * power_geometry_factor(config))
    return se, ee


def _point_values(point: OperatingPoint, config: SystemConfig, processing, frontend):
    point.check_against(config, Processing(processing))
    se, ee = efficiency_values(config, processing, point.K, point.tau0, point.rho_u, frontend)
    return float(se), float(ee)


def spectral_efficiency(
    point: OperatingPoint,
    config: SystemConfig,
    processing: Union[Processing, str],
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> float:
    """Sum SE in bits/s/Hz including the training overhead."""
    return _point_values(point, config, processing, frontend)[0]


def energy_efficiency(
    point: OperatingPoint,
    config: SystemConfig,
    processing: Union[Processing, str],
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> float:
    """SE per unit of average total transmit power."""
    return _point_values(point, config, processing, frontend)[1]


def weighted_product(se, ee, w_se: float, w_ee: float):
    """F_SE^w_se * F_EE^w_ee with zero whenever a positively weighted factor is zero."""
    if w_se < 0 or w_ee < 0:
        raise DomainError("weights must be nonnegative")
    if w_se == 0 and w_ee == 0:
        raise DomainError("at least one weight must be positive")
    se = np.asarray(se, dtype=float)
    ee = np.asarray(ee, dtype=float)
    value = np.power(se, w_se) * np.power(ee, w_ee)
    zero = np.zeros_like(value, dtype=bool)
    if w_se > 0:
        zero |= se == 0
    if w_ee > 0:
        zero |= ee == 0
    return np.where(zero, 0.0, value)


def weighted_product_objective(
    point: OperatingPoint,
    config: SystemConfig,
    processing: Union[Processing, str],
    w_se: float,
    w_ee: float,
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> float:
    se, ee = _point_values(point, config, processing, frontend)
    return float(weighted_product(se, ee, w_se, w_ee))


def spectral_efficiency_general(config: SystemConfig, tau: int, uplink_rates, downlink_rates) -> float:
    """((T - tau)/T) (gamma sum R_ul + (1 - gamma) sum R_dl)"""
    if not 0 <= tau < config.T:
        raise DomainError(f"tau={tau} must lie in [0, T)")
    fraction = (config.T - tau) / config.T
    return float(
        fraction * (config.gamma * np.sum(uplink_rates) + (1.0 - config.gamma) * np.sum(downlink_rates))
    )


def energy_efficiency_general(
    config: SystemConfig, tau: int, uplink_rates, downlink_rates, uplink_power: float, downlink_power: float
) -> float:
    """General SE over the gamma-weighted average transmit power of both links."""
    power = config.gamma * uplink_power + (1.0 - config.gamma) * downlink_power
    if power <= 0:
        raise DomainError("average transmit power must be positive")
    return spectral_efficiency_general(config, tau, uplink_rates, downlink_rates) / power
