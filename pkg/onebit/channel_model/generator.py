# onebit/channel_model/generator.py

"""
User drops, large-scale fading, fast fading and power-controlled channels.
"""

import logging
from typing import Optional

import numpy as np

from onebit.channel_model.models import SystemConfig, UserDrop, ChannelRealization
from onebit.errors import DimensionError

logger = logging.getLogger(__name__)


def large_scale_fading(distances: np.ndarray, r_min: float, d_bar: float, kappa: float) -> np.ndarray:
    """beta = d_bar / (d / r_min)^kappa"""
    distances = np.asarray(distances, dtype=float)
    return d_bar / (distances / r_min) ** kappa


def drop_users(config: SystemConfig, rng: np.random.Generator, K: Optional[int] = None) -> UserDrop:
    """
    Drop terminals uniformly over the area of the annulus [r_min, r_max].

    Args:
        config: Scenario parameters
        rng: Generator owned by the caller
        K: Number of terminals to drop (defaults to config.K)

    Returns:
        UserDrop with distances and large-scale fading coefficients
    """
    K = config.K if K is None else K
    u = rng.random(K)
    distances = np.sqrt(config.r_min ** 2 + u * (config.r_max ** 2 - config.r_min ** 2))
    betas = large_scale_fading(distances, config.r_min, config.d_bar, config.kappa)
    return UserDrop(distances=distances, betas=betas)


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """i.i.d. CN(0, 1) entries."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def power_control(config: SystemConfig, drop: UserDrop) -> np.ndarray:
    """Statistical power control p_k = rho_u / beta_k."""
    return config.rho_u / drop.betas


def total_transmit_power(config: SystemConfig, drop: UserDrop) -> float:
    return float(np.sum(power_control(config, drop)))


def effective_channel(G: np.ndarray, powers: np.ndarray) -> np.ndarray:
    """Columns g_k scaled by sqrt(p_k)."""
    powers = np.asarray(powers, dtype=float)
    if powers.shape != (G.shape[-1],):
        raise DimensionError(f"need {G.shape[-1]} powers, got shape {powers.shape}")
    return G * np.sqrt(powers)


def draw_channel(config: SystemConfig, drop: UserDrop, rng: np.random.Generator) -> ChannelRealization:
    """
    Draw one fast-fading realization for a drop.

    The effective channel is sqrt(rho_u) * H: power control cancels beta_k.
    """
    H = complex_normal(rng, (config.M, drop.K))
    G = H * np.sqrt(drop.betas)
    G_eff = np.sqrt(config.rho_u) * H
    return ChannelRealization(H=H, G=G, G_eff=G_eff)


def power_geometry_factor(config: SystemConfig) -> float:
    """
    E{1/beta} for an area-uniform drop:

        (r_max^{k+2} - r_min^{k+2}) / (d_bar (1 + k/2) (r_max^2 - r_min^2) r_min^k)
    """
    kappa = config.kappa
    numerator = config.r_max ** (kappa + 2) - config.r_min ** (kappa + 2)
    denominator = (
        config.d_bar * (1 + kappa / 2) * (config.r_max ** 2 - config.r_min ** 2) * config.r_min ** kappa
    )
    return numerator / denominator


def average_total_power(config: SystemConfig) -> float:
    """Expected total transmit power K * rho_u * E{1/beta}."""
    return config.K * config.rho_u * power_geometry_factor(config)
