# onebit/rates/moments.py

"""
Monte Carlo moment oracles behind the closed-form rates.
"""

import logging

import numpy as np

from onebit.channel_model.generator import complex_normal
from onebit.channel_model.models import SystemConfig
from onebit.errors import DomainError
from onebit.estimation.estimator import estimate_variance
from onebit.frontend.bussgang import scalar_alpha
from onebit.frontend.models import QUANTIZER_NOISE_VARIANCE
from onebit.rates.closed_form import closed_form_rate_mrc, lemma1_check
from onebit.rates.models import MomentCheck, WishartCheck

logger = logging.getLogger(__name__)

DEFAULT_BLOCK = 2_000


def wishart_inverse_mean(
    M: int,
    K: int,
    sigma2: float,
    trials: int,
    rng: np.random.Generator,
    block: int = DEFAULT_BLOCK,
) -> WishartCheck:
    """
    E{[(ĜᴴĜ)⁻¹]_kk} for Ĝ with i.i.d. CN(0, sigma²) entries, against 1/(sigma²(M - K)).
    """
    if M <= K:
        raise DomainError(f"inverse Wishart mean needs M > K, got M={M}, K={K}")

    total = 0.0
    total_sq = 0.0
    remaining = trials
    while remaining > 0:
        n = min(block, remaining)
        G_hat = np.sqrt(sigma2) * complex_normal(rng, (n, M, K))
        gram = np.conj(np.swapaxes(G_hat, -1, -2)) @ G_hat
        diag = np.real(np.diagonal(np.linalg.inv(gram), axis1=-2, axis2=-1))
        per_draw = diag.mean(axis=1)
        total += per_draw.sum()
        total_sq += np.sum(per_draw ** 2)
        remaining -= n

    mean = total / trials
    variance = max(total_sq / trials - mean ** 2, 0.0)
    return WishartCheck(
        empirical=float(mean),
        theoretical=1.0 / (sigma2 * (M - K)),
        std_err=float(np.sqrt(variance / trials)),
        trials=trials,
    )


def mrc_moment_samples(config: SystemConfig, trials: int, rng: np.random.Generator, block: int = DEFAULT_BLOCK):
    """
    Paired (X, Y) samples of the MRC useful and distortion terms for user 0
    with Gaussian estimates ĝ ~ CN(0, sigma²) and errors ~ CN(0, rho - sigma²).

        X = alpha² |ĝᴴ g|²
        Y = alpha² sum_{i≠0} |ĝᴴ g_i|² + (alpha² + 1 - 2/pi) ||ĝ||²
    """
    M, K, rho = config.M, config.K, config.rho_u
    sigma2 = estimate_variance(config)
    alpha2 = scalar_alpha(K, rho) ** 2

    X_parts, Y_parts = [], []
    remaining = trials
    while remaining > 0:
        n = min(block, remaining)
        g_hat = np.sqrt(sigma2) * complex_normal(rng, (n, M))
        g_true = g_hat + np.sqrt(rho - sigma2) * complex_normal(rng, (n, M))
        others = np.sqrt(rho) * complex_normal(rng, (n, M, K - 1))

        X_parts.append(alpha2 * np.abs(np.einsum("bm,bm->b", g_hat.conj(), g_true)) ** 2)
        leakage = np.sum(np.abs(np.einsum("bm,bmk->bk", g_hat.conj(), others)) ** 2, axis=1)
        energy = np.sum(np.abs(g_hat) ** 2, axis=1)
        Y_parts.append(alpha2 * leakage + (alpha2 + QUANTIZER_NOISE_VARIANCE) * energy)
        remaining -= n

    return np.concatenate(X_parts), np.concatenate(Y_parts)


def mrc_moment_rate(config: SystemConfig, trials: int, rng: np.random.Generator) -> MomentCheck:
    """MRC rate from Monte Carlo moments next to the closed form."""
    X, Y = mrc_moment_samples(config, trials, rng)
    mean_of_log, log_of_means = lemma1_check(X, Y)
    return MomentCheck(
        mean_of_log=mean_of_log,
        log_of_means=log_of_means,
        closed_form=closed_form_rate_mrc(config).per_user_rate,
        trials=trials,
    )
