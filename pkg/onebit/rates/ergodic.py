# onebit/rates/ergodic.py

"""
Monte Carlo ergodic rates. Receivers come from channel estimates, SINRs are
evaluated on the true channels. Trial i always draws from substream
(purpose, i, attempt), so results do not depend on the worker count.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from backend.config.settings import settings
from backend.services.trial_pool import TrialPool
from backend.utils.rng import SubstreamFactory
from onebit.channel_model.generator import draw_channel, drop_users
from onebit.channel_model.models import SystemConfig
from onebit.duality.solver import duality_trial
from onebit.errors import DomainError, SingularChannelError
from onebit.estimation.estimator import lmmse_estimate
from onebit.estimation.pilots import dft_pilots
from onebit.estimation.training import simulate_training
from onebit.frontend.bussgang import bussgang_gain, quantizer_noise_covariance
from onebit.frontend.models import GainKind, NoiseMode
from onebit.rates.models import RateMethod, RateReport
from onebit.transceive.models import Link, Processing
from onebit.transceive.processing import build_receiver
from onebit.transceive.sinr import data_covariance_uplink, uplink_sinr

logger = logging.getLogger(__name__)


def data_noise_mode(config: SystemConfig) -> NoiseMode:
    """Exact arcsine data covariance while the M x M matrix stays small."""
    if config.M <= settings.EXACT_DATA_COVARIANCE_MAX_M:
        return NoiseMode.EXACT
    return NoiseMode.APPROX


def uplink_trial(
    config: SystemConfig,
    processing: Union[Processing, str],
    rng: np.random.Generator,
    noise_mode: Union[NoiseMode, str] = NoiseMode.EXACT,
) -> np.ndarray:
    """Per-user uplink SINR for one drop / channel / training realization."""
    noise_mode = NoiseMode(noise_mode)
    drop = drop_users(config, rng)
    channel = draw_channel(config, drop, rng)
    G_eff = channel.G_eff

    Phi = dft_pilots(config.tau, config.K)
    r_t = simulate_training(G_eff, Phi, rng)
    estimate = lmmse_estimate(r_t, Phi, config)
    W = build_receiver(estimate.G_hat, processing)

    A_u = bussgang_gain(GainKind.UPLINK_EXACT, G_eff=G_eff)
    if noise_mode == NoiseMode.EXACT:
        noise = quantizer_noise_covariance(data_covariance_uplink(G_eff), A_u, NoiseMode.EXACT)
    else:
        noise = quantizer_noise_covariance(mode=NoiseMode.APPROX)
    return uplink_sinr(G_eff, W, A_u, noise, np.ones(config.K))


def downlink_trial(
    config: SystemConfig,
    processing: Union[Processing, str],
    rng: np.random.Generator,
    noise_mode: Union[NoiseMode, str] = NoiseMode.EXACT,
) -> np.ndarray:
    """Per-user downlink SINR with duality powers carrying the uplink SINRs."""
    return duality_trial(config, processing, rng, noise_mode).downlink_sinr


def run_with_redraws(
    trial_fn,
    factory: SubstreamFactory,
    purpose: str,
    index: int,
    max_redraws: Optional[int] = None,
) -> Tuple[np.ndarray, int]:
    """
    Run trial_fn(rng), redrawing on a singular channel estimate.

    Returns:
        (trial result, number of redraws used)
    """
    max_redraws = settings.ZF_MAX_REDRAWS if max_redraws is None else max_redraws
    retrying = Retrying(
        stop=stop_after_attempt(max_redraws + 1),
        retry=retry_if_exception_type(SingularChannelError),
        reraise=True,
    )
    for attempt in retrying:
        with attempt:
            redraw = attempt.retry_state.attempt_number - 1
            if redraw:
                logger.debug(f"{purpose} trial {index}: singular estimate, redraw {redraw}")
            result = trial_fn(factory.generator(purpose, index, redraw))
    return result, redraw


def ergodic_rate_mc(
    config: SystemConfig,
    processing: Union[Processing, str],
    link: Union[Link, str],
    trials: int,
    rng: Union[SubstreamFactory, int, None] = None,
    noise_mode: Union[NoiseMode, str, None] = None,
    pool: Optional[TrialPool] = None,
    purpose: Optional[str] = None,
) -> RateReport:
    """
    Ergodic per-user and sum rate averaged over channel realizations.

    Args:
        config: Scenario
        processing: mrc or zf
        link: ul, or dl via duality powers
        trials: Number of channel realizations
        rng: SubstreamFactory (or seed); defaults to config.seed
        noise_mode: data-phase quantizer noise; defaults to exact for M <= 512
        pool: TrialPool for parallel trials
        purpose: Substream name; defaults to "rate.<link>.<processing>"

    Returns:
        RateReport with std_err of the per-user rate and the redraw count
    """
    processing = Processing(processing)
    link = Link(link)
    if trials < 1:
        raise DomainError("need at least one trial")
    if processing == Processing.ZF and config.M < config.K:
        raise DomainError(f"ZF needs M >= K, got M={config.M}, K={config.K}")

    factory = rng if isinstance(rng, SubstreamFactory) else SubstreamFactory(config.seed if rng is None else rng)
    noise_mode = data_noise_mode(config) if noise_mode is None else NoiseMode(noise_mode)
    purpose = purpose or f"rate.{link.value}.{processing.value}"
    pool = pool or TrialPool()
    trial = uplink_trial if link == Link.UPLINK else downlink_trial

    def run(index: int):
        return run_with_redraws(lambda g: trial(config, processing, g, noise_mode), factory, purpose, index)

    outcomes = pool.map(run, range(trials))
    per_trial = np.array([np.mean(np.log2(1.0 + sinr)) for sinr, _ in outcomes])
    redraws = int(sum(r for _, r in outcomes))
    if redraws:
        logger.warning(f"{purpose}: {redraws} singular estimates redrawn over {trials} trials")

    per_user = float(per_trial.mean())
    std_err = float(per_trial.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    logger.debug(f"{purpose}: M={config.M} rho={config.rho_u:.4g} per-user {per_user:.4f} ± {std_err:.4f}")

    return RateReport(
        per_user_rate=per_user,
        sum_rate=config.K * per_user,
        method=RateMethod.MC,
        processing=processing,
        link=link,
        trials=trials,
        std_err=std_err,
        redraws=redraws,
    )
