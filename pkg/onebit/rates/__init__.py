# onebit/rates/__init__.py

from onebit.rates.models import RateMethod, RateReport, MomentCheck, WishartCheck
from onebit.rates.closed_form import (
    mrc_sinr,
    zf_sinr,
    closed_form_sinr,
    closed_form_rate,
    closed_form_rate_mrc,
    closed_form_rate_zf,
    downlink_rate,
    low_snr_penalty,
    lemma1_check,
)
from onebit.rates.ergodic import ergodic_rate_mc, uplink_trial, downlink_trial, data_noise_mode
from onebit.rates.moments import wishart_inverse_mean, mrc_moment_samples, mrc_moment_rate

__all__ = [
    "RateMethod",
    "RateReport",
    "MomentCheck",
    "WishartCheck",
    "mrc_sinr",
    "zf_sinr",
    "closed_form_sinr",
    "closed_form_rate",
    "closed_form_rate_mrc",
    "closed_form_rate_zf",
    "downlink_rate",
    "low_snr_penalty",
    "lemma1_check",
    "ergodic_rate_mc",
    "uplink_trial",
    "downlink_trial",
    "data_noise_mode",
    "wishart_inverse_mean",
    "mrc_moment_samples",
    "mrc_moment_rate",
]
