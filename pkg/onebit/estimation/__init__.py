# onebit/estimation/__init__.py

from onebit.estimation.models import PilotMatrix, ChannelEstimate, EstimateStatistics, EstimatorMethod
from onebit.estimation.pilots import dft_pilots
from onebit.estimation.training import (
    received_training,
    simulate_training,
    vectorize_block,
    unvectorize_block,
)
from onebit.estimation.estimator import (
    lmmse_variance,
    estimate_variance,
    approx_estimator_gain,
    lmmse_estimate,
    predicted_estimate_statistics,
    full_training_covariance,
    quantized_training_covariance_tau,
)

__all__ = [
    "PilotMatrix",
    "ChannelEstimate",
    "EstimateStatistics",
    "EstimatorMethod",
    "dft_pilots",
    "received_training",
    "simulate_training",
    "vectorize_block",
    "unvectorize_block",
    "lmmse_variance",
    "estimate_variance",
    "approx_estimator_gain",
    "lmmse_estimate",
    "predicted_estimate_statistics",
    "full_training_covariance",
    "quantized_training_covariance_tau",
]
