# onebit/frontend/__init__.py

from onebit.frontend.models import (
    BussgangGain,
    QuantizerNoiseModel,
    GainKind,
    NoiseMode,
    FrontendKind,
    SQRT_2_OVER_PI,
    QUANTIZER_NOISE_VARIANCE,
)
from onebit.frontend.quantizer import one_bit_quantize
from onebit.frontend.bussgang import (
    scalar_alpha,
    bussgang_gain,
    arcsine_covariance,
    quantizer_noise_covariance,
    frontend_gain_squared,
    frontend_distortion,
)

__all__ = [
    "BussgangGain",
    "QuantizerNoiseModel",
    "GainKind",
    "NoiseMode",
    "FrontendKind",
    "SQRT_2_OVER_PI",
    "QUANTIZER_NOISE_VARIANCE",
    "one_bit_quantize",
    "scalar_alpha",
    "bussgang_gain",
    "arcsine_covariance",
    "quantizer_noise_covariance",
    "frontend_gain_squared",
    "frontend_distortion",
]
