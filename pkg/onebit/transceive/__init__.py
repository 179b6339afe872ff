# onebit/transceive/__init__.py

from onebit.transceive.models import (
    Processing,
    Link,
    SymbolKind,
    ProcessorSet,
    UplinkSamples,
    DownlinkSamples,
)
from onebit.transceive.processing import (
    mrc_receiver,
    zf_receiver,
    build_receiver,
    apply_gain,
    precoder_directions,
    modified_precoders,
    antenna_power_matrix,
    antenna_power_profile,
    power_spread,
)
from onebit.transceive.sinr import (
    uplink_sinr,
    downlink_sinr,
    data_covariance_uplink,
    data_covariance_downlink,
    expected_soft_gain,
    classical_sinr,
)
from onebit.transceive.sample_paths import (
    draw_symbols,
    simulate_uplink,
    simulate_downlink,
    empirical_uplink_sinr,
    empirical_quantizer_noise_variance,
)

__all__ = [
    "Processing",
    "Link",
    "SymbolKind",
    "ProcessorSet",
    "UplinkSamples",
    "DownlinkSamples",
    "mrc_receiver",
    "zf_receiver",
    "build_receiver",
    "apply_gain",
    "precoder_directions",
    "modified_precoders",
    "antenna_power_matrix",
    "antenna_power_profile",
    "power_spread",
    "uplink_sinr",
    "downlink_sinr",
    "data_covariance_uplink",
    "data_covariance_downlink",
    "expected_soft_gain",
    "classical_sinr",
    "draw_symbols",
    "simulate_uplink",
    "simulate_downlink",
    "empirical_uplink_sinr",
    "empirical_quantizer_noise_variance",
]
