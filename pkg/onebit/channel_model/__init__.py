# onebit/channel_model/__init__.py

from onebit.channel_model.models import SystemConfig, UserDrop, ChannelRealization
from onebit.channel_model.generator import (
    drop_users,
    large_scale_fading,
    draw_channel,
    effective_channel,
    power_control,
    total_transmit_power,
    average_total_power,
    power_geometry_factor,
)

__all__ = [
    "SystemConfig",
    "UserDrop",
    "ChannelRealization",
    "drop_users",
    "large_scale_fading",
    "draw_channel",
    "effective_channel",
    "power_control",
    "total_transmit_power",
    "average_total_power",
    "power_geometry_factor",
]
