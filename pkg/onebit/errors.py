# onebit/errors.py

"""
Exception hierarchy. Every error is also a ValueError so callers that only
care about "bad input" can catch that.
"""


class OneBitError(ValueError):
    """Base class for toolkit errors"""


class ConfigurationError(OneBitError):
    """Invalid scenario / config document"""


class DimensionError(OneBitError):
    """Array shapes do not agree"""


class DomainError(OneBitError):
    """A formula was evaluated outside its domain"""


class SingularChannelError(OneBitError):
    """Channel estimate is rank deficient or too ill-conditioned for ZF"""

    def __init__(self, message: str, condition_number: float = float("inf")):
        super().__init__(message)
        self.condition_number = condition_number


class InfeasibleGeometryError(OneBitError):
    """A user has zero effective gain along its precoder direction"""


class InfeasibleTargetsError(OneBitError):
    """Target SINRs cannot be met simultaneously"""

    def __init__(self, message: str, spectral_radius: float = float("nan")):
        super().__init__(message)
        self.spectral_radius = spectral_radius


class ExperimentError(OneBitError):
    """Unknown experiment, empty sweep or artifact I/O failure"""
