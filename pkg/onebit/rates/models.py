# onebit/rates/models.py

from enum import Enum

from pydantic import Field

from backend.models.base import CustomModel
from onebit.frontend.models import FrontendKind
from onebit.transceive.models import Link, Processing


class RateMethod(str, Enum):
    MC = "mc"
    CLOSED_FORM = "closed-form"


class RateReport(CustomModel):
    """Achievable rate in bits/s/Hz for one configuration"""

    per_user_rate: float = Field(..., ge=0)
    sum_rate: float = Field(..., ge=0)
    method: RateMethod
    processing: Processing
    link: Link = Link.UPLINK
    frontend: FrontendKind = FrontendKind.ONE_BIT
    trials: int = 0
    std_err: float = 0.0
    redraws: int = 0


class MomentCheck(CustomModel):
    """Log-of-means rate approximation next to the mean of the log, from Monte Carlo moments"""

    mean_of_log: float
    log_of_means: float
    closed_form: float
    trials: int


class WishartCheck(CustomModel):
    """Monte Carlo mean of a diagonal entry of the inverse Gram matrix"""

    empirical: float
    theoretical: float
    std_err: float
    trials: int
