# onebit/transceive/models.py

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import model_validator

from backend.models.base import CustomModel
from onebit.errors import DimensionError


class Processing(str, Enum):
    MRC = "mrc"
    ZF = "zf"


class Link(str, Enum):
    UPLINK = "ul"
    DOWNLINK = "dl"


class SymbolKind(str, Enum):
    GAUSSIAN = "gaussian"
    QPSK = "qpsk"


class ProcessorSet(CustomModel):
    """Receiver W, precoder T, per-antenna amplitudes Q_diag and user powers q"""

    W: np.ndarray
    T: Optional[np.ndarray] = None
    Q_diag: Optional[np.ndarray] = None
    q: Optional[np.ndarray] = None

    @model_validator(mode="after")
    def check_shapes(self) -> "ProcessorSet":
        if self.T is not None and self.T.shape != self.W.shape:
            raise DimensionError(f"T {self.T.shape} and W {self.W.shape} must match")
        if self.Q_diag is not None and self.Q_diag.shape != (self.W.shape[0],):
            raise DimensionError("Q_diag needs one entry per antenna")
        if self.q is not None and self.q.shape != (self.W.shape[1],):
            raise DimensionError("q needs one entry per user")
        return self


class UplinkSamples(CustomModel):
    """Quantized uplink observations and receiver soft outputs"""

    received: np.ndarray
    soft_estimates: np.ndarray


class DownlinkSamples(CustomModel):
    """One-bit transmit vectors (before Q scaling), radiated signal and user samples"""

    quantized: np.ndarray
    transmitted: np.ndarray
    received: np.ndarray
