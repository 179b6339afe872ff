# onebit/frontend/quantizer.py

import numpy as np

INV_SQRT2 = 1.0 / np.sqrt(2.0)


def _sign(x: np.ndarray) -> np.ndarray:
    # sign(0) = +1 keeps the quantizer total
    return np.where(x >= 0, 1.0, -1.0)


def one_bit_quantize(y: np.ndarray) -> np.ndarray:
    """
    Element-wise one-bit quantizer on real and imaginary parts.

    Every output lies in {±1 ± j}/sqrt(2) and has unit modulus.
    """
    y = np.asarray(y)
    return (_sign(y.real) + 1j * _sign(y.imag)) * INV_SQRT2
