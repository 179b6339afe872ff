# backend/utils/rng.py

"""
Named random substreams.

Every consumer asks for a generator by (purpose, index...). The stream is
derived from the master seed through a SeedSequence spawn key, so trial i of
an experiment draws the same numbers no matter which worker runs it or in
which order trials complete.
"""

import zlib
from typing import Tuple

import numpy as np


def purpose_key(purpose: str) -> int:
    """Stable 32-bit key for a purpose name."""
    return zlib.crc32(purpose.encode("utf-8")) & 0xFFFFFFFF


class SubstreamFactory:
    """Hands out independent Philox generators keyed by purpose and index"""

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        self.seed = int(seed)

    def spawn_key(self, purpose: str, *index: int) -> Tuple[int, ...]:
        return (purpose_key(purpose),) + tuple(int(i) for i in index)

    def seed_sequence(self, purpose: str, *index: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.seed, spawn_key=self.spawn_key(purpose, *index))

    def generator(self, purpose: str, *index: int) -> np.random.Generator:
        """
        Independent generator for one purpose / trial.

        Args:
            purpose: Stream name, e.g. "fig2.mrc"
            index: Integer coordinates (trial number, sweep point, ...)

        Returns:
            numpy Generator backed by a counter-based Philox bit generator
        """
        return np.random.Generator(np.random.Philox(self.seed_sequence(purpose, *index)))

    def __repr__(self) -> str:
        return f"SubstreamFactory(seed={self.seed})"
