"""Deterministic, splittable random state shared by all sampling code.

A ``RngState`` is a thin wrapper around numpy's PCG64 generator seeded
through a ``SeedSequence``.  The same seed and the same call sequence
always produce the same stream, and ``split`` derives independent child
states so chunked Monte-Carlo work stays reproducible no matter how the
chunks are scheduled.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

# Smallest uniform draw forwarded to the inverse normal CDF; numpy's
# random() already never returns 1.0, so only the 0 endpoint needs a guard.
_U_FLOOR = 2.0**-53

GAUSSIAN_METHOD = "inverse_cdf"


class RngState:
    """Seeded PRNG with deterministic splitting.

    Gaussian variates are produced by the inverse-CDF method so the
    mapping from the underlying uniform stream to outputs is explicit and
    stable across numpy versions.
    """

    def __init__(self, seed: int = 0, _seq: np.random.SeedSequence | None = None):
        self.seed = int(seed)
        self._seq = _seq if _seq is not None else np.random.SeedSequence(self.seed)
        self._gen = np.random.Generator(np.random.PCG64(self._seq))

    def split(self, n: int) -> list[RngState]:
        """Derive ``n`` independent child states (deterministic per call order)."""
        if n < 1:
            raise ValueError("split count must be >= 1")
        return [RngState(self.seed, _seq=child) for child in self._seq.spawn(n)]

    def random(self, size=None):
        return self._gen.random(size)

    def uniform(self, low: float, high: float, size=None):
        return self._gen.uniform(low, high, size)

    def integers(self, low, high, size=None):
        """Integers in [low, high); ``high`` may be an array (elementwise bound)."""
        return self._gen.integers(low, high, size=size)

    def standard_normal(self, size=None):
        u = np.maximum(self._gen.random(size), _U_FLOOR)
        return ndtri(u)
