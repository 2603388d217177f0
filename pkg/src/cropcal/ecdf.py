"""Empirical CDFs and Kolmogorov-Smirnov distances."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class EmpiricalCdf:
    """Right-continuous step CDF over a sorted sample.

    ``weights`` are optional per-sample masses; they are normalized on
    construction.  Ties share a step.
    """

    values: np.ndarray
    weights: np.ndarray | None = field(default=None)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("EmpiricalCdf needs a non-empty 1-D sample")
        if np.any(np.diff(v) < 0):
            raise ValueError("values must be sorted ascending")
        object.__setattr__(self, "values", v)
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=np.float64)
            if w.shape != v.shape or np.any(w < 0) or w.sum() <= 0:
                raise ValueError("weights must be non-negative, same length, with positive total")
            object.__setattr__(self, "weights", w / w.sum())

    @classmethod
    def from_samples(cls, samples, weights=None) -> EmpiricalCdf:
        samples = np.asarray(samples, dtype=np.float64)
        order = np.argsort(samples, kind="stable")
        w = None if weights is None else np.asarray(weights, dtype=np.float64)[order]
        return cls(samples[order], w)

    @property
    def n(self) -> int:
        return self.values.size

    def _cum(self) -> np.ndarray:
        if self.weights is None:
            return np.arange(1, self.n + 1) / self.n
        return np.cumsum(self.weights)

    def evaluate(self, x) -> np.ndarray:
        """P(X <= x), right-continuous."""
        idx = np.searchsorted(self.values, np.asarray(x, dtype=np.float64), side="right")
        cum = np.concatenate(([0.0], self._cum()))
        return cum[idx]

    def mean(self) -> float:
        if self.weights is None:
            return float(self.values.mean())
        return float(np.dot(self.values, self.weights))

    def quantile(self, p: float) -> float:
        if not 0.0 < p <= 1.0:
            raise ValueError("p must be in (0, 1]")
        cum = self._cum()
        return float(self.values[np.searchsorted(cum, p, side="left")])

    def ks_distance(self, cdf) -> float:
        """Sup-norm distance to a reference CDF callable, evaluated at the steps."""
        f = np.asarray(cdf(self.values), dtype=np.float64)
        hi = self._cum()
        lo = np.concatenate(([0.0], hi[:-1]))
        return float(np.maximum(np.abs(f - hi), np.abs(f - lo)).max())

    def ks_uniform(self, low: float, high: float) -> float:
        if not high > low:
            raise ValueError("need high > low")
        return self.ks_distance(lambda x: np.clip((x - low) / (high - low), 0.0, 1.0))


def two_sample_ks(a: EmpiricalCdf, b: EmpiricalCdf) -> float:
    grid = np.union1d(a.values, b.values)
    return float(np.abs(a.evaluate(grid) - b.evaluate(grid)).max())
