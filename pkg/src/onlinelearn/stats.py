"""Single-pass running statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["RunningMoments"]


@dataclass
class RunningMoments:
    """Count, mean and sum of squared deviations, updated one value at a time.

    Uses Welford's update, which stays accurate when the mean is large
    compared to the spread. ``variance`` is the population variance.
    """

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def update(self, value: float) -> None:
        self.count += 1
        delta = value - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (value - self.mean)
        if self.m2 < 0.0:
            self.m2 = 0.0

    @property
    def variance(self) -> float:
        return self.m2 / self.count if self.count else 0.0

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)
