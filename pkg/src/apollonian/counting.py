"""Counting integral points of bounded height on Q_D = k and Q_L = k2.

Counts are of ordered quadruples.  The Descartes count at level 4m equals
the Lorentz count at level 2m because J0 preserves Euclidean height.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Dirichlet L(2, chi_-4) (Catalan's constant).
CATALAN = 0.915965594177219

# Leading coefficients c(2m) * pi / L(2, chi_-4) for m = -1 and m = 1.
EXPECTED_COEFFICIENTS = {
    -4: 0.75 * math.pi / CATALAN,
    4: 1.25 * math.pi / CATALAN,
}


@dataclass(frozen=True)
class CountReport:
    level_k: int
    T: int
    count: int

    @property
    def normalized(self) -> float:
        return self.count / (self.T * self.T)


def sums_of_three_squares(limit: int) -> np.ndarray:
    """r3[s] = #{(x, y, z) in Z^3 : x^2 + y^2 + z^2 = s} for 0 <= s <= limit."""
    if limit < 0:
        return np.zeros(0, dtype=np.int64)
    r = math.isqrt(limit)
    sq = np.arange(-r, r + 1, dtype=np.int64) ** 2
    pair = (sq[:, None] + sq[None, :]).ravel()
    r2 = np.bincount(pair[pair <= limit], minlength=limit + 1)[: limit + 1]
    r3 = np.zeros(limit + 1, dtype=np.int64)
    for x in range(-r, r + 1):
        s = x * x
        r3[s:] += r2[: limit + 1 - s]
    return r3


def count_lorentz(k2: int, T: int) -> int:
    """Ordered (W, X, Y, Z) with -W^2+X^2+Y^2+Z^2 = k2 and W^2+X^2+Y^2+Z^2 <= T^2."""
    if T < 0:
        raise ValueError("T must be non-negative")
    T2 = T * T
    r3 = sums_of_three_squares(T2)
    total = 0
    for W in range(T + 1):
        s = W * W + k2
        if s < 0 or s > T2 or W * W + s > T2:
            continue
        total += int(r3[s]) * (1 if W == 0 else 2)
    return total


def count_descartes(k: int, T: int) -> int:
    """N_D(k, T) for k divisible by 4, via the Lorentz count at level k/2."""
    if k % 4:
        raise ValueError(f"level must be divisible by 4, got {k}")
    return count_lorentz(k // 2, T)


def count_report(k: int, T: int) -> CountReport:
    return CountReport(k, T, count_descartes(k, T))


def coefficient_estimate(k: int, T: int) -> float:
    """N_D(k, T) / T^2, the empirical leading coefficient."""
    if k % 4:
        raise ValueError(f"level must be divisible by 4, got {k}")
    if k == 0:
        raise ValueError("the level-0 coefficient is of a different kind and is not estimated")
    if T < 1:
        raise ValueError("T must be positive")
    return count_descartes(k, T) / (T * T)
