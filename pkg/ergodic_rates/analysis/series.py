"""
Decay series b(K) and their liminf / limsup exponents.
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ergodic_rates.core.errors import UsageError
from ergodic_rates.core.logging import logger
from ergodic_rates.measures.circle import tail_slice
from ergodic_rates.models.spectral import SpectralModel


def geometric_k_grid(min_exp: int, max_exp: int, base: int = 2) -> List[int]:
    """[base^min_exp, ..., base^max_exp] as exact integers."""
    if base < 2:
        raise UsageError(f"❌ [Grid] K grid base must be an integer >= 2, got {base}")
    if min_exp < 0 or max_exp < min_exp:
        raise UsageError(f"❌ [Grid] need 0 <= min_exp <= max_exp, got [{min_exp}, {max_exp}]")
    return [base**e for e in range(min_exp, max_exp + 1)]


def geometric_eps_grid(min_exp: int, max_exp: int, base: float = 2.0) -> List[float]:
    """[base^(−min_exp), ..., base^(−max_exp)], strictly decreasing."""
    if not base > 1.0:
        raise UsageError(f"❌ [Grid] ε grid base must be > 1, got {base}")
    if max_exp < min_exp:
        raise UsageError(f"❌ [Grid] need min_exp <= max_exp, got [{min_exp}, {max_exp}]")
    eps = [float(base) ** (-e) for e in range(min_exp, max_exp + 1)]
    if eps[0] > math.pi or eps[-1] <= 0.0:
        raise UsageError("❌ [Grid] ε grid must stay inside (0, π]")
    return eps


@dataclass
class RateSeries:
    entries: List[Tuple[int, float]] = field(default_factory=list)

    def __post_init__(self) -> None:
        prev = 0
        for K, b in self.entries:
            if K <= prev:
                raise UsageError("❌ [Series] K values must be positive and strictly increasing")
            if not (b >= 0.0):
                raise UsageError(f"❌ [Series] b(K) must be >= 0, got b({K})={b}")
            prev = K

    @classmethod
    def from_arrays(cls, K_values: Sequence[int], values: Sequence[float]) -> "RateSeries":
        return cls([(int(K), float(b)) for K, b in zip(K_values, values)])

    @property
    def K(self) -> List[int]:
        return [K for K, _ in self.entries]

    @property
    def values(self) -> np.ndarray:
        return np.array([b for _, b in self.entries], dtype=float)

    def log_ratios(self) -> np.ndarray:
        """ln b(K)/(−ln K); +∞ where b = 0, NaN at K = 1."""
        out = np.empty(len(self.entries), dtype=float)
        for i, (K, b) in enumerate(self.entries):
            if K == 1:
                out[i] = np.nan
            elif b == 0.0:
                out[i] = np.inf
            else:
                out[i] = math.log(b) / (-math.log(K))
        return out

    def rows(self) -> List[Tuple[int, float, float]]:
        return [(K, b, float(r)) for (K, b), r in zip(self.entries, self.log_ratios())]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class DecayExponents:
    liminf_exp: float
    limsup_exp: float
    per_K: List[Tuple[int, float]]
    advisory: Optional[str] = None


def decay_series(model: SpectralModel, K_grid: Sequence[int]) -> RateSeries:
    """b(K) on the grid via the model's exact route."""
    K_values = [int(K) for K in K_grid]
    if any(b <= a for a, b in zip(K_values, K_values[1:])):
        raise UsageError("❌ [Series] K grid must be strictly increasing")
    values = model.deviation_series(K_values)
    logger.debug("📈 [Series] {} points for {}", len(K_values), model.describe())
    return RateSeries.from_arrays(K_values, values)


def estimate_decay_exponents(series: RateSeries, tail_fraction: float = 0.5) -> DecayExponents:
    """min / max of ln b(K)/(−ln K) over the tail of the series."""
    if len(series) == 0:
        raise UsageError("❌ [Series] cannot estimate exponents of an empty series")
    ratios = series.log_ratios()
    per_K = [(K, float(r)) for K, r in zip(series.K, ratios)]
    if np.all(series.values == 0.0):
        advisory = "all-zero series: the Cesàro averages equal the fixed part on the whole grid"
        logger.warning("⚠️ [Series] {}", advisory)
        return DecayExponents(math.inf, math.inf, per_K, advisory)
    tail = ratios[tail_slice(len(ratios), tail_fraction)]
    tail = tail[~np.isnan(tail)]
    if tail.size == 0:
        raise UsageError("❌ [Series] tail holds only K = 1; extend the grid")
    return DecayExponents(float(tail.min()), float(tail.max()), per_K)


__all__ = [
    "geometric_k_grid",
    "geometric_eps_grid",
    "RateSeries",
    "DecayExponents",
    "decay_series",
    "estimate_decay_exponents",
]
