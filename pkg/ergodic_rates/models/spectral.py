"""
A uniform view over the three kinds of cyclic data a check can run against.

- DiagonalModel: finite eigenphases and a vector (pure point spectrum).
- KoopmanModel: a Koopman instance with an exact correlation oracle.
- MeasureModel: a measure μ standing for a vector with spectral measure μ.

Each model exposes the deviation b(K) by its own exact route, the
correlations ⟨L^j ψ, ψ⟩, a second route to b(K) through the lag double sum,
and the spectral measure μ_{ψ−ψ*} when it is representable.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ergodic_rates.core.errors import UsageError
from ergodic_rates.core.logging import logger
from ergodic_rates.measures.circle import CircleMeasure, fejer_functional, fourier_coefficient, fourier_coefficients
from ergodic_rates.models.koopman import (
    KoopmanInstance,
    koopman_correlation,
    koopman_deviation_series,
    koopman_spectral_measure,
)
from ergodic_rates.models.unitary import (
    DiagonalUnitary,
    StateVector,
    cesaro_deviation_norm_sq,
    correlation,
    correlation_deviation_norm_sq,
    deviation,
    lag_double_sum,
    spectral_measure,
)

# Largest K for which a measure model recomputes b(K) from its Fourier coefficients.
MEASURE_IDENTITY_LIMIT = 1 << 10


class SpectralModel(ABC):
    kind: str = "abstract"
    # relative tolerance of the two-route identity
    identity_tolerance: float = 1e-10

    @abstractmethod
    def deviation_norm_sq(self, K: int) -> float:
        """b(K) by the model's direct route."""

    def deviation_series(self, K_values: Sequence[int]) -> np.ndarray:
        return np.array([self.deviation_norm_sq(int(K)) for K in K_values], dtype=float)

    @abstractmethod
    def correlation(self, j: int) -> complex:
        """⟨L^j ψ, ψ⟩."""

    @abstractmethod
    def correlation_route(self, K: int) -> float:
        """b(K) from (1/K²)Σ_{j,l<K} ⟨L^{j−l}ψ, ψ⟩."""

    @abstractmethod
    def spectral_measure(self) -> CircleMeasure:
        """μ_{ψ−ψ*}; raises UsageError when not representable."""

    @property
    def identity_limit(self) -> Optional[int]:
        """Largest K for the correlation route, or None when unbounded."""
        return None

    @property
    def spectral_route_is_direct(self) -> bool:
        """True when deviation_norm_sq already is the Fejér functional of spectral_measure()."""
        return False

    def moving_atoms(self) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """(phases ≠ 0, weights) when the spectral data is pure point, else None."""
        try:
            mu = self.spectral_measure()
        except UsageError:
            return None
        if mu.has_density:
            return None
        angles, weights, _ = mu.flatten()
        keep = angles != 0.0
        return angles[keep], weights[keep]

    def operator_phases(self) -> Optional[np.ndarray]:
        """
        Eigenphases θ ≠ 0 of the operator itself, independent of ψ.

        Koopman and measure models act on the cyclic subspace of their vector,
        where σ(U) is the support of the spectral measure.
        """
        atoms = self.moving_atoms()
        if atoms is None:
            return None
        angles, weights = atoms
        return angles[weights > 0.0]

    def describe(self) -> str:
        return self.kind


@dataclass(eq=False)
class DiagonalModel(SpectralModel):
    unitary: DiagonalUnitary
    psi: StateVector
    kind = "diagonal"

    def deviation_norm_sq(self, K: int) -> float:
        return cesaro_deviation_norm_sq(self.unitary, self.psi, K)

    def correlation(self, j: int) -> complex:
        return correlation(self.unitary, self.psi, j)

    def correlation_route(self, K: int) -> float:
        return correlation_deviation_norm_sq(self.unitary, self.psi, K)

    @property
    def identity_limit(self) -> Optional[int]:
        return 1 << 14

    def spectral_measure(self) -> CircleMeasure:
        return spectral_measure(self.unitary, deviation(self.unitary, self.psi))

    def operator_phases(self) -> Optional[np.ndarray]:
        phases = self.unitary.phases
        return np.array(phases[phases != 0.0])

    def describe(self) -> str:
        return f"diagonal(dim={self.unitary.dim})"


@dataclass(eq=False)
class KoopmanModel(SpectralModel):
    instance: KoopmanInstance
    kind = "koopman"

    def deviation_norm_sq(self, K: int) -> float:
        return float(koopman_deviation_series(self.instance, [K])[0])

    def deviation_series(self, K_values: Sequence[int]) -> np.ndarray:
        return koopman_deviation_series(self.instance, K_values)

    def correlation(self, j: int) -> complex:
        return koopman_correlation(self.instance, j)

    def correlation_route(self, K: int) -> float:
        real_corr = np.array([koopman_correlation(self.instance, d).real for d in range(K)])
        return lag_double_sum(real_corr, K)

    @property
    def identity_limit(self) -> Optional[int]:
        return 1 << 12

    @property
    def spectral_route_is_direct(self) -> bool:
        return self.instance.map_kind == "rotation"

    def spectral_measure(self) -> CircleMeasure:
        return koopman_spectral_measure(self.instance)

    def describe(self) -> str:
        return f"koopman({self.instance.map_kind})"


@dataclass(eq=False)
class MeasureModel(SpectralModel):
    """A vector whose spectral measure is `measure`; an atom at z = 1 is its fixed part."""

    measure: CircleMeasure
    kind = "measure"
    identity_tolerance = 1e-8

    def __post_init__(self) -> None:
        self._deviation = self.measure.without_atom_at_one()

    def deviation_norm_sq(self, K: int) -> float:
        return fejer_functional(self._deviation, K)

    def correlation(self, j: int) -> complex:
        return fourier_coefficient(self._deviation, j)

    def correlation_route(self, K: int) -> float:
        coeffs = fourier_coefficients(self._deviation, list(range(K)), resolution=float(K))
        return lag_double_sum(coeffs.real, K)

    @property
    def identity_limit(self) -> Optional[int]:
        return MEASURE_IDENTITY_LIMIT

    @property
    def spectral_route_is_direct(self) -> bool:
        return True

    def spectral_measure(self) -> CircleMeasure:
        return self._deviation

    def describe(self) -> str:
        return f"measure({self.measure.kind})"


@dataclass
class DecayScan:
    lags: List[int]
    magnitudes: List[float]
    advisory: Optional[str] = None

    def window_max(self, lo: int, hi: int) -> float:
        vals = [m for j, m in zip(self.lags, self.magnitudes) if lo <= j <= hi]
        return max(vals) if vals else float("nan")


NO_DECAY_ADVISORY = "no decay expected: atoms off z = 1 carry almost periodic correlations"


def weak_convergence_scan(mu: CircleMeasure, j_grid: Sequence[int]) -> DecayScan:
    """
    |μ̂(j)| along j_grid for the absolutely continuous part of μ.

    Without a density part the atoms off z = 1 are scanned instead and an
    advisory is attached.
    """
    lags = [int(j) for j in j_grid]
    atoms = mu.atomic_part().without_atom_at_one()
    has_atoms = atoms.total_mass > 0.0
    advisory: Optional[str] = None
    if mu.has_density:
        target = mu.density_part()
        if has_atoms:
            advisory = "atomic part ignored; " + NO_DECAY_ADVISORY
    else:
        target = atoms
        if has_atoms:
            advisory = NO_DECAY_ADVISORY
    if advisory:
        logger.warning("⚠️ [WeakDecay] {}", advisory)
    magnitudes = [abs(fourier_coefficient(target, j)) for j in lags]
    return DecayScan(lags=lags, magnitudes=magnitudes, advisory=advisory)


__all__ = [
    "SpectralModel",
    "DiagonalModel",
    "KoopmanModel",
    "MeasureModel",
    "DecayScan",
    "NO_DECAY_ADVISORY",
    "weak_convergence_scan",
]
