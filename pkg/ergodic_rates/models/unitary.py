"""
Diagonal unitaries U = diag(e^{iθ_k}) and state vectors in the eigenbasis.

Everything the rate theory needs from (U, ψ) is exact here: the Cesàro
average is a per-eigenphase geometric series, and the spectral measure is
the atomic measure Σ|c_k|²δ_{θ_k}.
"""
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ergodic_rates.core.errors import DomainError, UsageError
from ergodic_rates.measures.circle import CircleMeasure
from ergodic_rates.measures.kernels import cesaro_symbol, wrap_angle


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiagonalUnitary:
    phases: np.ndarray

    def __post_init__(self) -> None:
        phases = np.array(self.phases, dtype=float).ravel()
        if phases.size < 1:
            raise UsageError("❌ [Unitary] dimension must be >= 1")
        if not np.all(np.isfinite(phases)) or np.any(phases <= -np.pi) or np.any(phases > np.pi):
            raise DomainError("❌ [Unitary] eigenphases must lie in (-π, π]")
        object.__setattr__(self, "phases", _readonly(phases))

    @classmethod
    def from_angles(cls, angles: Iterable[float]) -> "DiagonalUnitary":
        """Accepts any real angles and wraps them onto (−π, π]."""
        return cls(wrap_angle(np.array(list(angles), dtype=float)))

    @property
    def dim(self) -> int:
        return int(self.phases.size)

    @property
    def fixed_mask(self) -> np.ndarray:
        return self.phases == 0.0


@dataclass(frozen=True, eq=False)
class StateVector:
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coefficients, dtype=complex).ravel()
        if not np.all(np.isfinite(coeffs)):
            raise DomainError("❌ [Unitary] state coefficients must be finite")
        object.__setattr__(self, "coefficients", _readonly(coeffs))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "StateVector":
        return cls(np.array([complex(re, im) for re, im in pairs], dtype=complex))

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        coeffs = np.zeros(dim, dtype=complex)
        coeffs[index] = 1.0
        return cls(coeffs)

    @property
    def dim(self) -> int:
        return int(self.coefficients.size)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def __sub__(self, other: "StateVector") -> "StateVector":
        return StateVector(self.coefficients - other.coefficients)

    def normalized(self) -> "StateVector":
        n = self.norm
        if n == 0.0:
            raise UsageError("❌ [Unitary] cannot normalize the zero vector")
        return StateVector(self.coefficients / n)


def _check_pair(U: DiagonalUnitary, psi: StateVector) -> None:
    if U.dim != psi.dim:
        raise UsageError(f"❌ [Unitary] dimension mismatch: operator {U.dim}, vector {psi.dim}")


def spectral_measure(U: DiagonalUnitary, psi: StateVector) -> CircleMeasure:
    """Σ_k |c_k|² δ_{θ_k}, repeated phases coalesced."""
    _check_pair(U, psi)
    phases, inverse = np.unique(U.phases, return_inverse=True)
    weights = np.bincount(inverse, weights=np.abs(psi.coefficients) ** 2, minlength=phases.size)
    return CircleMeasure.from_arrays(phases, weights)


def fixed_part(U: DiagonalUnitary, psi: StateVector) -> StateVector:
    """ψ* = P^U({1})ψ."""
    _check_pair(U, psi)
    return StateVector(np.where(U.fixed_mask, psi.coefficients, 0.0))


def deviation(U: DiagonalUnitary, psi: StateVector) -> StateVector:
    """ψ − ψ*."""
    return psi - fixed_part(U, psi)


def cesaro_average(U: DiagonalUnitary, psi: StateVector, K: int) -> StateVector:
    """(1/K)Σ_{j<K} U^j ψ."""
    _check_pair(U, psi)
    if K < 1:
        raise DomainError(f"❌ [Unitary] K must be >= 1, got {K}")
    return StateVector(psi.coefficients * cesaro_symbol(U.phases, K))


def cesaro_deviation_norm_sq(U: DiagonalUnitary, psi: StateVector, K: int) -> float:
    """b(K) = ‖(1/K)Σ_{j<K} U^j ψ − ψ*‖², evaluated on the vectors themselves."""
    diff = cesaro_average(U, psi, K) - fixed_part(U, psi)
    return diff.norm_sq


def correlation(U: DiagonalUnitary, psi: StateVector, j: int) -> complex:
    """⟨L^j ψ, ψ⟩ = Σ_{θ_k≠0} |c_k|² e^{ijθ_k}."""
    _check_pair(U, psi)
    if j < 0:
        raise DomainError(f"❌ [Unitary] lag must be >= 0, got {j}")
    moving = ~U.fixed_mask
    w = np.abs(psi.coefficients[moving]) ** 2
    return complex(np.sum(w * np.exp(1j * j * U.phases[moving])))


def correlation_deviation_norm_sq(U: DiagonalUnitary, psi: StateVector, K: int) -> float:
    """b(K) from the lag double sum (1/K²)Σ_{j,l<K} ⟨L^{j−l}ψ, ψ⟩."""
    _check_pair(U, psi)
    if K < 1:
        raise DomainError(f"❌ [Unitary] K must be >= 1, got {K}")
    moving = ~U.fixed_mask
    w = np.abs(psi.coefficients[moving]) ** 2
    theta = U.phases[moving]
    if w.size == 0:
        return 0.0
    lags = np.arange(K, dtype=float)
    corr = np.cos(np.outer(lags, theta)) @ w
    return lag_double_sum(corr, K)


def lag_double_sum(real_corr: np.ndarray, K: int) -> float:
    """(1/K²)Σ_{j,l<K} C(|j−l|) given Re C(d) for d = 0..K−1 (C(−d) = conj C(d))."""
    d = np.arange(1, K, dtype=float)
    total = math.fsum([float(real_corr[0]), *(2.0 * (1.0 - d / K) * real_corr[1:K])])
    return float(max(total / K, 0.0))


def truncate(U: DiagonalUnitary, psi: StateVector, n: int) -> StateVector:
    """ψ_n: drop coefficients with 0 < |θ_k| ≤ 1/n."""
    _check_pair(U, psi)
    if n < 1:
        raise DomainError(f"❌ [Unitary] truncation index must be >= 1, got {n}")
    drop = (U.phases != 0.0) & (np.abs(U.phases) <= 1.0 / n)
    return StateVector(np.where(drop, 0.0, psi.coefficients))


def random_diagonal_model(
    rng: np.random.Generator,
    dim: int,
    gap: Optional[float] = None,
    fixed_fraction: float = 0.1,
) -> Tuple[DiagonalUnitary, StateVector]:
    """
    Random eigenphases and a random unit vector.

    A fraction of phases is exactly 0. With `gap`, the other phases avoid
    the punctured arc (−γ, γ].
    """
    if dim < 1:
        raise UsageError(f"❌ [Unitary] dimension must be >= 1, got {dim}")
    if gap is not None and not (0.0 < gap < np.pi):
        raise DomainError(f"❌ [Unitary] gap must lie in (0, π), got {gap}")
    if gap is None:
        phases = wrap_angle(rng.uniform(-np.pi, np.pi, size=dim))
    else:
        width = np.pi - gap
        u = rng.uniform(0.0, 2.0 * width, size=dim)
        # (γ, π] on the right, [−π, −γ] folded onto (−π, −γ]
        phases = np.where(u < width, gap + (width - u), -gap - (u - width))
        phases = np.where(phases <= -np.pi, np.pi, phases)
    fixed = rng.random(dim) < fixed_fraction
    phases = np.where(fixed, 0.0, phases)
    coeffs = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    psi = StateVector(coeffs).normalized()
    return DiagonalUnitary(phases), psi


__all__ = [
    "DiagonalUnitary",
    "StateVector",
    "spectral_measure",
    "fixed_part",
    "deviation",
    "cesaro_average",
    "cesaro_deviation_norm_sq",
    "correlation",
    "correlation_deviation_norm_sq",
    "lag_double_sum",
    "truncate",
    "random_diagonal_model",
]
