"""
Dirichlet / Fejér kernels and the Cesàro symbol on the circle.

All functions take angles in radians (scalars or numpy arrays) and are exact
at θ = 0 where the closed forms are 0/0.
"""
from typing import Union

import numpy as np

from ergodic_rates.core.errors import DomainError

ArrayLike = Union[float, np.ndarray]

# Below this |θ| the sine in the denominator switches to its Taylor form.
TAYLOR_CUTOFF = 1e-6


def wrap_angle(theta: ArrayLike) -> np.ndarray:
    """Map angles onto (−π, π]."""
    theta = np.asarray(theta, dtype=float)
    return np.pi - np.mod(np.pi - theta, 2.0 * np.pi)


def expm1i(x: ArrayLike) -> np.ndarray:
    """e^{ix} − 1 without cancellation for small x."""
    x = np.asarray(x, dtype=float)
    s = np.sin(0.5 * x)
    return -2.0 * s * s + 1j * np.sin(x)


def _normalized_dirichlet(theta: np.ndarray, K: int) -> np.ndarray:
    k = float(K)
    half = 0.5 * theta
    small = np.abs(theta) < TAYLOR_CUTOFF
    den = np.where(small, half * (1.0 - half * half / 6.0), np.sin(half))
    tiny = np.abs(k * theta) < TAYLOR_CUTOFF
    safe_den = np.where(den == 0.0, 1.0, den)
    ratio = np.sin(k * half) / (k * safe_den)
    kt = k * theta
    series = 1.0 - (kt * kt - theta * theta) / 24.0
    return np.where(tiny, series, ratio)


def dirichlet_kernel(theta: ArrayLike, K: int) -> np.ndarray:
    """D_K(θ) = sin(Kθ/2)/sin(θ/2), with D_K(0) = K."""
    if K < 1:
        raise DomainError(f"❌ [Kernel] K must be >= 1, got {K}")
    theta = np.asarray(theta, dtype=float)
    return float(K) * _normalized_dirichlet(theta, K)


def fejer_weight(theta: ArrayLike, K: int) -> np.ndarray:
    """|D_K(θ)|²/K², the integrand of the Fejér functional. Lies in [0, 1]."""
    if K < 1:
        raise DomainError(f"❌ [Kernel] K must be >= 1, got {K}")
    theta = np.asarray(theta, dtype=float)
    r = _normalized_dirichlet(theta, K)
    return r * r


def cesaro_symbol(theta: ArrayLike, K: int) -> np.ndarray:
    """(1/K) Σ_{j<K} e^{ijθ} via the geometric series; equals 1 at θ = 0."""
    if K < 1:
        raise DomainError(f"❌ [Kernel] K must be >= 1, got {K}")
    theta = np.asarray(theta, dtype=float)
    zero = theta == 0.0
    den = expm1i(np.where(zero, 1.0, theta))
    g = expm1i(float(K) * theta) / (float(K) * den)
    return np.where(zero, 1.0 + 0j, g)


__all__ = [
    "TAYLOR_CUTOFF",
    "wrap_angle",
    "expm1i",
    "dirichlet_kernel",
    "fejer_weight",
    "cesaro_symbol",
]
