"""
Koopman operators U f = f∘T on L²(𝕋) for observables with finite Fourier support.

rotation   T x = x + α        U e_n = e^{2πinα} e_n
doubling   T x = 2x           U e_n = e_{2n}
bernoulli  T x = p x (mod 1)  U e_n = e_{pn}

Correlations are exact: frequency matching for the p-adic maps is done on
Python integers, so lags never overflow.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Literal, Optional, Sequence, Tuple

import numpy as np

from ergodic_rates.core.errors import DomainError, UsageError
from ergodic_rates.measures.circle import CircleMeasure, PowerLawSegment
from ergodic_rates.measures.kernels import fejer_weight, wrap_angle

MapKind = Literal["rotation", "doubling", "bernoulli"]


@dataclass(frozen=True, eq=False)
class KoopmanInstance:
    map_kind: MapKind
    observable: Tuple[Tuple[int, complex], ...]
    alpha: Optional[float] = None
    symbols: int = 2
    _coeffs: Dict[int, complex] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.map_kind not in ("rotation", "doubling", "bernoulli"):
            raise UsageError(f"❌ [Koopman] unknown map kind: {self.map_kind!r}")
        if self.map_kind == "rotation":
            if self.alpha is None or not (0.0 < self.alpha < 1.0):
                raise DomainError(f"❌ [Koopman] rotation number must lie in (0, 1), got {self.alpha}")
        if self.map_kind == "bernoulli" and self.symbols < 2:
            raise DomainError(f"❌ [Koopman] bernoulli shift needs >= 2 symbols, got {self.symbols}")
        coeffs: Dict[int, complex] = {}
        for freq, amp in self.observable:
            if int(freq) != freq:
                raise DomainError(f"❌ [Koopman] Fourier frequencies must be integers, got {freq}")
            coeffs[int(freq)] = coeffs.get(int(freq), 0j) + complex(amp)
        object.__setattr__(self, "_coeffs", {n: a for n, a in coeffs.items() if a != 0})

    @classmethod
    def build(cls, map_kind: MapKind, observable: Iterable[Tuple[int, complex]], alpha: Optional[float] = None,
              symbols: int = 2) -> "KoopmanInstance":
        return cls(map_kind=map_kind, observable=tuple((int(n), complex(a)) for n, a in observable),
                   alpha=alpha, symbols=symbols)

    @property
    def multiplier(self) -> int:
        return 2 if self.map_kind == "doubling" else self.symbols

    @property
    def moving_coefficients(self) -> Dict[int, complex]:
        """Coefficients with the constant mode (the fixed part f*) removed."""
        return {n: a for n, a in self._coeffs.items() if n != 0}

    @property
    def deviation_mass(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.moving_coefficients.values()))

    @cached_property
    def lag_table(self) -> Dict[int, complex]:
        """j ↦ Σ_{m = p^j n} a_n conj(a_m) over nonzero frequencies, j ≥ 1 (p-adic maps)."""
        if self.map_kind == "rotation":
            raise UsageError("❌ [Koopman] lag tables exist only for p-adic maps")
        p = self.multiplier
        coeffs = self.moving_coefficients
        table: Dict[int, complex] = {}
        for n, a_n in coeffs.items():
            for m, a_m in coeffs.items():
                if m == n or m % n != 0:
                    continue
                q = m // n
                j = 0
                while q > 1 and q % p == 0:
                    q //= p
                    j += 1
                if q == 1 and j >= 1:
                    table[j] = table.get(j, 0j) + a_n * a_m.conjugate()
        return table

    @cached_property
    def rotation_phases(self) -> Tuple[np.ndarray, np.ndarray]:
        """(θ_n, |a_n|²) with θ_n = 2πnα mod 2π on (−π, π]."""
        if self.map_kind != "rotation":
            raise UsageError("❌ [Koopman] eigenphases exist only for rotations")
        coeffs = self.moving_coefficients
        weights = np.array([abs(a) ** 2 for a in coeffs.values()], dtype=float)
        frac = np.array([_turns(n, self.alpha) for n in coeffs], dtype=float)
        return wrap_angle(2.0 * np.pi * frac), weights


def _turns(m: int, alpha: Optional[float]) -> float:
    """m·α mod 1, reduced exactly on the binary value of α so large lags keep full precision."""
    return float((m * Fraction(float(alpha))) % 1)


def koopman_correlation(inst: KoopmanInstance, j: int) -> complex:
    """⟨U^j f − f*, f − f*⟩."""
    if j < 0:
        raise DomainError(f"❌ [Koopman] lag must be >= 0, got {j}")
    if inst.map_kind == "rotation":
        coeffs = inst.moving_coefficients
        if not coeffs:
            return 0j
        w = np.array([abs(a) ** 2 for a in coeffs.values()], dtype=float)
        frac = np.array([_turns(j * n, inst.alpha) for n in coeffs], dtype=float)
        return complex(np.sum(w * np.exp(2j * np.pi * frac)))
    if j == 0:
        return complex(inst.deviation_mass)
    return inst.lag_table.get(j, 0j)


def koopman_deviation_series(inst: KoopmanInstance, K_values: Sequence[int]) -> np.ndarray:
    """
    b(K) = (1/K²)Σ_{j,l<K} C(j − l) for many K at once.

    p-adic maps have finitely many nonzero lags, so the sum collapses to
    C(0)/K + (2/K²)Σ_d (K − d) Re C(d).
    """
    if any(int(k) < 1 for k in K_values):
        raise DomainError("❌ [Koopman] K must be >= 1")
    K_arr = np.array([float(k) for k in K_values], dtype=float)
    if K_arr.size == 0:
        return K_arr
    c0 = inst.deviation_mass
    if inst.map_kind != "rotation":
        extra = np.zeros_like(K_arr)
        for d, c in inst.lag_table.items():
            extra += np.where(K_arr > d, (K_arr - d) * c.real, 0.0)
        return np.maximum(c0 / K_arr + 2.0 * extra / (K_arr * K_arr), 0.0)

    # the double sum grouped by eigenvalue: Σ_n |a_n|² |D_K(θ_n)|²/K²
    theta, w = inst.rotation_phases
    return np.array([float(np.sum(w * fejer_weight(theta, int(K)))) for K in K_values])



def koopman_deviation_norm_sq(inst: KoopmanInstance, K: int) -> float:
    """b(K) = (1/K²)Σ_{j,l<K} ⟨U^{j−l}(f − f*), f − f*⟩."""
    return float(koopman_deviation_series(inst, [K])[0])


def koopman_spectral_measure(inst: KoopmanInstance) -> CircleMeasure:
    """
    Spectral measure of f − f* when it lies in the supported classes.

    Rotations give atoms at 2πnα. For p-adic maps without matched frequency
    pairs every correlation beyond lag 0 vanishes, so the measure is uniform.
    """
    if inst.map_kind == "rotation":
        theta, w = inst.rotation_phases
        phases, inverse = np.unique(theta, return_inverse=True)
        return CircleMeasure.from_arrays(phases, np.bincount(inverse, weights=w, minlength=phases.size))
    if inst.lag_table:
        raise UsageError(
            "❌ [Koopman] observable has matched frequencies; its spectral density is a "
            "trigonometric polynomial outside the supported measure classes"
        )
    mass = inst.deviation_mass
    if mass == 0.0:
        return CircleMeasure.empty()
    return CircleMeasure.density([PowerLawSegment(c=mass / (2.0 * np.pi), alpha=1.0)])


__all__ = [
    "MapKind",
    "KoopmanInstance",
    "koopman_correlation",
    "koopman_deviation_series",
    "koopman_deviation_norm_sq",
    "koopman_spectral_measure",
]
