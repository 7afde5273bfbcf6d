"""
Measures with prescribed local behaviour at z = 1.

- power laws c|θ|^(α−1), with μ(A_ε) = (2c/α)ε^α exactly;
- lacunary atomic measures whose log-ratio ln μ(A_ε)/ln ε oscillates between
  a low and a high exponent;
- atomic measures supported outside a gap about z = 1.
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np
from scipy.special import gamma as gamma_fn

from ergodic_rates.core.errors import DesignError, DomainError
from ergodic_rates.core.logging import logger
from ergodic_rates.measures.circle import CircleMeasure, PowerLawSegment

# Smallest atom angle a design may place; keeps 1/θ finite as a float K.
MIN_DESIGN_ANGLE = 1e-300
_T_MAX = -math.log(MIN_DESIGN_ANGLE)


def power_law_measure(alpha: float, c: float) -> CircleMeasure:
    """Density c|θ|^(α−1) on (−π, π]."""
    if not (alpha > 0.0):
        raise DomainError(f"❌ [Designer] power-law exponent must be > 0, got {alpha}")
    if alpha > 2.0:
        raise DomainError(f"❌ [Designer] power-law exponent must be <= 2, got {alpha}")
    if not (c > 0.0):
        raise DomainError(f"❌ [Designer] power-law coefficient must be > 0, got {c}")
    return CircleMeasure.density([PowerLawSegment(c=c, alpha=alpha)])


def unit_power_law_coefficient(alpha: float) -> float:
    """c with (2c/α)π^α = 1."""
    return alpha / (2.0 * math.pi**alpha)


def unit_power_law(alpha: float) -> CircleMeasure:
    return power_law_measure(alpha, unit_power_law_coefficient(alpha))


def fejer_asymptotic_constant(alpha: float, c: float) -> float:
    """
    C with (1/K²)∫|D_K|² c|θ|^(α−1) dθ ~ C·K^(−α) as K → ∞, for 0 < α < 2.

    Uses |D_K|²/K² ≈ (2/(Kθ))² sin²(Kθ/2) near 0 and the Mellin transform of sin².
    """
    if not (0.0 < alpha < 2.0):
        raise DomainError(f"❌ [Designer] asymptotic constant needs 0 < α < 2, got {alpha}")
    if alpha == 1.0:
        return 2.0 * math.pi * c
    return float(-4.0 * c * gamma_fn(alpha - 2.0) * math.cos((alpha - 2.0) * math.pi / 2.0))


@dataclass(frozen=True)
class LacunarySpec:
    """
    Lacunary design in log-angle t = ln(1/θ).

    g(t) = −ln μ(A_{e^{−t}}) alternates ramps of slope `ramp` (ratio g/t rising
    from a to b) and plateaus (no mass, ratio falling back from b to a). Ramp
    starts sit at θ_n = scale_base^(−r^n) with r = b(ramp − a)/(a(ramp − b)).
    Each ramp is discretised by `depth` atoms on a midpoint staircase.
    """

    low_exponent: float
    high_exponent: float
    depth: int = 8
    scale_base: float = math.e**8
    ramp: float = 2.0

    def validate(self) -> None:
        a, b = self.low_exponent, self.high_exponent
        if not (0.0 <= a < 2.0):
            raise DesignError(f"❌ [Designer] low exponent must lie in [0, 2), got {a}")
        if not (b > a):
            raise DesignError(f"❌ [Designer] high exponent must exceed low exponent, got a={a}, b={b}")
        if self.depth < 4:
            raise DesignError(f"❌ [Designer] depth must be >= 4, got {self.depth}")
        if not (self.scale_base > 1.0):
            raise DesignError(f"❌ [Designer] scale_base must be > 1, got {self.scale_base}")
        if self.ramp < 2.0 or self.ramp <= b:
            raise DesignError(
                f"❌ [Designer] ramp slope must be >= 2 and > high exponent, got ramp={self.ramp}, b={b}"
            )

    @property
    def cycle_ratio(self) -> float:
        a, b, s = self.low_exponent, self.high_exponent, self.ramp
        if a == 0.0:
            return math.inf
        return b * (s - a) / (a * (s - b))


@dataclass(frozen=True)
class LadderBand:
    """One ramp plus the plateau after it, as angles (ramp_start > ramp_end > plateau_end)."""

    ramp_start: float
    ramp_end: float
    plateau_end: float


def _ladder_t(spec: LacunarySpec) -> List[Tuple[float, float, float]]:
    a, b, s = spec.low_exponent, spec.high_exponent, spec.ramp
    t_a = math.log(spec.scale_base)
    bands: List[Tuple[float, float, float]] = []
    while True:
        t_b = t_a * (s - a) / (s - b)
        if t_b > _T_MAX:
            if not bands:
                raise DesignError(
                    f"❌ [Designer] first ramp ends below the smallest representable angle "
                    f"(t={t_b:.1f} > {_T_MAX:.1f}); lower scale_base or raise ramp"
                )
            break
        t_c = t_b * b / a if a > 0.0 else math.inf
        bands.append((t_a, t_b, t_c))
        if t_c > _T_MAX:
            break
        t_a = t_c
    return bands


def lacunary_ladder(spec: LacunarySpec) -> List[LadderBand]:
    """Breakpoints of the design; an infinite plateau end is reported as 0.0."""
    spec.validate()
    bands = _ladder_t(spec)
    return [LadderBand(math.exp(-ta), math.exp(-tb), math.exp(-tc) if math.isfinite(tc) else 0.0)
            for ta, tb, tc in bands]


def lacunary_measure(spec: LacunarySpec) -> CircleMeasure:
    """Unit-mass atomic measure with d⁻ ≈ low_exponent and d⁺ ≈ high_exponent."""
    spec.validate()
    a, b, s = spec.low_exponent, spec.high_exponent, spec.ramp
    bands = _ladder_t(spec)

    radii: List[float] = []
    masses: List[float] = []
    for t_a, t_b, t_c in bands:
        g_a = a * t_a
        step = (t_b - t_a) / spec.depth
        cumulative = [math.exp(-(g_a + s * k * step)) for k in range(spec.depth)]
        cumulative.append(math.exp(-b * t_b))
        for k in range(spec.depth):
            radii.append(math.exp(-(t_a + (k + 0.5) * step)))
            masses.append(cumulative[k] - cumulative[k + 1])

    _, t_b_last, t_c_last = bands[-1]
    # the plateau mass sits on one atom at the next anchor, or at the floor
    final_t = min(t_c_last, _T_MAX)
    radii.append(math.exp(-final_t))
    masses.append(math.exp(-b * t_b_last))

    bulk = 1.0 - math.exp(-a * math.log(spec.scale_base))
    weights = np.array(masses)
    if np.any(~np.isfinite(weights)) or np.any(weights < 0.0) or bulk < 0.0:
        raise DesignError("❌ [Designer] lacunary weights are not a valid nonnegative sequence")

    angles: List[float] = []
    values: List[float] = []
    for r, w in zip(radii, masses):
        if w == 0.0:
            continue
        angles.extend([r, -r])
        values.extend([0.5 * w, 0.5 * w])
    if bulk > 0.0:
        angles.append(math.pi)
        values.append(bulk)

    logger.debug(
        "🪜 [Designer] lacunary a={} b={}: {} bands, {} atoms, smallest angle {:.3e}",
        a, b, len(bands), len(angles), min(radii),
    )
    return CircleMeasure.atomic(zip(angles, values))


def in_gap(theta: np.ndarray, gamma: float) -> np.ndarray:
    """True where θ ≠ 0 lies in the punctured arc (−γ, γ]."""
    theta = np.asarray(theta, dtype=float)
    return (theta != 0.0) & (theta > -gamma) & (theta <= gamma)


def gap_measure(gamma: float, atoms: Iterable[Tuple[float, float]]) -> CircleMeasure:
    """Atomic measure avoiding {e^{iθ} : θ ∈ (−γ, γ], θ ≠ 0}; an atom at 0 is allowed."""
    if not (0.0 < gamma < math.pi):
        raise DomainError(f"❌ [Designer] gap must lie in (0, π), got {gamma}")
    mu = CircleMeasure.atomic(atoms)
    bad = in_gap(mu.angles, gamma) & (mu.weights > 0.0)
    if np.any(bad):
        raise DomainError(
            f"❌ [Designer] atom at θ={float(mu.angles[bad][0]):.6g} lies inside the gap γ={gamma:.6g}"
        )
    return mu


__all__ = [
    "MIN_DESIGN_ANGLE",
    "power_law_measure",
    "unit_power_law_coefficient",
    "unit_power_law",
    "fejer_asymptotic_constant",
    "LacunarySpec",
    "LadderBand",
    "lacunary_ladder",
    "lacunary_measure",
    "in_gap",
    "gap_measure",
]
