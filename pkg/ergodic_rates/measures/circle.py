"""
Finite positive Borel measures on the unit circle in angle coordinates.

A measure is atomic, a density made of power-law segments c|θ|^(α−1), or a
mixture of both. Arcs about z = 1 are half-open:

    A_ε = {e^{iθ} : −ε < θ ≤ ε},    S_K = A_{π/K}.
"""
from dataclasses import dataclass, field
from math import ceil
from typing import Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np

from ergodic_rates.core.errors import DomainError, UsageError
from ergodic_rates.core.logging import logger
from ergodic_rates.measures.kernels import fejer_weight
from ergodic_rates.measures.quadrature import iter_segment_rules, panel_width_for

MeasureKind = Literal["atomic", "density", "mixture"]

MIN_EXPONENT_SCALES = 8


@dataclass(frozen=True)
class PowerLawSegment:
    """Density c·|θ|^(α−1) restricted to [lo, hi] ⊂ [−π, π]."""

    c: float
    alpha: float
    lo: float = -np.pi
    hi: float = np.pi

    def __post_init__(self) -> None:
        if not np.isfinite(self.c) or self.c < 0.0:
            raise DomainError(f"❌ [Measure] segment coefficient must be >= 0, got {self.c}")
        if not np.isfinite(self.alpha) or self.alpha <= 0.0:
            raise DomainError(f"❌ [Measure] segment exponent must be > 0, got {self.alpha}")
        if not (-np.pi <= self.lo < self.hi <= np.pi):
            raise DomainError(f"❌ [Measure] segment bounds must satisfy -π <= lo < hi <= π, got [{self.lo}, {self.hi}]")

    def primitive(self, x: np.ndarray) -> np.ndarray:
        """F(x) = sign(x)·c|x|^α/α, so F(v) − F(u) is the mass of [u, v]."""
        x = np.asarray(x, dtype=float)
        return np.sign(x) * self.c * np.abs(x) ** self.alpha / self.alpha

    def mass_within(self, eps: np.ndarray) -> np.ndarray:
        eps = np.asarray(eps, dtype=float)
        upper = np.minimum(self.hi, eps)
        lower = np.maximum(self.lo, -eps)
        return np.where(upper > lower, self.primitive(upper) - self.primitive(lower), 0.0)

    @property
    def total(self) -> float:
        return float(self.primitive(np.array(self.hi)) - self.primitive(np.array(self.lo)))


def _frozen(values: Iterable[float]) -> np.ndarray:
    arr = np.array(list(values), dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CircleMeasure:
    kind: MeasureKind
    angles: np.ndarray = field(default_factory=lambda: _frozen([]))
    weights: np.ndarray = field(default_factory=lambda: _frozen([]))
    segments: Tuple[PowerLawSegment, ...] = ()
    parts: Tuple["CircleMeasure", ...] = ()

    def __post_init__(self) -> None:
        if self.angles.shape != self.weights.shape or self.angles.ndim != 1:
            raise UsageError("❌ [Measure] atom angles and weights must be 1-d arrays of equal length")
        if self.angles.size:
            if not np.all(np.isfinite(self.angles)) or np.any(self.angles <= -np.pi) or np.any(self.angles > np.pi):
                raise DomainError("❌ [Measure] atom angles must lie in (-π, π]")
            if not np.all(np.isfinite(self.weights)) or np.any(self.weights < 0.0):
                raise DomainError("❌ [Measure] atom weights must be finite and >= 0")
        if self.kind == "atomic" and (self.segments or self.parts):
            raise UsageError("❌ [Measure] atomic measures carry atoms only")
        if self.kind == "density" and (self.angles.size or self.parts):
            raise UsageError("❌ [Measure] density measures carry segments only")
        if self.kind == "mixture" and (self.angles.size or self.segments):
            raise UsageError("❌ [Measure] mixtures carry parts only")

    # ---- constructors ----

    @classmethod
    def atomic(cls, atoms: Iterable[Tuple[float, float]]) -> "CircleMeasure":
        pairs = list(atoms)
        return cls(
            kind="atomic",
            angles=_frozen(a for a, _ in pairs),
            weights=_frozen(w for _, w in pairs),
        )

    @classmethod
    def from_arrays(cls, angles: Sequence[float], weights: Sequence[float]) -> "CircleMeasure":
        return cls(kind="atomic", angles=_frozen(angles), weights=_frozen(weights))

    @classmethod
    def density(cls, segments: Iterable[PowerLawSegment]) -> "CircleMeasure":
        return cls(kind="density", segments=tuple(segments))

    @classmethod
    def mixture(cls, parts: Iterable["CircleMeasure"]) -> "CircleMeasure":
        return cls(kind="mixture", parts=tuple(parts))

    @classmethod
    def empty(cls) -> "CircleMeasure":
        return cls(kind="atomic")

    # ---- views ----

    def flatten(self) -> Tuple[np.ndarray, np.ndarray, List[PowerLawSegment]]:
        """All atoms and all segments, with mixtures expanded."""
        if self.kind != "mixture":
            return np.asarray(self.angles), np.asarray(self.weights), list(self.segments)
        angles: List[np.ndarray] = []
        weights: List[np.ndarray] = []
        segments: List[PowerLawSegment] = []
        for part in self.parts:
            a, w, s = part.flatten()
            angles.append(a)
            weights.append(w)
            segments.extend(s)
        if not angles:
            return np.zeros(0), np.zeros(0), segments
        return np.concatenate(angles), np.concatenate(weights), segments

    @property
    def total_mass(self) -> float:
        angles, weights, segments = self.flatten()
        return float(weights.sum()) + sum(seg.total for seg in segments)

    @property
    def has_density(self) -> bool:
        return bool(self.flatten()[2])

    def atomic_part(self) -> "CircleMeasure":
        angles, weights, _ = self.flatten()
        return CircleMeasure.from_arrays(angles, weights)

    def density_part(self) -> "CircleMeasure":
        return CircleMeasure.density(self.flatten()[2])

    def without_atom_at_one(self) -> "CircleMeasure":
        angles, weights, segments = self.flatten()
        keep = angles != 0.0
        atoms = CircleMeasure.from_arrays(angles[keep], weights[keep])
        if not segments:
            return atoms
        return CircleMeasure.mixture([atoms, CircleMeasure.density(segments)])

    def scaled(self, factor: float) -> "CircleMeasure":
        if factor < 0:
            raise DomainError(f"❌ [Measure] scale factor must be >= 0, got {factor}")
        angles, weights, segments = self.flatten()
        atoms = CircleMeasure.from_arrays(angles, weights * factor)
        if not segments:
            return atoms
        dens = CircleMeasure.density(
            PowerLawSegment(s.c * factor, s.alpha, s.lo, s.hi) for s in segments
        )
        return CircleMeasure.mixture([atoms, dens])

    def __repr__(self) -> str:
        angles, _, segments = self.flatten()
        return f"CircleMeasure(kind={self.kind!r}, atoms={angles.size}, segments={len(segments)}, mass={self.total_mass:.6g})"


@dataclass
class ExponentEstimate:
    """Lower/upper pointwise exponents at z = 1 with per-scale diagnostics."""

    d_minus: float
    d_plus: float
    scales: List[Tuple[float, float, float]]
    tail_fraction: float = 0.5

    @property
    def spread(self) -> float:
        return self.d_plus - self.d_minus


# ---- arc masses ----

def _atomic_arc_masses(angles: np.ndarray, weights: np.ndarray, eps: np.ndarray) -> np.ndarray:
    if angles.size == 0:
        return np.zeros_like(eps)
    pos = angles >= 0.0
    pos_angles = angles[pos]
    order = np.argsort(pos_angles)
    pos_sorted = pos_angles[order]
    pos_cum = np.concatenate([[0.0], np.cumsum(weights[pos][order])])
    neg_angles = -angles[~pos]
    order = np.argsort(neg_angles)
    neg_sorted = neg_angles[order]
    neg_cum = np.concatenate([[0.0], np.cumsum(weights[~pos][order])])
    # θ ≤ ε on the right, −θ < ε on the left
    right = pos_cum[np.searchsorted(pos_sorted, eps, side="right")]
    left = neg_cum[np.searchsorted(neg_sorted, eps, side="left")]
    return right + left


def arc_masses(mu: CircleMeasure, eps: Sequence[float]) -> np.ndarray:
    """Vectorized μ(A_ε); every ε must lie in (0, π]."""
    eps_arr = np.asarray(eps, dtype=float)
    if eps_arr.size and (np.any(~np.isfinite(eps_arr)) or np.any(eps_arr <= 0.0) or np.any(eps_arr > np.pi)):
        raise DomainError("❌ [Measure] arc radius must lie in (0, π]")
    angles, weights, segments = mu.flatten()
    total = _atomic_arc_masses(angles, weights, eps_arr)
    for seg in segments:
        total = total + seg.mass_within(eps_arr)
    return total


def arc_mass(mu: CircleMeasure, eps: float) -> float:
    """μ(A_ε) for 0 < ε ≤ π; an atom at θ = ε counts, one at θ = −ε does not."""
    return float(arc_masses(mu, [eps])[0])


def sector_mass(mu: CircleMeasure, K: int) -> float:
    """μ(S_K) = μ(A_{π/K})."""
    if K < 1:
        raise DomainError(f"❌ [Measure] K must be >= 1, got {K}")
    return arc_mass(mu, np.pi / K)


def sector_masses(mu: CircleMeasure, K_max: int) -> np.ndarray:
    """μ(S_j) for j = 1..K_max."""
    j = np.arange(1, K_max + 1, dtype=float)
    eps = np.minimum(np.pi / j, np.pi)
    return arc_masses(mu, eps)


def atom_at_one(mu: CircleMeasure) -> float:
    angles, weights, _ = mu.flatten()
    return float(weights[angles == 0.0].sum())


def arc_scan(mu: CircleMeasure, eps_grid: Sequence[float]) -> List[Tuple[float, float, float]]:
    """Rows (ε, μ(A_ε), ln μ(A_ε)/ln ε); the ratio is NaN at ε = 1."""
    eps = np.asarray(eps_grid, dtype=float)
    masses = arc_masses(mu, eps)
    ratios = _log_ratios(masses, np.log(eps))
    return [(float(e), float(m), float(r)) for e, m, r in zip(eps, masses, ratios)]


def _log_ratios(values: np.ndarray, log_scale: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(values > 0.0, np.log(np.where(values > 0.0, values, 1.0)), -np.inf)
        ratios = np.where(log_scale != 0.0, logs / np.where(log_scale != 0.0, log_scale, 1.0), np.nan)
    return ratios


def tail_slice(n: int, tail_fraction: float) -> slice:
    if not (0.0 < tail_fraction <= 1.0):
        raise UsageError(f"❌ [Exponents] tail_fraction must lie in (0, 1], got {tail_fraction}")
    count = max(1, int(ceil(n * tail_fraction)))
    return slice(n - count, n)


def pointwise_exponents(mu: CircleMeasure, eps_grid: Sequence[float], tail_fraction: float = 0.5) -> ExponentEstimate:
    """
    min / max of ln μ(A_ε)/ln ε over the tail of a strictly decreasing ε grid.

    Both exponents are +∞ when some tail arc has zero mass.
    """
    eps = np.asarray(eps_grid, dtype=float)
    if eps.ndim != 1 or eps.size < MIN_EXPONENT_SCALES:
        raise UsageError(f"❌ [Exponents] need at least {MIN_EXPONENT_SCALES} scales, got {eps.size}")
    if np.any(np.diff(eps) >= 0.0):
        raise UsageError("❌ [Exponents] ε grid must be strictly decreasing")
    scales = arc_scan(mu, eps)
    tail = scales[tail_slice(len(scales), tail_fraction)]
    if any(m == 0.0 for _, m, _ in tail):
        logger.debug("🔵 [Exponents] zero-mass arc in the tail, exponents set to +inf")
        return ExponentEstimate(np.inf, np.inf, scales, tail_fraction)
    ratios = np.array([r for _, _, r in tail], dtype=float)
    ratios = ratios[~np.isnan(ratios)]
    if ratios.size == 0:
        raise UsageError("❌ [Exponents] tail contains only ε = 1; extend the grid")
    return ExponentEstimate(float(ratios.min()), float(ratios.max()), scales, tail_fraction)


# ---- kernel functionals ----

def integrate(mu: CircleMeasure, func, frequency: float) -> complex:
    """∫ func(θ) dμ(θ); density parts use panels resolving e^{i·frequency·θ}."""
    angles, weights, segments = mu.flatten()
    total: complex = complex(np.sum(weights * func(angles))) if angles.size else 0j
    if segments:
        h = panel_width_for(frequency)
        for seg in segments:
            for nodes, w in iter_segment_rules(seg.c, seg.alpha, seg.lo, seg.hi, h):
                total += complex(np.sum(w * func(nodes)))
    return total


def fejer_functional(mu: CircleMeasure, K: int) -> float:
    """(1/K²)∫|D_K(θ)|² dμ(θ)."""
    if K < 1:
        raise DomainError(f"❌ [Measure] K must be >= 1, got {K}")
    if K == 1:
        return mu.total_mass
    value = integrate(mu, lambda t: fejer_weight(t, K), float(K)).real
    return max(value, 0.0)


def fourier_coefficient(mu: CircleMeasure, j: int) -> complex:
    """μ̂(j) = ∫ e^{ijθ} dμ(θ)."""
    return integrate(mu, lambda t: np.exp(1j * j * t), float(abs(j)))


def fourier_coefficients(mu: CircleMeasure, lags: Sequence[int], resolution: Optional[float] = None) -> np.ndarray:
    """μ̂(j) for many lags on one shared node set (resolving max |lag| by default)."""
    lag_arr = np.asarray(lags, dtype=float)
    out = np.zeros(lag_arr.size, dtype=complex)
    angles, weights, segments = mu.flatten()
    if angles.size:
        out += np.exp(1j * np.outer(lag_arr, angles)) @ weights
    if segments:
        freq = resolution if resolution is not None else float(np.max(np.abs(lag_arr), initial=0.0))
        h = panel_width_for(freq)
        block = max(1, 4_000_000 // max(lag_arr.size, 1))
        for seg in segments:
            for nodes, w in iter_segment_rules(seg.c, seg.alpha, seg.lo, seg.hi, h):
                for start in range(0, nodes.size, block):
                    n = nodes[start:start + block]
                    out += np.exp(1j * np.outer(lag_arr, n)) @ w[start:start + block]
    return out


MajorantForm = Literal["sharp", "coarse"]
# The majorant materialises all K sector masses.
MAJORANT_LIMIT = 1 << 24


def kachurovskii_majorant(mu: CircleMeasure, K: int, form: MajorantForm = "sharp") -> float:
    """
    Sector-sum upper bound for the Fejér functional.

    sharp:  μ(S_1)/K² + (1/K²) Σ_{j=1}^{K−1} (2j+1) μ(S_j)
    coarse: μ(S_1)/K² + (4/K²) Σ_{j=1}^{K−1} j μ(S_j)
    """
    if K < 1:
        raise DomainError(f"❌ [Measure] K must be >= 1, got {K}")
    if K > MAJORANT_LIMIT:
        raise UsageError(f"❌ [Measure] majorant needs K <= {MAJORANT_LIMIT}, got {K}")
    s = sector_masses(mu, K)
    k2 = float(K) * float(K)
    j = np.arange(1, K + 1, dtype=float)
    if form == "sharp":
        return float((s[0] + np.sum((2.0 * j[:-1] + 1.0) * s[:-1])) / k2)
    if form == "coarse":
        return float((s[0] + 4.0 * np.sum(j[:-1] * s[:-1])) / k2)
    raise UsageError(f"❌ [Measure] unknown majorant form: {form}")


__all__ = [
    "MeasureKind",
    "PowerLawSegment",
    "CircleMeasure",
    "ExponentEstimate",
    "arc_mass",
    "arc_masses",
    "sector_mass",
    "sector_masses",
    "atom_at_one",
    "arc_scan",
    "tail_slice",
    "pointwise_exponents",
    "integrate",
    "fejer_functional",
    "fourier_coefficient",
    "fourier_coefficients",
    "MAJORANT_LIMIT",
    "kachurovskii_majorant",
]
