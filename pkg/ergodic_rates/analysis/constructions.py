"""
Explicit witnesses for the two density statements about generic vectors.

truncation:   ψ_n drops the spectral mass in 0 < |θ| <= 1/n and decays like 16n²/K².
perturbation: ψ_m = ψ + η/m with a slowly decaying η keeps K^ε b(K) growing.
"""
import math
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from ergodic_rates.analysis.report import MarginPoint, VerificationReport
from ergodic_rates.analysis.verify import INEQUALITY_TOLERANCE
from ergodic_rates.core.errors import UsageError
from ergodic_rates.core.logging import logger
from ergodic_rates.measures.circle import CircleMeasure, arc_masses, fejer_functional
from ergodic_rates.measures.designer import unit_power_law
from ergodic_rates.models.unitary import DiagonalUnitary, StateVector, cesaro_deviation_norm_sq, truncate

UNIT_MASS_TOLERANCE = 1e-9


def truncation_construction(
    U: DiagonalUnitary,
    psi: StateVector,
    n: Union[int, Iterable[int]],
    K_grid: Sequence[int],
) -> VerificationReport:
    """b_{ψ_n}(K) <= 16n²‖ψ_n‖²/K² for each n, and ‖ψ − ψ_n‖ nonincreasing in n."""
    claim = "thm17_truncation"
    n_values = sorted({n} if isinstance(n, int) else set(int(v) for v in n))
    if not n_values:
        raise UsageError(f"❌ [{claim}] need at least one truncation index")
    points: List[MarginPoint] = []
    constants: Dict[str, float] = {}
    previous: Optional[float] = None
    for idx in n_values:
        psi_n = truncate(U, psi, idx)
        norm_sq = psi_n.norm_sq
        for K in K_grid:
            k = float(K)
            bound = 16.0 * idx * idx * norm_sq / (k * k)
            points.append((int(K), bound - cesaro_deviation_norm_sq(U, psi_n, int(K)), "K"))
        distance = (psi - psi_n).norm
        constants[f"distance_n{idx}"] = distance
        if previous is not None:
            points.append((idx, previous - distance, "n"))
        previous = distance
    return VerificationReport.from_margins(claim, points, tolerance=INEQUALITY_TOLERANCE, constants=constants)


def _growth(values: Sequence[float]) -> float:
    n = len(values)
    split = n - max(1, n // 4)
    head = max(values[:split]) if split > 0 else 0.0
    tail = max(values[split:])
    if head <= 0.0:
        return math.inf if tail > 0.0 else 0.0
    return tail / head


def _gap_envelope(U: DiagonalUnitary, psi: StateVector, K_values: Sequence[int]) -> np.ndarray:
    """b_ψ(K) <= ‖ψ − ψ*‖² / (K² sin²(θ_min/2)), θ_min the smallest |θ| ≠ 0 carrying mass; capped at ‖ψ − ψ*‖²."""
    weights = np.abs(psi.coefficients) ** 2
    moving = (U.phases != 0.0) & (weights > 0.0)
    mass = float(weights[moving].sum())
    K_arr = np.asarray(K_values, dtype=float)
    if mass == 0.0:
        return np.zeros_like(K_arr)
    s = math.sin(0.5 * float(np.min(np.abs(U.phases[moving]))))
    return np.minimum(mass, mass / (K_arr * K_arr * s * s))


def perturbation_construction(
    U: DiagonalUnitary,
    psi: StateVector,
    eps: float,
    m_grid: Sequence[int],
    K_grid: Sequence[int],
    *,
    eta: Optional[CircleMeasure] = None,
    growth_threshold: float = 1.0,
) -> VerificationReport:
    """
    ψ_m = ψ + η/m with η orthogonal to the model space, so μ_{ψ_m} = μ_ψ + μ_η/m².

    For every m the sequence K^ε b_{ψ_m}(K) must still grow at the end of the
    grid (last-quarter max over the earlier max above `growth_threshold`).
    The termwise bounds behind the growth are checked on their own:
    b_η(K) >= μ_η(A_{1/2K})/4 and b_ψ(K) <= gap envelope, and then
    √b_m >= √lower_η/m − √upper_ψ on the grid.
    """
    claim = "thm17_perturbation"
    if not (0.0 < eps < 1.0):
        raise UsageError(f"❌ [{claim}] ε must lie in (0, 1), got {eps}")
    if len(K_grid) < 2:
        raise UsageError(f"❌ [{claim}] need at least two grid points")
    eta_measure = eta if eta is not None else unit_power_law(eps / 3.0)
    eta_mass = eta_measure.total_mass
    if eta_mass == 0.0:
        raise UsageError(f"❌ [{claim}] η must be nonzero")
    if abs(eta_mass - 1.0) > UNIT_MASS_TOLERANCE:
        raise UsageError(f"❌ [{claim}] η must be a unit vector, got ‖η‖² = {eta_mass:.6g}")
    eta_dev = eta_measure.without_atom_at_one()

    K_values = [int(K) for K in K_grid]
    b_psi = np.array([cesaro_deviation_norm_sq(U, psi, K) for K in K_values])
    b_eta = np.array([fejer_functional(eta_dev, K) for K in K_values])
    lower_eta = 0.25 * arc_masses(eta_dev, [0.5 / K for K in K_values])
    upper_psi = _gap_envelope(U, psi, K_values)
    weights = np.array([float(K) ** eps for K in K_values])

    points: List[MarginPoint] = []
    for K, lo, b in zip(K_values, lower_eta, b_eta):
        points.append((K, float(b - lo), "K"))
    for K, up, b in zip(K_values, upper_psi, b_psi):
        points.append((K, float(up - b), "K"))

    constants: Dict[str, float] = {"eps": eps}
    for m in sorted(int(v) for v in m_grid):
        if m < 1:
            raise UsageError(f"❌ [{claim}] m must be >= 1, got {m}")
        b_m = b_psi + b_eta / (m * m)
        certified = np.sqrt(lower_eta) / m - np.sqrt(upper_psi)
        for K, root, floor in zip(K_values, np.sqrt(b_m), certified):
            points.append((K, float(root - floor), "K"))
        positive = [K for K, floor in zip(K_values, certified) if floor > 0.0]
        constants[f"certified_K_m{m}"] = float(positive[0]) if positive else math.inf
        scaled = list(weights * b_m)
        growth = _growth(scaled)
        points.append((m, growth - growth_threshold, "m"))
        constants[f"growth_m{m}"] = growth
        constants[f"max_K_m{m}"] = float(K_values[int(np.argmax(scaled))])
        constants[f"onset_K_m{m}"] = float(K_values[int(np.argmin(scaled))])
        logger.debug("🌱 [{}] m={} growth {:.3g}", claim, m, growth)
    return VerificationReport.from_margins(claim, points, tolerance=INEQUALITY_TOLERANCE, constants=constants)


__all__ = ["truncation_construction", "perturbation_construction"]
