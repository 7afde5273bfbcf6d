"""
Numerical certificates for the rate theory of Cesàro averages.

Every verifier returns a VerificationReport. Broken hypotheses give a
failed report (precondition) or a vacuous pass (theorem not applicable),
never an exception; exceptions are kept for misuse such as asking for a gap
bound on a model with absolutely continuous spectrum.
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ergodic_rates.analysis.report import MarginPoint, VerificationReport, relative_gap, stability_margin
from ergodic_rates.analysis.series import RateSeries, estimate_decay_exponents
from ergodic_rates.core.errors import UsageError
from ergodic_rates.core.logging import logger
from ergodic_rates.measures.circle import (
    MAJORANT_LIMIT,
    CircleMeasure,
    arc_masses,
    fejer_functional,
    kachurovskii_majorant,
    pointwise_exponents,
    tail_slice,
)
from ergodic_rates.measures.designer import in_gap
from ergodic_rates.measures.kernels import fejer_weight
from ergodic_rates.models.spectral import SpectralModel, weak_convergence_scan

INEQUALITY_TOLERANCE = 1e-12
EXPONENT_TOLERANCE = 0.1
# The lag double sum averages O(‖ψ − ψ*‖²) terms, so it cannot resolve b(K) below this multiple of it.
LAG_ROUNDOFF = 8.0 * float(np.finfo(float).eps)


def _require_atoms(model: SpectralModel, claim: str) -> Tuple[np.ndarray, np.ndarray]:
    atoms = model.moving_atoms()
    if atoms is None:
        raise UsageError(f"❌ [{claim}] needs a model with pure point spectral data, got {model.describe()}")
    return atoms


def _max_kernel(theta: np.ndarray, K: int) -> float:
    if theta.size == 0:
        return 0.0
    return float(np.max(fejer_weight(theta, K)))


def _gap_kernel_max(theta: np.ndarray, k: np.ndarray, block: int = 4096) -> np.ndarray:
    """max_θ |D_K(θ)|/K for every K; θ stays away from 0 so the closed form is safe."""
    out = np.zeros(k.size)
    if theta.size == 0:
        return out
    den = np.abs(np.sin(0.5 * theta))[None, :]
    for start in range(0, k.size, block):
        kb = k[start:start + block, None]
        out[start:start + block] = np.max(np.abs(np.sin(0.5 * kb * theta[None, :])) / (kb * den), axis=1)
    return out


def verify_vnet_limit(model: SpectralModel, K_grid: Sequence[int]) -> VerificationReport:
    """b(K) <= max_{θ≠0}|D_K(θ)|²/K² · ‖ψ − ψ*‖², and the envelope shrinks along the grid."""
    claim = "thm11_vnet"
    theta, weights = _require_atoms(model, claim)
    mass = float(weights.sum())
    values = model.deviation_series(K_grid)
    envelope = [_max_kernel(theta, int(K)) * mass for K in K_grid]
    points: List[MarginPoint] = [(int(K), env - b) for K, env, b in zip(K_grid, envelope, values)]
    if len(K_grid) > 1:
        points.append((int(K_grid[-1]), envelope[0] - envelope[-1]))
    return VerificationReport.from_margins(
        claim, points, tolerance=INEQUALITY_TOLERANCE, witness_kind="K",
        constants={"final_b": float(values[-1]) if len(values) else 0.0,
                   "final_envelope": envelope[-1] if envelope else 0.0,
                   "deviation_mass": mass},
    )


def verify_spectral_gap_bound(model: SpectralModel, gamma: float, K_grid: Sequence[int]) -> VerificationReport:
    """
    measured(K) = max_{θ≠0}|D_K(θ)|/K  <=  1/(K sin(γ/2))  <=  4/(γK).

    The maximum runs over every eigenphase of the operator, which makes it the
    norm of the Cesàro average off the fixed space; ψ plays no part.

    Both links are checked separately; the reported margin is the smaller one.
    """
    claim = "thm12_gap_bound"
    if not (0.0 < gamma < math.pi):
        raise UsageError(f"❌ [{claim}] gap must lie in (0, π), got {gamma}")
    support = model.operator_phases()
    if support is None:
        raise UsageError(f"❌ [{claim}] needs a model with pure point spectrum, got {model.describe()}")
    if np.any(in_gap(support, gamma)):
        bad = float(support[in_gap(support, gamma)][0])
        raise UsageError(f"❌ [{claim}] eigenphase {bad:.6g} lies inside the gap γ={gamma:.6g}")
    k = np.array([float(K) for K in K_grid])
    measured = _gap_kernel_max(support, k)
    sharp = 1.0 / (k * math.sin(gamma / 2.0))
    coarse = 4.0 / (gamma * k)
    s1, s2 = sharp - measured, coarse - sharp
    points: List[MarginPoint] = [(int(K), float(m)) for K, m in zip(K_grid, np.minimum(s1, s2))]
    return VerificationReport.from_margins(
        claim, points, tolerance=INEQUALITY_TOLERANCE, witness_kind="K",
        constants={"gamma": gamma,
                   "sharp_link_margin": float(s1.min(initial=math.inf)),
                   "coarse_link_margin": float(s2.min(initial=math.inf))},
    )


def verify_cesaro_identity(model: SpectralModel, K_grid: Sequence[int]) -> VerificationReport:
    """
    Direct b(K) against the Fejér functional of μ_{ψ−ψ*} and against the lag double sum.

    Only routes computed independently of the direct one produce margins. A K
    with no such route adds no margin and is named in the advisories.
    """
    claim = "lemma13_identity"
    advisories: List[str] = []
    mu: Optional[CircleMeasure] = None
    if model.spectral_route_is_direct:
        advisories.append(f"spectral route coincides with the direct route for {model.describe()}")
    else:
        try:
            mu = model.spectral_measure()
        except UsageError as exc:
            advisories.append(f"spectral route skipped: {exc}")
    limit = model.identity_limit
    lag_floor = LAG_ROUNDOFF * abs(model.correlation(0).real)
    points: List[MarginPoint] = []
    skipped = 0
    unchecked: List[int] = []
    for K in K_grid:
        direct = model.deviation_norm_sq(int(K))
        floor = 1e-24 * max(direct, 1.0)
        independent = 0
        if mu is not None:
            points.append((int(K), -relative_gap(direct, fejer_functional(mu, int(K)), floor)))
            independent += 1
        if limit is None or K <= limit:
            points.append((int(K), -relative_gap(direct, model.correlation_route(int(K)), max(floor, lag_floor))))
            independent += 1
        else:
            skipped += 1
        if not independent:
            unchecked.append(int(K))
    if skipped:
        advisories.append(f"lag double sum evaluated only for K <= {limit} ({skipped} grid points skipped)")
    if unchecked:
        advisories.append(f"no independent route for K in [{unchecked[0]}, {unchecked[-1]}] ({len(unchecked)} grid points)")
    return VerificationReport.from_margins(
        claim, points, tolerance=model.identity_tolerance, witness_kind="K", advisories=advisories,
        constants={"checked_points": float(len(K_grid) - len(unchecked)), "unchecked_points": float(len(unchecked))},
    )


def _arc_constant(mu: CircleMeasure, alpha: float, eps_grid: Sequence[float]) -> np.ndarray:
    eps = np.asarray(eps_grid, dtype=float)
    return eps ** (-alpha) * arc_masses(mu, eps)


def verify_kachurovskii_forward(
    mu: CircleMeasure,
    alpha: float,
    K_grid: Sequence[int],
    eps_grid: Sequence[float],
    *,
    series: Optional[RateSeries] = None,
    tail_fraction: float = 0.5,
) -> VerificationReport:
    """μ(A_ε) <= C ε^α on the ε grid implies K^α b(K) stays bounded on the K grid."""
    claim = "thm15_forward"
    if not (0.0 < alpha < 2.0):
        raise UsageError(f"❌ [{claim}] α must lie in (0, 2), got {alpha}")
    arc = _arc_constant(mu, alpha, eps_grid)
    pre_margin, pre_idx = stability_margin(list(arc))
    arc_c = float(np.max(arc)) if arc.size else 0.0
    if pre_margin < 0.0:
        logger.info("🧾 [{}] arc bound precondition fails at ε={:.3e}", claim, eps_grid[pre_idx])
        return VerificationReport.failed(
            claim, "arc-bound precondition fails: ε^-α μ(A_ε) is not stable on the ε grid",
            witness=float(eps_grid[pre_idx]), witness_kind="eps", margin=pre_margin,
            constants={"arc_constant": arc_c},
        )
    if series is None:
        series = RateSeries.from_arrays(K_grid, [fejer_functional(mu, int(K)) for K in K_grid])
    scaled = [float(K) ** alpha * b for K, b in series.entries]
    margin, idx = stability_margin(scaled)
    tail = scaled[tail_slice(len(scaled), tail_fraction)]
    return VerificationReport.from_margins(
        claim, [(series.K[idx], margin)], tolerance=0.0, witness_kind="K",
        constants={"arc_constant": arc_c, "decay_constant": max(scaled), "decay_constant_tail": max(tail)},
    )


def verify_kachurovskii_reverse(
    series: RateSeries,
    mu: CircleMeasure,
    alpha: float,
    eps_grid: Sequence[float],
    *,
    tail_fraction: float = 0.5,
) -> VerificationReport:
    """b(K) <= C K^-α on the K grid implies ε^-α μ(A_ε) stays bounded on the ε grid."""
    claim = "thm15_reverse"
    if not (0.0 < alpha < 2.0):
        raise UsageError(f"❌ [{claim}] α must lie in (0, 2), got {alpha}")
    scaled = [float(K) ** alpha * b for K, b in series.entries]
    pre_margin, pre_idx = stability_margin(scaled)
    decay_c = max(scaled) if scaled else 0.0
    if pre_margin < 0.0:
        logger.info("🧾 [{}] decay precondition fails at K={}", claim, series.K[pre_idx])
        return VerificationReport.failed(
            claim, "decay precondition fails: K^α b(K) is not stable on the K grid",
            witness=series.K[pre_idx], witness_kind="K", margin=pre_margin,
            constants={"decay_constant": decay_c},
        )
    arc = list(_arc_constant(mu, alpha, eps_grid))
    margin, idx = stability_margin(arc)
    tail = arc[tail_slice(len(arc), tail_fraction)]
    return VerificationReport.from_margins(
        claim, [(float(eps_grid[idx]), margin)], tolerance=0.0, witness_kind="eps",
        constants={"decay_constant": decay_c, "arc_constant": max(arc), "arc_constant_tail": max(tail)},
    )


def verify_lemma_inequality(
    mu: CircleMeasure,
    K_grid: Sequence[int],
    *,
    series: Optional[RateSeries] = None,
    form: str = "sharp",
) -> VerificationReport:
    """μ(A_{1/(2K)})/4 <= (1/K²)∫|D_K|² dμ <= sector-sum majorant, for K up to MAJORANT_LIMIT."""
    claim = "lemma31_majorant"
    values = list(series.values) if series is not None else [fejer_functional(mu, int(K)) for K in K_grid]
    pairs = [(int(K), b) for K, b in zip(K_grid, values) if int(K) <= MAJORANT_LIMIT]
    advisories: List[str] = []
    if len(pairs) < len(values):
        advisories.append(f"majorant evaluated only for K <= {MAJORANT_LIMIT} "
                          f"({len(values) - len(pairs)} grid points skipped)")
    lower = arc_masses(mu, [1.0 / (2.0 * float(K)) for K, _ in pairs]) / 4.0
    upper_slack = math.inf
    lower_slack = math.inf
    points: List[MarginPoint] = []
    for (K, b), low in zip(pairs, lower):
        up = kachurovskii_majorant(mu, K, form=form)  # type: ignore[arg-type]
        s_up, s_low = up - b, b - float(low)
        upper_slack = min(upper_slack, s_up)
        lower_slack = min(lower_slack, s_low)
        points.append((K, min(s_up, s_low)))
    return VerificationReport.from_margins(
        claim, points, tolerance=INEQUALITY_TOLERANCE, witness_kind="K",
        constants={"upper_link_margin": upper_slack, "lower_link_margin": lower_slack},
        advisories=advisories,
    )


def verify_exponent_match(
    series: RateSeries,
    mu: CircleMeasure,
    eps_grid: Sequence[float],
    *,
    tail_fraction: float = 0.5,
    tolerance: float = EXPONENT_TOLERANCE,
) -> VerificationReport:
    """Decay liminf / limsup against the lower / upper pointwise exponents."""
    claim = "thm16_exponents"
    decay = estimate_decay_exponents(series, tail_fraction)
    local = pointwise_exponents(mu, eps_grid, tail_fraction)
    constants = {
        "liminf_exp": decay.liminf_exp,
        "limsup_exp": decay.limsup_exp,
        "d_minus": local.d_minus,
        "d_plus": local.d_plus,
    }
    if local.d_plus > 2.0 + tolerance:
        return VerificationReport.vacuous(
            claim, f"hypothesis d+ <= 2 not met (d+ = {local.d_plus:.3g}); exponents reported descriptively",
            constants=constants,
        )
    advisories: List[str] = []
    if decay.advisory:
        advisories.append(decay.advisory)
    if local.d_plus >= 2.0 - tolerance:
        advisories.append("boundary case d+ ≈ 2: the limsup may be attained only along a subsequence")

    def gap(x: float, y: float) -> float:
        if math.isinf(x) and math.isinf(y):
            return 0.0
        return abs(x - y)

    points: List[MarginPoint] = [
        (None, -gap(decay.liminf_exp, local.d_minus), "liminf"),
        (None, -gap(decay.limsup_exp, local.d_plus), "limsup"),
    ]
    return VerificationReport.from_margins(
        claim, points, tolerance=tolerance, constants=constants, advisories=advisories,
    )


def corollary_check(
    mu: CircleMeasure,
    series: RateSeries,
    eps_grid: Sequence[float],
    *,
    rate_eps: float = 0.25,
    tail_fraction: float = 0.5,
) -> VerificationReport:
    """
    On a series showing both rate properties at level ε, i.e.
    liminf ln b/(−ln K) < ε and limsup ln b/(−ln K) > 2 − ε,
    the pointwise exponents satisfy d⁻ <= ε and d⁺ >= 2 − ε.
    """
    claim = "cor18"
    if mu.total_mass == 0.0:
        return VerificationReport.vacuous(claim, "zero measure: nothing to certify")
    decay = estimate_decay_exponents(series, tail_fraction)
    constants = {"liminf_exp": decay.liminf_exp, "limsup_exp": decay.limsup_exp, "rate_eps": rate_eps}
    slow = decay.liminf_exp < rate_eps
    fast = decay.limsup_exp > 2.0 - rate_eps
    if not (slow and fast):
        return VerificationReport.vacuous(
            claim,
            f"hypotheses not met: liminf={decay.liminf_exp:.3g} (< {rate_eps} needed), "
            f"limsup={decay.limsup_exp:.3g} (> {2.0 - rate_eps} needed)",
            constants=constants,
        )
    local = pointwise_exponents(mu, eps_grid, tail_fraction)
    constants.update({"d_minus": local.d_minus, "d_plus": local.d_plus})
    points: List[MarginPoint] = [
        (None, rate_eps - local.d_minus, "d_minus"),
        (None, local.d_plus - (2.0 - rate_eps), "d_plus"),
    ]
    return VerificationReport.from_margins(claim, points, tolerance=INEQUALITY_TOLERANCE, constants=constants)


def verify_weak_decay(
    mu: CircleMeasure,
    *,
    early: Tuple[int, int] = (16, 32),
    late: Tuple[int, int] = (4096, 8192),
    samples: int = 33,
) -> VerificationReport:
    """max |μ̂(j)| over a late window stays below the max over an early window."""
    claim = "prop23_weak_decay"
    early_j = np.unique(np.linspace(early[0], early[1], samples).round().astype(int))
    late_j = np.unique(np.linspace(late[0], late[1], samples).round().astype(int))
    scan = weak_convergence_scan(mu, list(early_j) + list(late_j))
    early_max = scan.window_max(*early)
    late_max = scan.window_max(*late)
    constants = {"early_max": early_max, "late_max": late_max}
    if not mu.has_density:
        return VerificationReport.vacuous(
            claim, scan.advisory or "no absolutely continuous part to scan", constants=constants,
        )
    advisories = [scan.advisory] if scan.advisory else []
    late_idx = [j for j in scan.lags if late[0] <= j <= late[1]]
    witness = late_idx[int(np.argmax([scan.magnitudes[scan.lags.index(j)] for j in late_idx]))] if late_idx else None
    return VerificationReport.from_margins(
        claim, [(witness, early_max - late_max)], tolerance=INEQUALITY_TOLERANCE, witness_kind="j",
        constants=constants, advisories=advisories,
    )


__all__ = [
    "INEQUALITY_TOLERANCE",
    "EXPONENT_TOLERANCE",
    "verify_vnet_limit",
    "verify_spectral_gap_bound",
    "verify_cesaro_identity",
    "verify_kachurovskii_forward",
    "verify_kachurovskii_reverse",
    "verify_lemma_inequality",
    "verify_exponent_match",
    "corollary_check",
    "verify_weak_decay",
]
