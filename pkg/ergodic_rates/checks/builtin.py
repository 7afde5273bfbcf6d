"""
Built-in checks. Each one reads the shared CheckContext and returns a report.
"""
from typing import List

from ergodic_rates.analysis.constructions import perturbation_construction, truncation_construction
from ergodic_rates.analysis.report import VerificationReport
from ergodic_rates.analysis.verify import (
    EXPONENT_TOLERANCE,
    corollary_check,
    verify_cesaro_identity,
    verify_exponent_match,
    verify_kachurovskii_forward,
    verify_kachurovskii_reverse,
    verify_lemma_inequality,
    verify_spectral_gap_bound,
    verify_vnet_limit,
    verify_weak_decay,
)
from ergodic_rates.checks.registry import CheckContext, check_registry
from ergodic_rates.models.spectral import DiagonalModel


def _alpha(ctx: CheckContext, check_id: str) -> float:
    return float(ctx.param(check_id, "alpha", ctx.default_alpha))


def _matched_eps(ctx: CheckContext, check_id: str) -> List[float]:
    """ε = 1/K on the K grid unless the check asks for the configured ε grid."""
    if ctx.param(check_id, "matched_grid", True):
        return [1.0 / float(K) for K in ctx.k_grid]
    return list(ctx.eps_grid)


@check_registry.register(
    id="thm11_vnet",
    label="Cesàro averages converge to the fixed part (kernel envelope bound)",
    category="Limit",
    requires=["atoms"],
)
def vnet_limit(ctx: CheckContext) -> VerificationReport:
    return verify_vnet_limit(ctx.model, ctx.k_grid)


@check_registry.register(
    id="thm12_gap_bound",
    label="spectral gap γ forces max|D_K|/K <= 1/(K sin(γ/2)) <= 4/(γK)",
    category="Inequality",
    requires=["atoms", "gap"],
    params={"gamma": None},
)
def gap_bound(ctx: CheckContext) -> VerificationReport:
    gamma = float(ctx.param("thm12_gap_bound", "gamma", ctx.gap))
    return verify_spectral_gap_bound(ctx.model, gamma, ctx.k_grid)


@check_registry.register(
    id="lemma13_identity",
    label="direct Cesàro norm equals the Fejér functional of the spectral measure",
    category="Identity",
)
def cesaro_identity(ctx: CheckContext) -> VerificationReport:
    return verify_cesaro_identity(ctx.model, ctx.k_grid)


@check_registry.register(
    id="thm15_forward",
    label="arc bound μ(A_ε) <= C ε^α implies decay b(K) <= C' K^-α",
    category="Rate",
    requires=["measure", "alpha"],
    params={"alpha": None},
)
def kachurovskii_forward(ctx: CheckContext) -> VerificationReport:
    return verify_kachurovskii_forward(
        ctx.measure, _alpha(ctx, "thm15_forward"), ctx.k_grid, ctx.eps_grid,
        series=ctx.require_series(), tail_fraction=ctx.tail_fraction,
    )


@check_registry.register(
    id="thm15_reverse",
    label="decay b(K) <= C K^-α implies arc bound μ(A_ε) <= C' ε^α",
    category="Rate",
    requires=["measure", "alpha"],
    params={"alpha": None},
)
def kachurovskii_reverse(ctx: CheckContext) -> VerificationReport:
    return verify_kachurovskii_reverse(
        ctx.require_series(), ctx.measure, _alpha(ctx, "thm15_reverse"), ctx.eps_grid,
        tail_fraction=ctx.tail_fraction,
    )


@check_registry.register(
    id="thm16_exponents",
    label="decay-rate liminf/limsup equal the lower/upper pointwise exponents at z = 1",
    category="Exponent",
    requires=["measure"],
    params={"tolerance": EXPONENT_TOLERANCE, "matched_grid": True},
)
def exponent_match(ctx: CheckContext) -> VerificationReport:
    return verify_exponent_match(
        ctx.require_series(), ctx.measure, _matched_eps(ctx, "thm16_exponents"),
        tail_fraction=ctx.tail_fraction,
        tolerance=float(ctx.param("thm16_exponents", "tolerance", EXPONENT_TOLERANCE)),
    )


@check_registry.register(
    id="lemma31_majorant",
    label="μ(A_{1/2K})/4 <= Fejér functional <= sector-sum majorant",
    category="Inequality",
    requires=["measure"],
    params={"form": "sharp"},
)
def majorant(ctx: CheckContext) -> VerificationReport:
    return verify_lemma_inequality(
        ctx.measure, ctx.k_grid, series=ctx.require_series(),
        form=str(ctx.param("lemma31_majorant", "form", "sharp")),
    )


@check_registry.register(
    id="thm17_truncation",
    label="truncated vectors ψ_n decay like 16n²‖ψ_n‖²/K²",
    category="Construction",
    requires=["diagonal"],
    params={"n_values": [1, 2, 8, 32]},
)
def truncation(ctx: CheckContext) -> VerificationReport:
    assert isinstance(ctx.model, DiagonalModel)
    n_values = ctx.param("thm17_truncation", "n_values", [1, 2, 8, 32])
    return truncation_construction(ctx.model.unitary, ctx.model.psi, n_values, ctx.k_grid)


@check_registry.register(
    id="thm17_perturbation",
    label="perturbed vectors ψ + η/m keep K^ε b(K) growing",
    category="Construction",
    requires=["diagonal"],
    params={"eps": 0.3, "m_grid": [1, 2, 4, 8], "growth_threshold": 1.0},
)
def perturbation(ctx: CheckContext) -> VerificationReport:
    assert isinstance(ctx.model, DiagonalModel)
    return perturbation_construction(
        ctx.model.unitary, ctx.model.psi,
        float(ctx.param("thm17_perturbation", "eps", 0.3)),
        ctx.param("thm17_perturbation", "m_grid", [1, 2, 4, 8]),
        ctx.k_grid,
        growth_threshold=float(ctx.param("thm17_perturbation", "growth_threshold", 1.0)),
    )


@check_registry.register(
    id="cor18",
    label="witnesses of both rate properties have d- ≈ 0 and d+ >= 2",
    category="Exponent",
    requires=["measure"],
    params={"rate_eps": 0.25, "matched_grid": True},
)
def corollary(ctx: CheckContext) -> VerificationReport:
    return corollary_check(
        ctx.measure, ctx.require_series(), _matched_eps(ctx, "cor18"),
        rate_eps=float(ctx.param("cor18", "rate_eps", 0.25)), tail_fraction=ctx.tail_fraction,
    )


@check_registry.register(
    id="prop23_weak_decay",
    label="correlations of absolutely continuous spectral parts decay (weak convergence)",
    category="Limit",
    requires=["measure"],
    params={"early": [16, 32], "late": [4096, 8192], "samples": 33},
)
def weak_decay(ctx: CheckContext) -> VerificationReport:
    early = ctx.param("prop23_weak_decay", "early", [16, 32])
    late = ctx.param("prop23_weak_decay", "late", [4096, 8192])
    return verify_weak_decay(
        ctx.measure, early=(int(early[0]), int(early[1])), late=(int(late[0]), int(late[1])),
        samples=int(ctx.param("prop23_weak_decay", "samples", 33)),
    )


__all__ = [
    "vnet_limit",
    "gap_bound",
    "cesaro_identity",
    "kachurovskii_forward",
    "kachurovskii_reverse",
    "exponent_match",
    "majorant",
    "truncation",
    "perturbation",
    "corollary",
    "weak_decay",
]
