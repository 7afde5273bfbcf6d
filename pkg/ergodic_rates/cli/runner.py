"""
Builds the configured object, evaluates requested checks concurrently and
collects everything the artifact writer needs.
"""
import asyncio
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ergodic_rates.analysis.report import VerificationReport
from ergodic_rates.analysis.series import (
    DecayExponents,
    RateSeries,
    decay_series,
    estimate_decay_exponents,
    geometric_eps_grid,
    geometric_k_grid,
)
from ergodic_rates.checks import CheckContext, check_registry
from ergodic_rates.core import trace
from ergodic_rates.core.errors import UsageError
from ergodic_rates.core.logging import logger
from ergodic_rates.measures.circle import CircleMeasure, ExponentEstimate, arc_scan, pointwise_exponents
from ergodic_rates.measures.designer import (
    LacunarySpec,
    gap_measure,
    lacunary_measure,
    power_law_measure,
    unit_power_law_coefficient,
)
from ergodic_rates.models.koopman import KoopmanInstance
from ergodic_rates.models.spectral import DiagonalModel, KoopmanModel, MeasureModel, SpectralModel
from ergodic_rates.models.unitary import DiagonalUnitary, StateVector, random_diagonal_model
from ergodic_rates.cli.config import (
    DiagonalSpec,
    ExperimentConfig,
    GapConfig,
    KoopmanSpec,
    LacunaryConfig,
    PowerLawSpec,
    RandomDiagonalSpec,
)


@dataclass
class BuiltModel:
    model: SpectralModel
    gap: Optional[float] = None
    default_alpha: Optional[float] = None


@dataclass
class RunResult:
    config: ExperimentConfig
    series: RateSeries
    decay: DecayExponents
    arcs: Optional[List[Tuple[float, float, float]]]
    exponents: Optional[ExponentEstimate]
    model_label: str = ""
    reports: List[VerificationReport] = field(default_factory=list)
    durations_ms: Dict[str, float] = field(default_factory=dict)
    elapsed_s: float = 0.0

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.reports)

    @property
    def failures(self) -> List[VerificationReport]:
        return [r for r in self.reports if not r.holds]


def _build_measure(spec: Any) -> Tuple[CircleMeasure, Optional[float], Optional[float]]:
    if isinstance(spec, PowerLawSpec):
        c = spec.c if spec.c is not None else unit_power_law_coefficient(spec.alpha)
        return power_law_measure(spec.alpha, c), None, spec.alpha
    if isinstance(spec, LacunaryConfig):
        design = LacunarySpec(
            low_exponent=spec.low_exponent,
            high_exponent=spec.high_exponent,
            depth=spec.depth,
            scale_base=spec.scale_base,
            ramp=spec.ramp,
        )
        return lacunary_measure(design), None, None
    if isinstance(spec, GapConfig):
        return gap_measure(spec.gamma, spec.atoms), spec.gamma, None
    raise UsageError(f"❌ [Runner] unsupported measure spec: {type(spec).__name__}")


def build_model(config: ExperimentConfig) -> BuiltModel:
    """Turns the measure or model section into a SpectralModel; seeded for random models."""
    if config.measure is not None:
        mu, gap, alpha = _build_measure(config.measure)
        return BuiltModel(MeasureModel(mu), gap=gap, default_alpha=alpha)

    spec = config.model
    if isinstance(spec, DiagonalSpec):
        unitary = DiagonalUnitary.from_angles(spec.phases)
        return BuiltModel(DiagonalModel(unitary, StateVector.from_pairs(spec.psi)), gap=spec.gap)
    if isinstance(spec, KoopmanSpec):
        inst = KoopmanInstance.build(
            spec.map,
            [(freq, complex(re, im)) for freq, re, im in spec.observable],
            alpha=spec.alpha,
            symbols=spec.symbols,
        )
        return BuiltModel(KoopmanModel(inst))
    if isinstance(spec, RandomDiagonalSpec):
        rng = np.random.default_rng(config.seed)
        unitary, psi = random_diagonal_model(rng, spec.dim, gap=spec.gap, fixed_fraction=spec.fixed_fraction)
        return BuiltModel(DiagonalModel(unitary, psi), gap=spec.gap)
    raise UsageError(f"❌ [Runner] unsupported model spec: {type(spec).__name__}")


def prepare_context(config: ExperimentConfig) -> CheckContext:
    """
    Builds the check context and rejects checks that cannot apply.

    Raises UsageError before anything is computed or written.
    """
    built = build_model(config)
    ctx = CheckContext(
        model=built.model,
        k_grid=geometric_k_grid(config.k_grid.min_exp, config.k_grid.max_exp, config.k_grid.base),
        eps_grid=geometric_eps_grid(config.eps_grid.min_exp, config.eps_grid.max_exp, config.eps_grid.base),
        tail_fraction=config.tail_fraction,
        params={k: dict(v) for k, v in config.check_params.items()},
        gap=built.gap,
        default_alpha=built.default_alpha,
    )
    problems = []
    for check_id in config.checks:
        reasons = check_registry.missing_requirements(check_id, ctx)
        if reasons:
            problems.append(f"  {check_id}: {'; '.join(reasons)}")
    if problems:
        raise UsageError(
            f"❌ [Runner] checks do not apply to {built.model.describe()}:\n" + "\n".join(problems)
        )
    return ctx


def _run_one(check_id: str, ctx: CheckContext) -> VerificationReport:
    meta = check_registry.get(check_id)
    assert meta is not None and meta.runner is not None
    with trace.span("check", check_id=check_id):
        return meta.runner(ctx)


async def run_checks(check_ids: List[str], ctx: CheckContext) -> List[VerificationReport]:
    """Evaluates checks in worker threads; a check that raises becomes a failed report."""
    ordered = sorted(set(check_ids))
    if not ordered:
        return []
    logger.info("🔀 [Runner] Executing {} checks in parallel", len(ordered))
    coroutines = [asyncio.to_thread(_run_one, check_id, ctx) for check_id in ordered]
    outcomes = await asyncio.gather(*coroutines, return_exceptions=True)

    reports: List[VerificationReport] = []
    for check_id, outcome in zip(ordered, outcomes):
        if isinstance(outcome, BaseException):
            logger.error("❌ [Runner] Check '{}' raised exception: {}", check_id, outcome)
            reports.append(VerificationReport.failed(check_id, f"error: {outcome}"))
            continue
        level = "INFO" if outcome.holds else "WARNING"
        logger.log(level, "{} [Runner] {} holds={} worst_margin={}",
                   "✅" if outcome.holds else "⚠️", check_id, outcome.holds, outcome.worst_margin)
        for note in outcome.advisories:
            logger.warning("⚠️ [Runner] {}: {}", check_id, note)
        reports.append(outcome)
    return reports


def execute(config: ExperimentConfig, ctx: Optional[CheckContext] = None) -> RunResult:
    """Full run: decay series, arc scan and checks. No files are written here."""
    started = time.perf_counter()
    ctx = ctx or prepare_context(config)

    durations: Dict[str, float] = {}

    def _record(event: str, data: Dict[str, Any]) -> None:
        if event == "span_end" and data.get("name") == "check":
            durations[str(data.get("check_id"))] = float(data.get("duration_ms", 0.0))

    token = trace.set_context(run=config.name)
    trace.subscribe(_record)
    try:
        with trace.span("series", model=ctx.model.describe()):
            ctx.series = decay_series(ctx.model, ctx.k_grid)
        decay = estimate_decay_exponents(ctx.series, ctx.tail_fraction)
        arcs: Optional[List[Tuple[float, float, float]]] = None
        exponents: Optional[ExponentEstimate] = None
        if ctx.has_measure:
            arcs = arc_scan(ctx.measure, ctx.eps_grid)
            exponents = pointwise_exponents(ctx.measure, ctx.eps_grid, ctx.tail_fraction)
        reports = asyncio.run(run_checks(config.checks, ctx))
    finally:
        trace.unsubscribe(_record)
        trace.reset_context(token)

    elapsed = time.perf_counter() - started
    logger.info("🏁 [Runner] {} finished in {:.2f}s", config.name, elapsed)
    return RunResult(
        config=config,
        series=ctx.series,
        decay=decay,
        arcs=arcs,
        exponents=exponents,
        model_label=ctx.model.describe(),
        reports=reports,
        durations_ms=durations,
        elapsed_s=elapsed,
    )


__all__ = ["BuiltModel", "RunResult", "build_model", "prepare_context", "run_checks", "execute"]
