import inspect
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from ergodic_rates.analysis.report import VerificationReport
from ergodic_rates.analysis.series import RateSeries
from ergodic_rates.core.errors import UsageError
from ergodic_rates.measures.circle import CircleMeasure
from ergodic_rates.models.spectral import DiagonalModel, SpectralModel


def _docstring(obj: Any) -> str:
    return (inspect.getdoc(obj) or "").strip()


def _resolve_description(explicit: Optional[str], target: Any = None) -> str:
    if explicit and explicit.strip():
        return explicit.strip()
    if target is None:
        return ""
    return _docstring(target)


@dataclass
class CheckContext:
    """Everything a check may read. Built once per run and shared read-only across workers."""

    model: SpectralModel
    k_grid: List[int]
    eps_grid: List[float]
    tail_fraction: float = 0.5
    params: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    gap: Optional[float] = None
    default_alpha: Optional[float] = None
    series: Optional[RateSeries] = None
    _measure: Optional[CircleMeasure] = None
    _measure_error: Optional[str] = None

    def __post_init__(self) -> None:
        try:
            self._measure = self.model.spectral_measure()
        except UsageError as exc:
            self._measure_error = str(exc)

    def param(self, check_id: str, name: str, default: Any = None) -> Any:
        return self.params.get(check_id, {}).get(name, default)

    @property
    def has_measure(self) -> bool:
        return self._measure is not None

    @property
    def measure(self) -> CircleMeasure:
        if self._measure is None:
            raise UsageError(self._measure_error or "❌ [Check] spectral measure is not representable")
        return self._measure

    def require_series(self) -> RateSeries:
        if self.series is None:
            raise UsageError("❌ [Check] decay series has not been computed")
        return self.series


# requirement name -> (predicate, explanation)
_REQUIREMENTS: Dict[str, Callable[[CheckContext, str], Optional[str]]] = {
    "measure": lambda ctx, cid: None if ctx.has_measure else (ctx._measure_error or "spectral measure unavailable"),
    "atoms": lambda ctx, cid: None if ctx.model.moving_atoms() is not None else "needs pure point spectral data",
    "diagonal": lambda ctx, cid: None if isinstance(ctx.model, DiagonalModel) else "needs a diagonal model",
    "gap": lambda ctx, cid: None if (ctx.param(cid, "gamma", ctx.gap) is not None) else "needs a gap γ (config or check_params)",
    "alpha": lambda ctx, cid: None if (ctx.param(cid, "alpha", ctx.default_alpha) is not None) else "needs an exponent α in check_params",
}


class CheckMetadata(BaseModel):
    """Metadata of one registered verification."""

    model_config = {"arbitrary_types_allowed": True}

    id: str = Field(..., description="Check identifier used in configs")
    label: str = Field(..., description="One-line statement of the certified claim")
    category: str = "General"
    description: str = ""
    requires: List[str] = Field(default_factory=list, description="Context requirements, see _REQUIREMENTS")
    params: Dict[str, Any] = Field(default_factory=dict, description="Accepted check_params with defaults")
    runner: Optional[Callable[[CheckContext], VerificationReport]] = Field(None, exclude=True)


class CheckRegistry:
    def __init__(self) -> None:
        self._checks: Dict[str, CheckMetadata] = {}

    def register(
        self,
        fn: Optional[Callable[[CheckContext], VerificationReport]] = None,
        *,
        id: Optional[str] = None,
        label: str = "",
        category: str = "General",
        description: str = "",
        requires: Optional[Sequence[str]] = None,
        params: Optional[Dict[str, Any]] = None,
    ):
        """
        Decorator registering a check runner.

        Usage:
            @check_registry.register(id="thm12_gap_bound", label="...", requires=["atoms", "gap"])
            def gap_bound(ctx: CheckContext) -> VerificationReport: ...
        """
        def _decorator(target: Callable[[CheckContext], VerificationReport]):
            check_id = id or target.__name__
            unknown = [r for r in (requires or []) if r not in _REQUIREMENTS]
            if unknown:
                raise ValueError(f"❌ [Registry] unknown requirements for {check_id}: {unknown}")
            self._checks[check_id] = CheckMetadata(
                id=check_id,
                label=label or check_id,
                category=category,
                description=_resolve_description(description, target),
                requires=list(requires or []),
                params=dict(params or {}),
                runner=target,
            )
            return target

        if fn is None:
            return _decorator
        return _decorator(fn)

    def get(self, check_id: str) -> Optional[CheckMetadata]:
        return self._checks.get(check_id)

    def ids(self) -> List[str]:
        return sorted(self._checks)

    def get_all(self) -> List[CheckMetadata]:
        return [self._checks[i] for i in self.ids()]

    def missing_requirements(self, check_id: str, ctx: CheckContext) -> List[str]:
        meta = self._checks[check_id]
        reasons = []
        for req in meta.requires:
            reason = _REQUIREMENTS[req](ctx, check_id)
            if reason:
                reasons.append(reason)
        return reasons

    def listing(self) -> str:
        return "\n".join(f"{meta.id:<20} {meta.label}" for meta in self.get_all())

    def __len__(self) -> int:
        return len(self._checks)

    def __contains__(self, check_id: object) -> bool:
        return check_id in self._checks


check_registry = CheckRegistry()

__all__ = ["CheckContext", "CheckMetadata", "CheckRegistry", "check_registry"]
