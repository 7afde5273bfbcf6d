"""
Experiment configuration (JSON) for `ergodic-rates run`.
"""
import json
import math
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ergodic_rates.checks import check_registry
from ergodic_rates.core.errors import UsageError


class ConfigError(UsageError):
    """Invalid experiment config; the message carries the line or field diagnostic."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class KGridSpec(_Strict):
    min_exp: int = Field(4, ge=0, description="Smallest exponent e in K = base^e")
    max_exp: int = Field(20, ge=0, description="Largest exponent")
    base: int = Field(2, ge=2, description="Integer base of the geometric K grid")

    @model_validator(mode="after")
    def _ordered(self) -> "KGridSpec":
        if self.max_exp < self.min_exp:
            raise ValueError("max_exp must be >= min_exp")
        if self.max_exp < 1:
            raise ValueError("K grid must reach past K = 1")
        if self.max_exp * math.log(self.base) > math.log(1e300):
            raise ValueError("K grid exceeds float range")
        return self


class EpsGridSpec(_Strict):
    min_exp: int = Field(1, description="Largest scale ε = base^-min_exp")
    max_exp: int = Field(40, description="Smallest scale ε = base^-max_exp")
    base: float = Field(2.0, gt=1.0)

    @model_validator(mode="after")
    def _ordered(self) -> "EpsGridSpec":
        if self.max_exp < self.min_exp + 7:
            raise ValueError("ε grid needs at least 8 scales")
        if -self.min_exp * math.log(self.base) > math.log(math.pi):
            raise ValueError("largest scale must be <= π")
        if -self.max_exp * math.log(self.base) < math.log(1e-300):
            raise ValueError("smallest scale underflows")
        return self


class PowerLawSpec(_Strict):
    type: Literal["power_law"]
    alpha: float = Field(..., gt=0.0, le=2.0)
    c: Optional[float] = Field(None, gt=0.0, description="Coefficient; defaults to unit total mass")


class LacunaryConfig(_Strict):
    type: Literal["lacunary"]
    low_exponent: float = Field(..., ge=0.0, lt=2.0)
    high_exponent: float = Field(..., gt=0.0)
    depth: int = Field(8, ge=4)
    scale_base: float = Field(math.e**8, gt=1.0)
    ramp: float = Field(2.0, ge=2.0)


class GapConfig(_Strict):
    type: Literal["gap"]
    gamma: float = Field(..., gt=0.0, lt=math.pi)
    atoms: List[Tuple[float, float]] = Field(..., min_length=1, description="[theta, weight] pairs")


MeasureSpec = Annotated[Union[PowerLawSpec, LacunaryConfig, GapConfig], Field(discriminator="type")]


class DiagonalSpec(_Strict):
    type: Literal["diagonal"]
    phases: List[float] = Field(..., min_length=1)
    psi: List[Tuple[float, float]] = Field(..., min_length=1, description="[re, im] coefficients")
    gap: Optional[float] = Field(None, gt=0.0, lt=math.pi)

    @model_validator(mode="after")
    def _aligned(self) -> "DiagonalSpec":
        if len(self.phases) != len(self.psi):
            raise ValueError("phases and psi must have the same length")
        return self


class KoopmanSpec(_Strict):
    type: Literal["koopman"]
    map: Literal["rotation", "doubling", "bernoulli"]
    alpha: Optional[float] = Field(None, gt=0.0, lt=1.0, description="Rotation number")
    symbols: int = Field(2, ge=2)
    observable: List[Tuple[int, float, float]] = Field(..., min_length=1, description="[freq, re, im]")

    @model_validator(mode="after")
    def _rotation_number(self) -> "KoopmanSpec":
        if self.map == "rotation" and self.alpha is None:
            raise ValueError("rotation needs alpha")
        return self


class RandomDiagonalSpec(_Strict):
    type: Literal["random_diagonal"]
    dim: int = Field(..., ge=1, le=1 << 16)
    gap: Optional[float] = Field(None, gt=0.0, lt=math.pi)
    fixed_fraction: float = Field(0.1, ge=0.0, le=1.0)


ModelSpec = Annotated[Union[DiagonalSpec, KoopmanSpec, RandomDiagonalSpec], Field(discriminator="type")]

OutputFormat = Literal["csv", "json", "svg"]


class OutputSpec(_Strict):
    dir: str = Field("out", description="Artifact directory")
    formats: List[OutputFormat] = Field(default_factory=lambda: ["csv", "json", "svg"])


class ExperimentConfig(_Strict):
    name: str = "experiment"
    seed: int = Field(0, description="RNG seed for randomized models")
    measure: Optional[MeasureSpec] = None
    model: Optional[ModelSpec] = None
    k_grid: KGridSpec = Field(default_factory=KGridSpec)
    eps_grid: EpsGridSpec = Field(default_factory=EpsGridSpec)
    tail_fraction: float = Field(0.5, gt=0.0, le=1.0)
    checks: List[str] = Field(default_factory=list)
    check_params: Dict[str, Dict[str, Any]] = Field(default_factory=dict)
    output: OutputSpec = Field(default_factory=OutputSpec)

    @field_validator("checks")
    @classmethod
    def _known_checks(cls, value: List[str]) -> List[str]:
        unknown = [c for c in value if c not in check_registry]
        if unknown:
            raise ValueError(f"unknown checks {unknown}; run `ergodic-rates list-checks`")
        return value

    @field_validator("check_params")
    @classmethod
    def _known_params(cls, value: Dict[str, Dict[str, Any]]) -> Dict[str, Dict[str, Any]]:
        for check_id, params in value.items():
            meta = check_registry.get(check_id)
            if meta is None:
                raise ValueError(f"parameters given for unknown check {check_id!r}")
            extra = sorted(set(params) - set(meta.params))
            if extra:
                raise ValueError(f"{check_id} does not accept {extra}; accepted: {sorted(meta.params)}")
        return value

    @model_validator(mode="after")
    def _one_source(self) -> "ExperimentConfig":
        if (self.measure is None) == (self.model is None):
            raise ValueError("exactly one of 'measure' or 'model' must be given")
        return self


def _format_validation(exc: ValidationError) -> str:
    lines = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err.get("loc", ())) or "<root>"
        lines.append(f"  {loc}: {err.get('msg')}")
    return "\n".join(lines)


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"❌ [Config] {source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"❌ [Config] {source}: invalid fields\n{_format_validation(exc)}")


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    target = Path(path)
    try:
        text = target.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"❌ [Config] cannot read {target}: {exc}")
    return parse_config(text, str(target))


__all__ = [
    "ConfigError",
    "KGridSpec",
    "EpsGridSpec",
    "PowerLawSpec",
    "LacunaryConfig",
    "GapConfig",
    "DiagonalSpec",
    "KoopmanSpec",
    "RandomDiagonalSpec",
    "OutputSpec",
    "ExperimentConfig",
    "parse_config",
    "load_config",
]
