import math
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

Witness = Union[int, float, None]
# (witness, margin) or (witness, margin, witness_kind)
MarginPoint = Union[Tuple[Witness, float], Tuple[Witness, float, str]]


class VerificationReport(BaseModel):
    """Outcome of one numerical check; holds == (worst_margin >= -tolerance)."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    claim: str = Field(..., description="Check identifier")
    holds: bool
    worst_margin: float = Field(..., description="Smallest slack over the grid; negative means violated")
    witness: Witness = Field(None, description="Grid point (K, ε, n or m) at the worst margin")
    witness_kind: Optional[str] = None
    tolerance: float = 0.0
    constants: Dict[str, float] = Field(default_factory=dict, description="Fitted or derived constants")
    advisories: List[str] = Field(default_factory=list)

    @classmethod
    def from_margins(
        cls,
        claim: str,
        points: Iterable[MarginPoint],
        *,
        tolerance: float,
        witness_kind: Optional[str] = None,
        constants: Optional[Dict[str, float]] = None,
        advisories: Optional[Sequence[str]] = None,
    ) -> "VerificationReport":
        """Worst margin by value, ties broken by the smallest witness."""
        worst: Optional[Tuple[float, float, Witness, Optional[str]]] = None
        for point in points:
            witness, margin = point[0], float(point[1])
            kind = point[2] if len(point) > 2 else witness_kind  # type: ignore[misc]
            if math.isnan(margin):
                margin = -math.inf
            order = float(witness) if witness is not None else math.inf
            key = (margin, order, witness, kind)
            if worst is None or (key[0], key[1]) < (worst[0], worst[1]):
                worst = key
        notes = list(advisories or [])
        if worst is None:
            notes.append("no grid points evaluated")
            return cls(claim=claim, holds=True, worst_margin=math.inf, tolerance=tolerance,
                       witness_kind=witness_kind, constants=dict(constants or {}), advisories=notes)
        margin, _, witness, kind = worst
        return cls(
            claim=claim,
            holds=margin >= -tolerance,
            worst_margin=margin,
            witness=witness,
            witness_kind=kind,
            tolerance=tolerance,
            constants=dict(constants or {}),
            advisories=notes,
        )

    @classmethod
    def vacuous(cls, claim: str, advisory: str, *, constants: Optional[Dict[str, float]] = None) -> "VerificationReport":
        """Hypotheses absent: passes without grid points."""
        return cls(claim=claim, holds=True, worst_margin=math.inf, constants=dict(constants or {}),
                   advisories=[advisory])

    @classmethod
    def failed(cls, claim: str, reason: str, *, witness: Witness = None, witness_kind: Optional[str] = None,
               margin: float = -math.inf, constants: Optional[Dict[str, float]] = None) -> "VerificationReport":
        return cls(claim=claim, holds=False, worst_margin=margin, witness=witness, witness_kind=witness_kind,
                   constants=dict(constants or {}), advisories=[reason])

    def summary(self) -> Dict[str, Any]:
        """The compact JSON record: claim, holds, worst_margin, witness, constants."""
        return {
            "claim": self.claim,
            "holds": self.holds,
            "worst_margin": self.worst_margin,
            "witness": self.witness,
            "constants": self.constants,
        }


def relative_gap(a: float, b: float, floor: float = 0.0) -> float:
    """|a − b| / max(|a|, |b|), zero when the difference is below `floor`."""
    diff = abs(a - b)
    if diff <= floor:
        return 0.0
    scale = max(abs(a), abs(b))
    return diff / scale if scale > 0.0 else math.inf


def stability_margin(values: Sequence[float]) -> Tuple[float, int]:
    """
    Slack of "last-quarter max <= 2 × max over the first three quarters".

    Returns (1 − tail_max/(2·head_max), index of the tail maximum). A series
    with a single point is stable by definition.
    """
    n = len(values)
    if n < 2:
        return 1.0, max(n - 1, 0)
    split = n - max(1, n // 4)
    head = max(values[:split])
    tail_values = list(values[split:])
    tail = max(tail_values)
    idx = split + tail_values.index(tail)
    if not (math.isfinite(head) and math.isfinite(tail)):
        return -math.inf, idx
    if head == 0.0:
        return (1.0 if tail == 0.0 else -math.inf), idx
    return 1.0 - tail / (2.0 * head), idx


__all__ = ["VerificationReport", "relative_gap", "stability_margin", "MarginPoint"]
