import json
from pathlib import Path
from typing import Any, Dict, Union

from ergodic_rates.core.errors import UsageError
from ergodic_rates.measures.circle import CircleMeasure, PowerLawSegment


def measure_to_dict(mu: CircleMeasure) -> Dict[str, Any]:
    return {
        "kind": mu.kind,
        "atoms": [[float(a), float(w)] for a, w in zip(mu.angles, mu.weights)],
        "segments": [
            {"c": s.c, "alpha": s.alpha, "from": s.lo, "to": s.hi} for s in mu.segments
        ],
        "parts": [measure_to_dict(p) for p in mu.parts],
    }


def measure_from_dict(data: Dict[str, Any]) -> CircleMeasure:
    kind = data.get("kind")
    if kind == "atomic":
        return CircleMeasure.atomic((float(a), float(w)) for a, w in data.get("atoms") or [])
    if kind == "density":
        return CircleMeasure.density(
            PowerLawSegment(c=float(s["c"]), alpha=float(s["alpha"]), lo=float(s["from"]), hi=float(s["to"]))
            for s in data.get("segments") or []
        )
    if kind == "mixture":
        return CircleMeasure.mixture(measure_from_dict(p) for p in data.get("parts") or [])
    raise UsageError(f"❌ [Store] unknown measure kind: {kind!r}")


def save_measure(mu: CircleMeasure, path: Union[str, Path]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8") as f:
        json.dump(measure_to_dict(mu), f, ensure_ascii=False, indent=2)
    return target


def load_measure(path: Union[str, Path]) -> CircleMeasure:
    with open(path, "r", encoding="utf-8") as f:
        return measure_from_dict(json.load(f))


__all__ = ["measure_to_dict", "measure_from_dict", "save_measure", "load_measure"]
