"""
Lightweight run tracing on contextvars.

`span` times a unit of work (the decay series, one check) and reports its
duration to the DEBUG log; listeners registered with `subscribe` receive
`span_start` / `span_end` and any custom `emit` events with JSON-safe
payloads. Timings never enter run artifacts.
"""
import contextvars
import os
import time
import uuid
from dataclasses import asdict, dataclass, field, is_dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ergodic_rates.core.logging import logger

Listener = Callable[[str, Dict[str, Any]], None]

_listeners: List[Listener] = []
_log_events = os.environ.get("ERGODIC_RATES_TRACE_LOG", "0") == "1"


@dataclass(frozen=True)
class TraceContext:
    trace_id: str
    span_stack: Tuple[str, ...] = ()
    metadata: Dict[str, Any] = field(default_factory=dict)

    def child(self, span_id: str) -> "TraceContext":
        return TraceContext(self.trace_id, self.span_stack + (span_id,), dict(self.metadata))


_context: contextvars.ContextVar[Optional[TraceContext]] = contextvars.ContextVar(
    "ergodic_rates_trace", default=None
)


def _current() -> TraceContext:
    return _context.get() or TraceContext(trace_id=uuid.uuid4().hex)


@dataclass
class Span:
    id: str
    trace_id: str
    parent_id: Optional[str]
    name: str
    started: float
    duration_ms: Optional[float] = None
    status: str = "running"


def to_jsonable(value: Any, _depth: int = 0) -> Any:
    """numpy scalars/arrays, complex numbers, dataclasses and pydantic models to plain JSON values."""
    if _depth > 4:
        return str(value)
    if value is None or isinstance(value, (str, int, float, bool)):
        return value
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v, _depth + 1) for k, v in value.items()}
    if isinstance(value, (list, tuple, set)):
        return [to_jsonable(v, _depth + 1) for v in value]
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value), _depth + 1)
    if hasattr(value, "model_dump"):
        return to_jsonable(value.model_dump(), _depth + 1)
    return str(value)


def subscribe(callback: Listener) -> None:
    _listeners.append(callback)


def unsubscribe(callback: Listener) -> None:
    if callback in _listeners:
        _listeners.remove(callback)


def get_current_span_id() -> Optional[str]:
    ctx = _context.get()
    return ctx.span_stack[-1] if ctx and ctx.span_stack else None


def set_context(**metadata: Any) -> contextvars.Token:
    """Attach metadata (e.g. the run name) to every event in the current context."""
    ctx = _current()
    merged = {**ctx.metadata, **metadata}
    return _context.set(TraceContext(ctx.trace_id, ctx.span_stack, merged))


def reset_context(token: Optional[contextvars.Token]) -> None:
    if token is not None:
        _context.reset(token)


class span:
    """Times the enclosed block; emits span_start/span_end and logs the duration at DEBUG."""

    def __init__(self, name: str, **fields: Any):
        self.name = name
        self.fields = fields
        self._span: Optional[Span] = None
        self._token: Optional[contextvars.Token] = None

    def __enter__(self) -> Span:
        ctx = _current()
        parent = ctx.span_stack[-1] if ctx.span_stack else None
        span_id = uuid.uuid4().hex[:16]
        self._token = _context.set(ctx.child(span_id))
        self._span = Span(span_id, ctx.trace_id, parent, self.name, time.perf_counter())
        emit("span_start", {"name": self.name, "parent_id": parent, **self.fields})
        return self._span

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        s = self._span
        assert s is not None
        s.duration_ms = (time.perf_counter() - s.started) * 1000.0
        s.status = "error" if exc_type else "success"
        logger.debug("⏱️ [Trace] {} {} {} in {:.1f} ms", s.name, self.fields or "", s.status, s.duration_ms)
        payload: Dict[str, Any] = {"name": s.name, "status": s.status, "duration_ms": s.duration_ms, **self.fields}
        if exc_val is not None:
            payload["error"] = str(exc_val)
        emit("span_end", payload)
        reset_context(self._token)


def emit(event: str, payload: Optional[Dict[str, Any]] = None) -> None:
    if not _listeners and not _log_events:
        return
    ctx = _context.get()
    data: Dict[str, Any] = dict(ctx.metadata) if ctx else {}
    if ctx:
        data["trace_id"] = ctx.trace_id
        if ctx.span_stack:
            data["span_id"] = ctx.span_stack[-1]
    data.update(payload or {})
    data = to_jsonable(data)

    if _log_events:
        logger.debug("📡 [Trace] {} {}", event, data)
    for cb in list(_listeners):
        try:
            cb(event, data)
        except Exception as exc:
            logger.warning("⚠️ [Trace] Listener failed: {}", exc)


__all__ = [
    "Span",
    "emit",
    "subscribe",
    "unsubscribe",
    "span",
    "get_current_span_id",
    "set_context",
    "reset_context",
    "to_jsonable",
]
