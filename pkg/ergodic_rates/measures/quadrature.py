"""
Panel quadrature for power-law densities c·|θ|^(α−1) on a signed interval.

The interval is folded onto |θ| ≥ 0. Panels have a fixed width chosen by the
caller (typically a fraction of one kernel oscillation). The panel touching
θ = 0 uses Gauss–Jacobi so the integrable singularity is part of the weight;
the remaining panels use Gauss–Legendre. Rules are yielded in chunks so the
node count for large K never materializes at once.
"""
from functools import lru_cache
from typing import Iterator, Tuple

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

DEFAULT_ORDER = 10
MAX_PANEL_WIDTH = np.pi / 8.0
CHUNK_PANELS = 8192

Rule = Tuple[np.ndarray, np.ndarray]


@lru_cache(maxsize=32)
def _legendre(order: int) -> Rule:
    x, w = roots_legendre(order)
    return np.asarray(x), np.asarray(w)


@lru_cache(maxsize=128)
def _jacobi(order: int, beta: float) -> Rule:
    # weight (1 + x)^beta on [−1, 1]
    x, w = roots_jacobi(order, 0.0, beta)
    return np.asarray(x), np.asarray(w)


def panel_width_for(frequency: float) -> float:
    """Eight panels per oscillation of e^{i·frequency·θ}, capped at π/8."""
    if frequency <= 0:
        return MAX_PANEL_WIDTH
    return min(MAX_PANEL_WIDTH, 2.0 * np.pi / (8.0 * float(frequency)))


def _origin_rule(c: float, alpha: float, length: float, order: int) -> Rule:
    x, w = _jacobi(order, alpha - 1.0)
    half = 0.5 * length
    nodes = half * (1.0 + x)
    weights = c * half**alpha * w
    return nodes, weights


def _uniform_panels(c: float, alpha: float, p: float, q: float, h: float, order: int,
                    chunk: int) -> Iterator[Rule]:
    if q <= p:
        return
    x, w = _legendre(order)
    n_panels = max(1, int(np.ceil((q - p) / h)))
    edges = np.linspace(p, q, n_panels + 1)
    for start in range(0, n_panels, chunk):
        stop = min(start + chunk, n_panels)
        left = edges[start:stop]
        right = edges[start + 1:stop + 1]
        mid = 0.5 * (left + right)[:, None]
        half = 0.5 * (right - left)[:, None]
        nodes = mid + half * x[None, :]
        weights = c * nodes ** (alpha - 1.0) * half * w[None, :]
        yield nodes.ravel(), weights.ravel()


def _from_origin(c: float, alpha: float, v: float, h: float, order: int, chunk: int) -> Iterator[Rule]:
    first = min(h, v)
    yield _origin_rule(c, alpha, first, order)
    yield from _uniform_panels(c, alpha, first, v, h, order, chunk)


def _folded(c: float, alpha: float, u: float, v: float, h: float, order: int,
            chunk: int) -> Iterator[Rule]:
    """Rules for ∫_u^v c s^(α−1) f(s) ds with 0 ≤ u < v."""
    if u >= h:
        yield from _uniform_panels(c, alpha, u, v, h, order, chunk)
        return
    yield from _from_origin(c, alpha, v, h, order, chunk)
    if u > 0.0:
        # [0, u] is subtracted; it lies inside the first panel scale
        for nodes, weights in _from_origin(c, alpha, u, h, order, chunk):
            yield nodes, -weights


def iter_segment_rules(c: float, alpha: float, lo: float, hi: float, panel_width: float,
                       *, order: int = DEFAULT_ORDER, chunk: int = CHUNK_PANELS) -> Iterator[Rule]:
    """
    Yield (θ nodes, weights) chunks such that Σ w·f(θ) ≈ ∫_lo^hi c|θ|^(α−1) f(θ) dθ.

    Nodes are signed angles; weights already include the density.
    """
    if c == 0.0 or hi <= lo:
        return
    h = float(panel_width)
    if hi > 0.0:
        for nodes, weights in _folded(c, alpha, max(lo, 0.0), hi, h, order, chunk):
            yield nodes, weights
    if lo < 0.0:
        for nodes, weights in _folded(c, alpha, max(-hi, 0.0), -lo, h, order, chunk):
            yield -nodes, weights


__all__ = [
    "DEFAULT_ORDER",
    "MAX_PANEL_WIDTH",
    "panel_width_for",
    "iter_segment_rules",
]
