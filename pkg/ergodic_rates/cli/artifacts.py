"""
Artifact writers: CSV tables, the JSON run summary and log-log SVG plots.
"""
import csv
import math
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from pydantic import BaseModel, ConfigDict, Field  # noqa: E402

from ergodic_rates.analysis.report import Witness  # noqa: E402
from ergodic_rates.core.logging import logger  # noqa: E402
from ergodic_rates.cli.runner import RunResult  # noqa: E402

DECAY_CSV = "decay.csv"
ARCS_CSV = "arcs.csv"
REPORTS_JSON = "reports.json"
DECAY_SVG = "decay.svg"
ARCS_SVG = "arcs.svg"

plt.rcParams["svg.hashsalt"] = "ergodic-rates"


class ReportRecord(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    claim: str
    holds: bool
    worst_margin: float
    witness: Witness = None
    constants: Dict[str, float] = Field(default_factory=dict)


class RunSummary(BaseModel):
    """Content of reports.json; a pure function of the config and seed, so no timings."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    name: str
    seed: int
    model: str
    all_hold: bool
    reports: List[ReportRecord] = Field(default_factory=list)
    advisories: Dict[str, List[str]] = Field(default_factory=dict, description="Advisories per check id")
    decay_exponents: Dict[str, float] = Field(default_factory=dict, description="liminf/limsup of ln b(K)/(−ln K)")
    pointwise_exponents: Optional[Dict[str, float]] = None


def _format(value: float) -> str:
    return repr(float(value))


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Tuple]) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([str(row[0]) if isinstance(row[0], int) else _format(row[0])] + [_format(v) for v in row[1:]])


def fit_power_law(x: Sequence[float], y: Sequence[float]) -> Optional[Tuple[float, float]]:
    """Least-squares y ≈ a·x^p in log-log coordinates; None with fewer than two positive points."""
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    mask = (xs > 0) & (ys > 0) & np.isfinite(xs) & np.isfinite(ys)
    if np.count_nonzero(mask) < 2:
        return None
    p, loga = np.polyfit(np.log10(xs[mask]), np.log10(ys[mask]), 1)
    return float(p), float(10**loga)


def plot_loglog(
    path: Path,
    x: Sequence[float],
    y: Sequence[float],
    *,
    xlabel: str,
    ylabel: str,
    title: str,
    note: str = "",
) -> Optional[Tuple[float, float]]:
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    positive = ys > 0
    fit = fit_power_law(xs, ys)

    fig = plt.figure(figsize=(6, 4))
    try:
        ax = fig.add_subplot(111)
        if np.any(positive):
            ax.loglog(xs[positive], ys[positive], "o-", ms=3, label="data")
        else:
            ax.set_xscale("log")
        if fit is not None:
            p, a = fit
            grid = np.geomspace(xs[positive].min(), xs[positive].max(), 200)
            ax.loglog(grid, a * grid**p, "--", label=f"fit slope {p:.3f}")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        ax.grid(True, which="both", alpha=0.3)
        text = note if fit is not None else (note + "\nno power-law fit").strip()
        if text:
            ax.text(0.02, 0.02, text, transform=ax.transAxes, fontsize=8, va="bottom")
        if np.any(positive):
            ax.legend()
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    return fit


def _exponent_note(lo: float, hi: float, lo_name: str, hi_name: str) -> str:
    def fmt(v: float) -> str:
        return "∞" if math.isinf(v) else f"{v:.3f}"

    return f"{lo_name} = {fmt(lo)}, {hi_name} = {fmt(hi)}"


def build_summary(result: RunResult) -> RunSummary:
    exponents = None
    if result.exponents is not None:
        exponents = {"d_minus": result.exponents.d_minus, "d_plus": result.exponents.d_plus}
    return RunSummary(
        name=result.config.name,
        seed=result.config.seed,
        model=result.model_label,
        all_hold=result.all_hold,
        reports=[ReportRecord(**r.summary()) for r in result.reports],
        advisories={r.claim: list(r.advisories) for r in result.reports if r.advisories},
        decay_exponents={"liminf": result.decay.liminf_exp, "limsup": result.decay.limsup_exp},
        pointwise_exponents=exponents,
    )


def write_artifacts(result: RunResult, out_dir: Path) -> Dict[str, Path]:
    """Writes the requested formats into out_dir; returns the written paths by file name."""
    formats = set(result.config.output.formats)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: Dict[str, Path] = {}

    if "csv" in formats:
        path = out_dir / DECAY_CSV
        write_csv(path, ("K", "b", "log_ratio"), result.series.rows())
        written[DECAY_CSV] = path
        if result.arcs is not None:
            path = out_dir / ARCS_CSV
            write_csv(path, ("eps", "mass", "log_ratio"), result.arcs)
            written[ARCS_CSV] = path

    if "svg" in formats:
        path = out_dir / DECAY_SVG
        plot_loglog(
            path,
            result.series.K,
            result.series.values,
            xlabel="K",
            ylabel="b(K)",
            title=f"Cesàro decay: {result.model_label}",
            note=_exponent_note(result.decay.liminf_exp, result.decay.limsup_exp, "liminf exp", "limsup exp"),
        )
        written[DECAY_SVG] = path
        if result.arcs is not None:
            path = out_dir / ARCS_SVG
            note = ""
            if result.exponents is not None:
                note = _exponent_note(result.exponents.d_minus, result.exponents.d_plus, "d⁻", "d⁺")
            plot_loglog(
                path,
                [row[0] for row in result.arcs],
                [row[1] for row in result.arcs],
                xlabel=r"$\varepsilon$",
                ylabel=r"$\mu(A_\varepsilon)$",
                title="Arc masses at z = 1",
                note=note,
            )
            written[ARCS_SVG] = path

    if "json" in formats:
        path = out_dir / REPORTS_JSON
        path.write_text(build_summary(result).model_dump_json(indent=2) + "\n", encoding="utf-8")
        written[REPORTS_JSON] = path

    logger.info("💾 [Artifacts] wrote {} files to {}", len(written), out_dir)
    return written


__all__ = [
    "ReportRecord",
    "RunSummary",
    "build_summary",
    "fit_power_law",
    "plot_loglog",
    "write_artifacts",
    "write_csv",
]
