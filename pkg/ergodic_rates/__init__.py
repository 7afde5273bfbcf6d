"""
ergodic-rates: spectral measures on the unit circle, Cesàro decay rates and
numerical checks of the rate theorems that connect them.
"""
# Measures
from ergodic_rates.measures import (
    CircleMeasure,
    PowerLawSegment,
    LacunarySpec,
    arc_mass,
    pointwise_exponents,
    fejer_functional,
    kachurovskii_majorant,
    power_law_measure,
    unit_power_law,
    lacunary_measure,
    gap_measure,
)

# Models
from ergodic_rates.models import (
    DiagonalUnitary,
    StateVector,
    KoopmanInstance,
    DiagonalModel,
    KoopmanModel,
    MeasureModel,
)

# Analysis
from ergodic_rates.analysis import (
    RateSeries,
    VerificationReport,
    decay_series,
    estimate_decay_exponents,
    geometric_k_grid,
    geometric_eps_grid,
)
from ergodic_rates.checks import check_registry
from ergodic_rates.core.trace import (
    emit as trace_emit,
    subscribe as trace_subscribe,
    unsubscribe as trace_unsubscribe,
    span as trace_span,
)

__all__ = [
    # Measures
    "CircleMeasure",
    "PowerLawSegment",
    "LacunarySpec",
    "arc_mass",
    "pointwise_exponents",
    "fejer_functional",
    "kachurovskii_majorant",
    "power_law_measure",
    "unit_power_law",
    "lacunary_measure",
    "gap_measure",
    # Models
    "DiagonalUnitary",
    "StateVector",
    "KoopmanInstance",
    "DiagonalModel",
    "KoopmanModel",
    "MeasureModel",
    # Analysis
    "RateSeries",
    "VerificationReport",
    "decay_series",
    "estimate_decay_exponents",
    "geometric_k_grid",
    "geometric_eps_grid",
    "check_registry",
    # Trace
    "trace_emit",
    "trace_subscribe",
    "trace_unsubscribe",
    "trace_span",
]
