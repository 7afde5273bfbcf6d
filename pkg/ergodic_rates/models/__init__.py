"""
Operators and vectors: diagonal unitaries, Koopman instances and spectral-model adapters.
"""
from ergodic_rates.models.unitary import (
    DiagonalUnitary,
    StateVector,
    spectral_measure,
    fixed_part,
    cesaro_deviation_norm_sq,
    correlation,
    random_diagonal_model,
)
from ergodic_rates.models.koopman import (
    KoopmanInstance,
    koopman_correlation,
    koopman_deviation_norm_sq,
    koopman_spectral_measure,
)
from ergodic_rates.models.spectral import (
    SpectralModel,
    DiagonalModel,
    KoopmanModel,
    MeasureModel,
    weak_convergence_scan,
)

__all__ = [
    "DiagonalUnitary",
    "StateVector",
    "spectral_measure",
    "fixed_part",
    "cesaro_deviation_norm_sq",
    "correlation",
    "random_diagonal_model",
    "KoopmanInstance",
    "koopman_correlation",
    "koopman_deviation_norm_sq",
    "koopman_spectral_measure",
    "SpectralModel",
    "DiagonalModel",
    "KoopmanModel",
    "MeasureModel",
    "weak_convergence_scan",
]
