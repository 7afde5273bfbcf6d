"""
Rate analysis: decay series, exponent estimates and verification reports.
"""
from ergodic_rates.analysis.series import (
    RateSeries,
    DecayExponents,
    decay_series,
    estimate_decay_exponents,
    geometric_k_grid,
    geometric_eps_grid,
)
from ergodic_rates.analysis.report import VerificationReport
from ergodic_rates.analysis.verify import (
    verify_vnet_limit,
    verify_spectral_gap_bound,
    verify_cesaro_identity,
    verify_kachurovskii_forward,
    verify_kachurovskii_reverse,
    verify_lemma_inequality,
    verify_exponent_match,
    corollary_check,
    verify_weak_decay,
)
from ergodic_rates.analysis.constructions import truncation_construction, perturbation_construction

__all__ = [
    "RateSeries",
    "DecayExponents",
    "decay_series",
    "estimate_decay_exponents",
    "geometric_k_grid",
    "geometric_eps_grid",
    "VerificationReport",
    "verify_vnet_limit",
    "verify_spectral_gap_bound",
    "verify_cesaro_identity",
    "verify_kachurovskii_forward",
    "verify_kachurovskii_reverse",
    "verify_lemma_inequality",
    "verify_exponent_match",
    "corollary_check",
    "verify_weak_decay",
    "truncation_construction",
    "perturbation_construction",
]
