"""
Measures on the unit circle: kernels, quadrature, designers and JSON storage.
"""
from ergodic_rates.measures.circle import (
    CircleMeasure,
    PowerLawSegment,
    ExponentEstimate,
    arc_mass,
    arc_masses,
    sector_mass,
    atom_at_one,
    arc_scan,
    pointwise_exponents,
    fejer_functional,
    fourier_coefficient,
    kachurovskii_majorant,
)
from ergodic_rates.measures.designer import (
    LacunarySpec,
    power_law_measure,
    unit_power_law,
    lacunary_measure,
    lacunary_ladder,
    gap_measure,
    fejer_asymptotic_constant,
)
from ergodic_rates.measures.store import measure_to_dict, measure_from_dict, save_measure, load_measure

__all__ = [
    "CircleMeasure",
    "PowerLawSegment",
    "ExponentEstimate",
    "arc_mass",
    "arc_masses",
    "sector_mass",
    "atom_at_one",
    "arc_scan",
    "pointwise_exponents",
    "fejer_functional",
    "fourier_coefficient",
    "kachurovskii_majorant",
    "LacunarySpec",
    "power_law_measure",
    "unit_power_law",
    "lacunary_measure",
    "lacunary_ladder",
    "gap_measure",
    "fejer_asymptotic_constant",
    "measure_to_dict",
    "measure_from_dict",
    "save_measure",
    "load_measure",
]
