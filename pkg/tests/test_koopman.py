import cmath
import math
import unittest

import numpy as np

from ergodic_rates.analysis.series import decay_series, estimate_decay_exponents, geometric_k_grid
from ergodic_rates.analysis.verify import verify_cesaro_identity
from ergodic_rates.core.errors import DomainError, UsageError
from ergodic_rates.measures.circle import arc_mass, fejer_functional
from ergodic_rates.measures.kernels import fejer_weight
from ergodic_rates.models.koopman import (
    KoopmanInstance,
    koopman_correlation,
    koopman_deviation_norm_sq,
    koopman_deviation_series,
    koopman_spectral_measure,
)
from ergodic_rates.models.spectral import KoopmanModel

GOLDEN = math.sqrt(2) - 1


def doubling(*freqs, map_kind="doubling", symbols=2):
    return KoopmanInstance.build(map_kind, [(n, 1.0) for n in freqs], symbols=symbols)


class TestKoopmanCorrelation(unittest.TestCase):

    def test_doubling_single_mode(self):
        inst = doubling(1)
        self.assertEqual(koopman_correlation(inst, 0), 1.0)
        for j in range(1, 10):
            self.assertEqual(koopman_correlation(inst, j), 0j)

    def test_doubling_matched_pair(self):
        self.assertEqual(koopman_correlation(doubling(1, 2), 1), 1.0)
        self.assertEqual(koopman_correlation(doubling(1, 2), 2), 0j)

    def test_big_integer_matching(self):
        """2^100 超出浮点精确范围，仍需精确匹配"""
        inst = doubling(1, 2**100)
        self.assertEqual(koopman_correlation(inst, 100), 1.0)
        self.assertEqual(koopman_correlation(inst, 99), 0j)

    def test_bernoulli_shift(self):
        inst = doubling(1, 3, map_kind="bernoulli", symbols=3)
        self.assertEqual(koopman_correlation(inst, 1), 1.0)
        self.assertEqual(koopman_correlation(doubling(1, 2, map_kind="bernoulli", symbols=3), 1), 0j)

    def test_rotation_closed_form(self):
        inst = KoopmanInstance.build("rotation", [(1, 1.0)], alpha=GOLDEN)
        self.assertAlmostEqual(koopman_correlation(inst, 3), cmath.exp(6j * math.pi * GOLDEN), places=12)

    def test_constant_mode_excluded(self):
        inst = KoopmanInstance.build("doubling", [(0, 2.0), (1, 1.0)])
        self.assertEqual(inst.deviation_mass, 1.0)
        self.assertEqual(koopman_correlation(inst, 0), 1.0)

    def test_invalid_instances(self):
        with self.assertRaises(DomainError):
            KoopmanInstance.build("rotation", [(1, 1.0)], alpha=1.5)
        with self.assertRaises(UsageError):
            KoopmanInstance.build("tent", [(1, 1.0)])  # type: ignore[arg-type]
        with self.assertRaises(DomainError):
            koopman_correlation(doubling(1), -1)


class TestKoopmanDeviation(unittest.TestCase):

    def test_doubling_orthogonality(self):
        self.assertEqual(koopman_deviation_norm_sq(doubling(1), 8), 1.0 / 8)
        np.testing.assert_allclose(koopman_deviation_series(doubling(1), [2, 4, 8]), [0.5, 0.25, 0.125])

    def test_rotation_K_one(self):
        inst = KoopmanInstance.build("rotation", [(1, 1.0)], alpha=GOLDEN)
        self.assertAlmostEqual(koopman_deviation_norm_sq(inst, 1), 1.0, places=14)

    def test_matched_pair_series(self):
        # f = e_1 + e_2: C(0) = 2, C(1) = 1, so b(K) = 2/K + 2(K − 1)/K²
        inst = doubling(1, 2)
        for K in (1, 2, 5, 64):
            self.assertAlmostEqual(koopman_deviation_norm_sq(inst, K), 2 / K + 2 * (K - 1) / K**2, places=14)

    def test_rotation_routes_agree(self):
        inst = KoopmanInstance.build("rotation", [(1, 1.0), (3, 0.5j), (-2, 0.25)], alpha=GOLDEN)
        theta, w = inst.rotation_phases
        model = KoopmanModel(inst)
        for K in (1, 7, 256, 1 << 10):
            direct = koopman_deviation_norm_sq(inst, K)
            self.assertAlmostEqual(direct, float(np.sum(w * fejer_weight(theta, K))), places=15)
            self.assertAlmostEqual(model.correlation_route(K) / direct, 1.0, places=9)

    def test_rotation_phase_exact_at_huge_lag(self):
        inst = KoopmanInstance.build("rotation", [(1, 1.0)], alpha=0.5)
        # j·α in floats rounds 10^18 + 1 to an even number
        self.assertAlmostEqual(koopman_correlation(inst, 10**18 + 1), -1.0, places=12)
        self.assertAlmostEqual(koopman_correlation(inst, 10**18), 1.0, places=12)

    def test_rotation_identity_holds_to_large_K(self):
        inst = KoopmanInstance.build("rotation", [(1, 1.0), (3, 0.5j), (-2, 0.25)], alpha=GOLDEN)
        report = verify_cesaro_identity(KoopmanModel(inst), geometric_k_grid(0, 12))
        self.assertTrue(report.holds, report.worst_margin)

    def test_doubling_decay_exponent(self):
        series = decay_series(KoopmanModel(doubling(1)), geometric_k_grid(4, 16))
        est = estimate_decay_exponents(series)
        self.assertAlmostEqual(est.liminf_exp, 1.0, delta=0.02)
        self.assertAlmostEqual(est.limsup_exp, 1.0, delta=0.02)


class TestKoopmanSpectralMeasure(unittest.TestCase):

    def test_rotation_atoms(self):
        inst = KoopmanInstance.build("rotation", [(1, 1.0), (2, 1.0)], alpha=0.25)
        mu = koopman_spectral_measure(inst)
        self.assertAlmostEqual(mu.total_mass, 2.0)
        self.assertAlmostEqual(arc_mass(mu, np.pi / 2), 1.0)

    def test_doubling_is_uniform(self):
        mu = koopman_spectral_measure(doubling(1, 3))
        self.assertAlmostEqual(mu.total_mass, 2.0, places=12)
        self.assertAlmostEqual(fejer_functional(mu, 32), koopman_deviation_norm_sq(doubling(1, 3), 32), places=12)

    def test_matched_pair_not_representable(self):
        with self.assertRaises(UsageError):
            koopman_spectral_measure(doubling(1, 2))


if __name__ == "__main__":
    unittest.main()
