import math
import unittest

import numpy as np

from ergodic_rates.core.errors import DomainError, UsageError
from ergodic_rates.measures.circle import arc_mass, atom_at_one, fejer_functional
from ergodic_rates.models.unitary import (
    DiagonalUnitary,
    StateVector,
    cesaro_average,
    cesaro_deviation_norm_sq,
    correlation,
    correlation_deviation_norm_sq,
    fixed_part,
    random_diagonal_model,
    spectral_measure,
    truncate,
)
from ergodic_rates.measures.designer import in_gap


class TestSpectralMeasure(unittest.TestCase):

    def test_two_phases(self):
        U = DiagonalUnitary(np.array([0.0, np.pi]))
        psi = StateVector(np.array([1.0, 1.0]) / math.sqrt(2))
        mu = spectral_measure(U, psi)
        self.assertAlmostEqual(atom_at_one(mu), 0.5)
        self.assertAlmostEqual(arc_mass(mu, np.pi) - arc_mass(mu, 3.0), 0.5)

    def test_basis_vector(self):
        U = DiagonalUnitary(np.array([0.0, np.pi]))
        mu = spectral_measure(U, StateVector.basis(2, 1))
        self.assertAlmostEqual(mu.total_mass, 1.0)
        self.assertEqual(atom_at_one(mu), 0.0)
        self.assertAlmostEqual(arc_mass(mu, np.pi), 1.0)

    def test_random_model(self):
        rng = np.random.default_rng(64)
        U, psi = random_diagonal_model(rng, 64, fixed_fraction=0.25)
        mu = spectral_measure(U, psi)
        self.assertAlmostEqual(mu.total_mass, 1.0, places=12)
        expected = float(np.sum(np.abs(psi.coefficients[U.phases == 0.0]) ** 2))
        self.assertAlmostEqual(atom_at_one(mu), expected, places=14)

    def test_dimension_mismatch(self):
        with self.assertRaises(UsageError):
            spectral_measure(DiagonalUnitary(np.zeros(3)), StateVector.basis(2, 0))

    def test_phase_range(self):
        with self.assertRaises(DomainError):
            DiagonalUnitary(np.array([-np.pi]))
        U = DiagonalUnitary.from_angles([-np.pi, 3 * np.pi / 2])
        np.testing.assert_allclose(U.phases, [np.pi, -np.pi / 2])


class TestFixedPart(unittest.TestCase):

    def test_no_fixed_phases(self):
        U = DiagonalUnitary(np.array([0.5, -1.0]))
        self.assertEqual(fixed_part(U, StateVector(np.array([1.0, 2.0]))).norm_sq, 0.0)

    def test_identity(self):
        psi = StateVector(np.array([0.3, 0.4j, -1.0]))
        out = fixed_part(DiagonalUnitary(np.zeros(3)), psi)
        np.testing.assert_array_equal(out.coefficients, psi.coefficients)

    def test_mixed(self):
        U = DiagonalUnitary(np.array([0.0, np.pi / 3]))
        out = fixed_part(U, StateVector(np.array([0.6, 0.8])))
        np.testing.assert_array_equal(out.coefficients, [0.6, 0.0])

    def test_idempotent(self):
        U, psi = random_diagonal_model(np.random.default_rng(5), 40, fixed_fraction=0.3)
        once = fixed_part(U, psi)
        np.testing.assert_array_equal(fixed_part(U, once).coefficients, once.coefficients)
        self.assertGreater(once.norm_sq, 0.0)

    def test_commutes_with_cesaro_average(self):
        U, psi = random_diagonal_model(np.random.default_rng(6), 40, fixed_fraction=0.3)
        star = fixed_part(U, psi)
        for K in (1, 3, 64, 1 << 15):
            averaged = cesaro_average(U, psi, K)
            np.testing.assert_allclose(fixed_part(U, averaged).coefficients, star.coefficients, atol=1e-15)
            np.testing.assert_allclose(cesaro_average(U, star, K).coefficients, star.coefficients, atol=1e-15)


class TestCesaro(unittest.TestCase):

    def test_identity_is_zero(self):
        U = DiagonalUnitary(np.zeros(4))
        psi = StateVector(np.array([1.0, 2.0, 3.0, 4.0]))
        for K in (1, 2, 17, 1 << 20):
            self.assertEqual(cesaro_deviation_norm_sq(U, psi, K), 0.0)

    def test_alternating(self):
        U = DiagonalUnitary(np.array([np.pi]))
        psi = StateVector.basis(1, 0)
        for K in range(1, 40):
            expected = 0.0 if K % 2 == 0 else 1.0 / K**2
            self.assertAlmostEqual(cesaro_deviation_norm_sq(U, psi, K), expected, places=14)

    def test_quarter_turn(self):
        U = DiagonalUnitary(np.array([np.pi / 2]))
        self.assertAlmostEqual(cesaro_deviation_norm_sq(U, StateVector.basis(1, 0), 2), 0.5, places=14)

    def test_average_matches_power_sum(self):
        rng = np.random.default_rng(8)
        U, psi = random_diagonal_model(rng, 16)
        K = 13
        brute = sum(psi.coefficients * np.exp(1j * j * U.phases) for j in range(K)) / K
        np.testing.assert_allclose(cesaro_average(U, psi, K).coefficients, brute, atol=1e-13)

    def test_three_routes_agree(self):
        """直接范数 = Fejér 泛函 = 滞后双重和"""
        rng = np.random.default_rng(99)
        U, psi = random_diagonal_model(rng, 128, fixed_fraction=0.2)
        mu = spectral_measure(U, psi - fixed_part(U, psi))
        for K in (1, 2, 3, 16, 100, 512):
            direct = cesaro_deviation_norm_sq(U, psi, K)
            self.assertAlmostEqual(fejer_functional(mu, K) / direct, 1.0, places=10)
            self.assertAlmostEqual(correlation_deviation_norm_sq(U, psi, K) / direct, 1.0, places=10)

    def test_rejects_bad_K(self):
        with self.assertRaises(DomainError):
            cesaro_deviation_norm_sq(DiagonalUnitary(np.zeros(1)), StateVector.basis(1, 0), 0)


class TestCorrelation(unittest.TestCase):

    def test_lag_zero_is_deviation_mass(self):
        U = DiagonalUnitary(np.array([0.0, 1.0, -2.0]))
        psi = StateVector(np.array([0.5, 0.5, 0.7]))
        self.assertAlmostEqual(correlation(U, psi, 0).real, 0.25 + 0.49)

    def test_alternating_sign(self):
        U = DiagonalUnitary(np.array([np.pi]))
        for j in range(8):
            self.assertAlmostEqual(correlation(U, StateVector.basis(1, 0), j), (-1) ** j, places=12)


class TestTruncationAndRandom(unittest.TestCase):

    def test_truncate(self):
        U = DiagonalUnitary(np.array([0.0, 0.05, -0.4, 2.0]))
        psi = StateVector(np.ones(4))
        np.testing.assert_array_equal(truncate(U, psi, 1).coefficients, [1, 0, 0, 1])
        np.testing.assert_array_equal(truncate(U, psi, 10).coefficients, [1, 0, 1, 1])
        np.testing.assert_array_equal(truncate(U, psi, 100).coefficients, [1, 1, 1, 1])
        with self.assertRaises(DomainError):
            truncate(U, psi, 0)

    def test_random_gap_model(self):
        rng = np.random.default_rng(1)
        U, psi = random_diagonal_model(rng, 512, gap=0.8, fixed_fraction=0.1)
        self.assertFalse(np.any(in_gap(U.phases, 0.8)))
        self.assertTrue(np.any(U.phases == 0.0))
        self.assertAlmostEqual(psi.norm, 1.0, places=12)

    def test_seeded_reproducibility(self):
        a = random_diagonal_model(np.random.default_rng(5), 32, gap=0.3)
        b = random_diagonal_model(np.random.default_rng(5), 32, gap=0.3)
        np.testing.assert_array_equal(a[0].phases, b[0].phases)
        np.testing.assert_array_equal(a[1].coefficients, b[1].coefficients)


if __name__ == "__main__":
    unittest.main()
