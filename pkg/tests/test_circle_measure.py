import math
import unittest

import numpy as np

from ergodic_rates.core.errors import DomainError, UsageError
from ergodic_rates.measures.circle import (
    CircleMeasure,
    PowerLawSegment,
    arc_mass,
    arc_masses,
    atom_at_one,
    fejer_functional,
    fourier_coefficient,
    integrate,
    kachurovskii_majorant,
    pointwise_exponents,
    sector_mass,
)
from ergodic_rates.measures.designer import (
    fejer_asymptotic_constant,
    gap_measure,
    power_law_measure,
)

UNIFORM = power_law_measure(1.0, 1.0 / (2.0 * math.pi))
POWER_HALF = power_law_measure(0.5, 0.25)


def dyadic(lo: int, hi: int):
    return [2.0 ** (-k) for k in range(lo, hi + 1)]


def random_atomic(rng: np.random.Generator) -> CircleMeasure:
    n = int(rng.integers(1, 513))
    angles = np.pi - rng.uniform(0.0, 2.0 * np.pi, size=n)
    return CircleMeasure.from_arrays(angles, rng.exponential(size=n))


class TestArcMass(unittest.TestCase):

    def test_uniform_quarter(self):
        self.assertAlmostEqual(arc_mass(UNIFORM, np.pi / 2), 0.5, places=14)

    def test_atom_in_and_out(self):
        mu = CircleMeasure.atomic([(0.1, 0.3)])
        self.assertEqual(arc_mass(mu, 0.05), 0.0)
        self.assertAlmostEqual(arc_mass(mu, 0.2), 0.3)

    def test_half_open_boundary(self):
        """θ = ε 计入，θ = −ε 不计入"""
        mu = CircleMeasure.atomic([(0.5, 1.0), (-0.5, 2.0)])
        self.assertAlmostEqual(arc_mass(mu, 0.5), 1.0)
        self.assertAlmostEqual(arc_mass(mu, 0.5000001), 3.0)
        self.assertAlmostEqual(arc_mass(CircleMeasure.atomic([(np.pi, 1.0)]), np.pi), 1.0)

    def test_power_law_closed_form(self):
        self.assertAlmostEqual(arc_mass(POWER_HALF, 0.04), 0.2, places=14)

    def test_power_law_quadrature_matches_closed_form(self):
        total = integrate(POWER_HALF, lambda t: np.ones_like(t), 1.0).real
        self.assertAlmostEqual(total / POWER_HALF.total_mass, 1.0, places=10)

    def test_monotone_and_total(self):
        rng = np.random.default_rng(11)
        mu = CircleMeasure.mixture([random_atomic(rng), POWER_HALF])
        eps = np.sort(rng.uniform(1e-6, np.pi, size=200))
        masses = arc_masses(mu, eps)
        self.assertTrue(np.all(np.diff(masses) >= -1e-15))
        self.assertAlmostEqual(arc_mass(mu, np.pi) / mu.total_mass, 1.0, places=12)

    def test_mixture_is_additive(self):
        atoms = CircleMeasure.atomic([(0.01, 0.2), (-1.0, 0.5)])
        mix = CircleMeasure.mixture([atoms, POWER_HALF])
        for eps in (0.005, 0.02, 1.5):
            self.assertAlmostEqual(arc_mass(mix, eps), arc_mass(atoms, eps) + arc_mass(POWER_HALF, eps), places=14)

    def test_radius_out_of_range(self):
        for eps in (0.0, -0.1, 4.0):
            with self.assertRaises(DomainError):
                arc_mass(UNIFORM, eps)


class TestSectorsAndAtoms(unittest.TestCase):

    def test_sector_one_is_total(self):
        mu = CircleMeasure.atomic([(np.pi, 0.4), (0.3, 0.6)])
        self.assertAlmostEqual(sector_mass(mu, 1), 1.0)

    def test_sector_boundary(self):
        mu = CircleMeasure.atomic([(np.pi / 2, 1.0)])
        self.assertEqual(sector_mass(mu, 2), 1.0)
        self.assertEqual(sector_mass(mu, 3), 0.0)

    def test_sector_power_law(self):
        self.assertAlmostEqual(sector_mass(POWER_HALF, 4), (2 * 0.25 / 0.5) * (np.pi / 4) ** 0.5, places=14)

    def test_sector_nonincreasing(self):
        values = [sector_mass(POWER_HALF, K) for K in range(1, 200)]
        self.assertTrue(all(b <= a for a, b in zip(values, values[1:])))

    def test_atom_at_one(self):
        atoms = CircleMeasure.atomic([(0.0, 0.7), (1.0, 0.3)])
        self.assertAlmostEqual(atom_at_one(atoms), 0.7)
        self.assertEqual(atom_at_one(POWER_HALF), 0.0)
        self.assertAlmostEqual(atom_at_one(CircleMeasure.mixture([atoms, POWER_HALF])), 0.7)

    def test_invalid_atoms(self):
        with self.assertRaises(DomainError):
            CircleMeasure.atomic([(-np.pi, 1.0)])
        with self.assertRaises(DomainError):
            CircleMeasure.atomic([(0.2, -1.0)])
        with self.assertRaises(DomainError):
            PowerLawSegment(c=1.0, alpha=0.0)


class TestPointwiseExponents(unittest.TestCase):

    def test_power_law(self):
        est = pointwise_exponents(POWER_HALF, dyadic(4, 40))
        self.assertAlmostEqual(est.d_minus, 0.5, delta=0.02)
        self.assertAlmostEqual(est.d_plus, 0.5, delta=0.02)

    def test_power_law_boundary_two(self):
        est = pointwise_exponents(power_law_measure(2.0, 1.0), dyadic(4, 40))
        self.assertAlmostEqual(est.d_minus, 2.0, delta=0.05)
        self.assertAlmostEqual(est.d_plus, 2.0, delta=0.05)

    def test_gap_measure_is_infinite(self):
        mu = gap_measure(0.5, [(1.0, 0.5), (-2.0, 0.5)])
        est = pointwise_exponents(mu, dyadic(2, 30))
        self.assertEqual(est.d_minus, math.inf)
        self.assertEqual(est.d_plus, math.inf)

    def test_atom_at_zero(self):
        est = pointwise_exponents(CircleMeasure.atomic([(0.0, 1.0)]), dyadic(1, 30))
        self.assertEqual(est.d_minus, 0.0)
        self.assertEqual(est.d_plus, 0.0)

    def test_zero_measure(self):
        est = pointwise_exponents(CircleMeasure.empty(), dyadic(1, 10))
        self.assertEqual((est.d_minus, est.d_plus), (math.inf, math.inf))

    def test_short_or_unsorted_grid(self):
        with self.assertRaises(UsageError):
            pointwise_exponents(UNIFORM, dyadic(1, 5))
        with self.assertRaises(UsageError):
            pointwise_exponents(UNIFORM, list(reversed(dyadic(1, 12))))


class TestFejerFunctional(unittest.TestCase):

    def test_K_one_is_total_mass(self):
        self.assertAlmostEqual(fejer_functional(POWER_HALF, 1), POWER_HALF.total_mass)
        self.assertEqual(fejer_functional(CircleMeasure.empty(), 1), 0.0)

    def test_single_atoms(self):
        self.assertAlmostEqual(fejer_functional(CircleMeasure.atomic([(np.pi / 2, 1.0)]), 2), 0.5, places=14)
        self.assertAlmostEqual(fejer_functional(CircleMeasure.atomic([(np.pi, 1.0)]), 2), 0.0, places=14)

    def test_uniform_is_one_over_K(self):
        for K in (2, 16, 1 << 10, 1 << 14):
            self.assertAlmostEqual(fejer_functional(UNIFORM, K) * K, 1.0, places=10)

    def test_bounded_by_total_mass(self):
        rng = np.random.default_rng(3)
        mu = random_atomic(rng)
        for K in (2, 5, 100):
            self.assertLessEqual(fejer_functional(mu, K), mu.total_mass + 1e-12)

    def test_lower_arc_bound(self):
        rng = np.random.default_rng(5)
        mu = random_atomic(rng)
        for K in (4, 64, 1024):
            for eps in (0.1 / K, 0.5 / K, 0.99 / K):
                self.assertGreaterEqual(fejer_functional(mu, K), arc_mass(mu, eps) / 4.0 - 1e-15)

    def test_power_law_asymptotics(self):
        alpha, c = 0.5, 0.25
        K = 1 << 12
        C = fejer_asymptotic_constant(alpha, c)
        self.assertAlmostEqual(fejer_functional(POWER_HALF, K) * K**alpha / C, 1.0, delta=0.02)

    def test_lebesgue_constant(self):
        self.assertAlmostEqual(fejer_asymptotic_constant(1.0, 1.0 / (2 * np.pi)), 1.0, places=12)

    def test_fourier_coefficients(self):
        self.assertAlmostEqual(abs(fourier_coefficient(UNIFORM, 5)), 0.0, places=12)
        self.assertAlmostEqual(fourier_coefficient(UNIFORM, 0).real, 1.0, places=12)
        mu = CircleMeasure.atomic([(1.0, 2.0)])
        self.assertAlmostEqual(fourier_coefficient(mu, 3), 2.0 * np.exp(3j), places=12)


class TestMajorant(unittest.TestCase):

    def test_single_atom(self):
        mu = CircleMeasure.atomic([(np.pi / 2, 1.0)])
        # S_1 and S_2 contain the atom, S_3 does not
        self.assertAlmostEqual(kachurovskii_majorant(mu, 3), (1 + 3 + 5) / 9)
        self.assertAlmostEqual(kachurovskii_majorant(mu, 3, form="coarse"), (1 + 4 * (1 + 2)) / 9)

    def test_uniform(self):
        self.assertAlmostEqual(kachurovskii_majorant(UNIFORM, 2), (1 + 3 * 1) / 4)
        self.assertAlmostEqual(kachurovskii_majorant(UNIFORM, 1), 1.0)

    def test_empty(self):
        for K in (1, 2, 50):
            self.assertEqual(kachurovskii_majorant(CircleMeasure.empty(), K), 0.0)

    def test_dominates_fejer_functional(self):
        rng = np.random.default_rng(2024)
        grid = [2**e for e in range(0, 13)]
        for _ in range(100):
            mu = random_atomic(rng)
            for K in grid:
                f = fejer_functional(mu, K)
                sharp = kachurovskii_majorant(mu, K)
                self.assertLessEqual(f, sharp * (1 + 1e-12) + 1e-15)
                self.assertLessEqual(sharp, kachurovskii_majorant(mu, K, form="coarse") * (1 + 1e-12) + 1e-15)

    def test_unknown_form(self):
        with self.assertRaises(UsageError):
            kachurovskii_majorant(UNIFORM, 4, form="loose")  # type: ignore[arg-type]


if __name__ == "__main__":
    unittest.main()
