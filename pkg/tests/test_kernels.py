import unittest

import numpy as np

from ergodic_rates.core.errors import DomainError
from ergodic_rates.measures.kernels import cesaro_symbol, dirichlet_kernel, fejer_weight, wrap_angle
from ergodic_rates.measures.quadrature import iter_segment_rules


class TestKernels(unittest.TestCase):

    def test_dirichlet_at_zero(self):
        for K in (1, 2, 7, 1 << 20):
            self.assertEqual(float(dirichlet_kernel(0.0, K)), float(K))
            self.assertEqual(float(fejer_weight(0.0, K)), 1.0)

    def test_dirichlet_closed_form(self):
        theta = np.array([0.3, -1.2, 2.5, np.pi])
        K = 9
        expected = np.sin(K * theta / 2) / np.sin(theta / 2)
        np.testing.assert_allclose(dirichlet_kernel(theta, K), expected, rtol=1e-12, atol=1e-12)

    def test_taylor_branch_is_continuous(self):
        """Taylor 分支与闭式在切换点附近一致"""
        K = 1000
        for theta in (1e-10, 5e-10, 2e-9):
            series = float(dirichlet_kernel(theta, K))
            self.assertAlmostEqual(series / K, 1.0 - (K * K - 1) * theta * theta / 24.0, places=12)
        near = 2e-6
        closed = np.sin(K * near / 2) / np.sin(near / 2)
        self.assertAlmostEqual(float(dirichlet_kernel(near, K)) / closed, 1.0, places=10)

    def test_fejer_weight_bounded(self):
        rng = np.random.default_rng(7)
        theta = rng.uniform(-np.pi, np.pi, size=2000)
        for K in (1, 3, 64, 4097):
            w = fejer_weight(theta, K)
            self.assertTrue(np.all(w >= 0.0))
            self.assertTrue(np.all(w <= 1.0 + 1e-12))

    def test_cesaro_symbol_matches_fejer(self):
        theta = np.linspace(-np.pi, np.pi, 101)
        for K in (2, 5, 33):
            g = cesaro_symbol(theta, K)
            np.testing.assert_allclose(np.abs(g) ** 2, fejer_weight(theta, K), atol=1e-12)
        self.assertAlmostEqual(complex(cesaro_symbol(np.pi / 2, 2)), (1 + 1j) / 2)
        self.assertEqual(complex(cesaro_symbol(0.0, 17)), 1.0)

    def test_wrap_angle(self):
        np.testing.assert_allclose(wrap_angle([3 * np.pi, -np.pi, np.pi, 0.5]), [np.pi, np.pi, np.pi, 0.5])

    def test_rejects_nonpositive_K(self):
        with self.assertRaises(DomainError):
            dirichlet_kernel(0.1, 0)
        with self.assertRaises(DomainError):
            fejer_weight(0.1, -3)
        with self.assertRaises(DomainError):
            cesaro_symbol(0.1, 0)


class TestPanelQuadrature(unittest.TestCase):

    def _integrate(self, c, alpha, lo, hi, width, chunk, f=lambda t: np.ones_like(t)):
        total = 0.0
        for nodes, weights in iter_segment_rules(c, alpha, lo, hi, width, chunk=chunk):
            self.assertEqual(nodes.shape, weights.shape)
            total += float(np.sum(weights * f(nodes)))
        return total

    def test_partial_last_chunk(self):
        """面板数不是 chunk 的整数倍时最后一块也要对齐"""
        # about 30 panels past the origin panel, in chunks of 7
        got = self._integrate(1.0, 1.0, 0.0, 0.31, 0.01, chunk=7)
        self.assertAlmostEqual(got, 0.31, places=12)

    def test_power_law_mass_across_chunks(self):
        alpha = 0.5
        for chunk in (1, 3, 8192):
            got = self._integrate(1.0, alpha, -0.7, 0.9, 0.013, chunk=chunk)
            expected = (0.7**alpha + 0.9**alpha) / alpha
            self.assertAlmostEqual(got, expected, places=10)

    def test_offset_interval(self):
        got = self._integrate(2.0, 1.5, 0.05, 1.0, 0.02, chunk=5, f=np.cos)
        # ∫ 2 s^{0.5} cos(s) ds against a fine trapezoid reference
        s = np.linspace(0.05, 1.0, 200001)
        y = 2.0 * np.sqrt(s) * np.cos(s)
        ref = float(np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(s)))
        self.assertAlmostEqual(got, ref, places=8)


if __name__ == "__main__":
    unittest.main()
