"""Intertwining measure, deformed exponential kernel, phi envelope."""

import unittest

import numpy as np

from dunklkit.errors import CapabilityError, InputError
from dunklkit.intertwine import (
    dunkl_kernel,
    e_minus_i,
    intertwining_apply,
    kernel_bessel_1d,
    kernel_series_1d,
    nu_moments_oracle,
    nu_quadrature,
    phi,
    phi_lemma_defect,
    rank_one_measure,
    scaled_e_real,
)
from dunklkit.reflection import RootSystem, generate_group


class TestRankOneMeasure(unittest.TestCase):
    def test_probability_and_support(self):
        nodes, wts = rank_one_measure(0.7, 2.0, 48)
        self.assertAlmostEqual(wts.sum(), 1.0, places=12)
        self.assertTrue(np.all(wts > 0))
        self.assertTrue(np.all(np.abs(nodes) <= 2.0 + 1e-12))

    def test_kappa_zero_point_mass(self):
        nodes, wts = rank_one_measure(0.0, 1.5, 32)
        np.testing.assert_allclose(nodes, [1.5])
        np.testing.assert_allclose(wts, [1.0])

    def test_moments_match_oracle(self):
        for kap in (0.3, 0.5, 1.5):
            nodes, wts = rank_one_measure(kap, 1.0, 64)
            oracle = nu_moments_oracle(kap, 8)
            got = np.array([wts @ nodes**n for n in range(9)])
            np.testing.assert_allclose(got, oracle, atol=1e-12)

    def test_needs_two_nodes(self):
        with self.assertRaises(InputError):
            rank_one_measure(0.5, 1.0, 1)


class TestTensorMeasure(unittest.TestCase):
    def test_mass_and_apply(self):
        rs = RootSystem.z2_product([0.5, 1.0])
        q = nu_quadrature(rs, [1.0, -2.0], n=32)
        self.assertAlmostEqual(q.weights.sum(), 1.0, places=12)
        self.assertAlmostEqual(intertwining_apply(q, lambda p: np.ones(len(p))), 1.0)

    def test_dihedral_rejected(self):
        rs = RootSystem.dihedral(3, 0.5)
        with self.assertRaises(CapabilityError):
            nu_quadrature(rs, [1.0, 0.0])


class TestKernelOneDim(unittest.TestCase):
    def test_kappa_zero_is_exponential(self):
        s = np.linspace(-3, 3, 11)
        np.testing.assert_allclose(kernel_bessel_1d(s, 0.0), np.exp(s), rtol=1e-12)
        np.testing.assert_allclose(e_minus_i(s, 0.0), np.exp(-1j * s), rtol=1e-12)

    def test_series_matches_bessel(self):
        s = np.linspace(-8, 8, 33)
        for kap in (0.3, 0.5, 1.0, 1.5):
            np.testing.assert_allclose(
                kernel_series_1d(s, kap), kernel_bessel_1d(s, kap), rtol=1e-10
            )

    def test_scaled_form_bounded(self):
        s = np.linspace(-40, 40, 81)
        for kap in (0.0, 0.5, 2.0):
            v = scaled_e_real(s, kap)
            self.assertTrue(np.all(v > 0))
            self.assertTrue(np.all(v <= 1.0 + 1e-12))

    def test_imaginary_direction_contractive(self):
        s = np.linspace(-10, 10, 41)
        for kap in (0.5, 1.5):
            self.assertTrue(np.all(np.abs(e_minus_i(s, kap)) <= 1.0 + 1e-12))


class TestKernel(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.rs = RootSystem.z2_product([0.5, 1.5])

    def test_normalization_at_zero(self):
        self.assertEqual(dunkl_kernel(self.rs, [0.0, 0.0], [1.3, -0.7]), 1.0)

    def test_symmetry(self):
        x, y = [0.8, -1.1], [1.4, 0.3]
        self.assertAlmostEqual(
            dunkl_kernel(self.rs, x, y), dunkl_kernel(self.rs, y, x), places=12
        )

    def test_methods_agree(self):
        x, y = [1.2, 0.5], [-0.6, 2.0]
        ref = dunkl_kernel(self.rs, x, y, method="bessel")
        for method in ("series", "quadrature"):
            self.assertAlmostEqual(
                dunkl_kernel(self.rs, x, y, method=method), ref, places=9
            )

    def test_positive(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            x = rng.uniform(-3, 3, size=2)
            y = rng.uniform(-3, 3, size=2)
            self.assertGreater(dunkl_kernel(self.rs, x, y), 0.0)

    def test_unknown_method(self):
        with self.assertRaises(InputError):
            dunkl_kernel(self.rs, [1.0, 0.0], [0.0, 1.0], method="bogus")

    def test_imaginary_argument(self):
        rs0 = RootSystem.z2_product([0.0, 0.0])
        x = np.array([0.7, -1.2])
        v = np.array([0.4, 2.0])
        got = dunkl_kernel(rs0, x, 1j * v)
        np.testing.assert_allclose(got, np.exp(1j * x @ v), rtol=1e-12)
        z = dunkl_kernel(self.rs, x, 1j * v)
        self.assertLessEqual(abs(z), 1.0 + 1e-12)


class TestPhi(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.rs = RootSystem.z2_product([0.8])
        cls.g = generate_group(cls.rs)

    def test_base_value(self):
        # x = y = 0: integrand is e^{sqrt(1)} identically
        val = phi(self.rs, self.g, [0.0], [0.0]).value
        self.assertAlmostEqual(val, np.e, places=12)

    def test_comparison_inequality(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            x, y, y0 = rng.uniform(-2.5, 2.5, size=3)
            d = phi_lemma_defect(self.rs, self.g, [x], [y], [y0])
            self.assertGreaterEqual(d, -1e-10)


if __name__ == "__main__":
    unittest.main()
