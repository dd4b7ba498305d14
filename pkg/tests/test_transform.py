"""Spectral matrix, roundtrip, translation, convolution, disk cache."""

import math
import os
import tempfile
import unittest

import numpy as np

from dunklkit import families
from dunklkit.errors import InputError
from dunklkit.grids import SampledFunction, build_grid
from dunklkit.reflection import RootSystem
from dunklkit.transform import (
    build_spectral_matrix,
    c_k,
    convolve,
    dunkl_transform,
    inverse_transform,
    parseval_defect,
    refinement_defect_slope,
    spectral_heat_sample,
    translate_radial,
)


def _setup(kappa, R=10.0, n=96):
    rs = RootSystem.z2_product([kappa])
    grid = build_grid(rs, R, n)
    return build_spectral_matrix(grid, cache=False)


class TestNormalization(unittest.TestCase):
    def test_classical_constant(self):
        rs = RootSystem.z2_product([0.0])
        self.assertAlmostEqual(c_k(rs), math.sqrt(2.0 * math.pi), places=12)

    def test_product_constant(self):
        rs2 = RootSystem.z2_product([0.4, 0.9])
        a = c_k(RootSystem.z2_product([0.4]))
        b = c_k(RootSystem.z2_product([0.9]))
        self.assertAlmostEqual(c_k(rs2), a * b, places=10)


class TestRoundtrip(unittest.TestCase):
    def test_roundtrip_and_parseval(self):
        for kap in (0.0, 0.5, 1.5):
            sm = _setup(kap, n=128)
            xs = sm.grid.nodes[:, 0]
            rng = np.random.default_rng(2)
            f = SampledFunction(sm.grid, families.random_band_limited(xs, rng))
            g = SampledFunction(sm.grid, families.random_band_limited(xs, rng))
            back = inverse_transform(sm, dunkl_transform(sm, f))
            rel = SampledFunction(sm.grid, back.values - f.values).norm_l2()
            self.assertLess(rel / f.norm_l2(), 1e-6)
            self.assertLess(parseval_defect(sm, f, g), 1e-8)

    def test_inverse_is_forward_with_negation(self):
        # odd input: the two transforms differ by a sign
        sm = _setup(0.5)
        xs = sm.grid.nodes[:, 0]
        f = SampledFunction(sm.grid, xs * np.exp(-(xs**2)))
        fwd = dunkl_transform(sm, f)
        inv = inverse_transform(sm, f)
        np.testing.assert_allclose(inv.values, -fwd.values, atol=1e-12)

    def test_grid_mismatch_rejected(self):
        sm = _setup(0.5)
        other = build_grid(sm.grid.rs, 10.0, 96)
        f = SampledFunction(other, np.zeros(len(other)))
        with self.assertRaises(InputError):
            dunkl_transform(sm, f)


class TestTranslation(unittest.TestCase):
    def test_translate_at_origin_is_identity(self):
        sm = _setup(0.7)
        prof = lambda r: np.exp(-(r**2) / 2.0)
        got = translate_radial(sm.grid.rs, sm.grid, [0.0], prof)
        xs = np.abs(sm.grid.nodes[:, 0])
        np.testing.assert_allclose(got.values, prof(xs), atol=1e-12)

    def test_translation_phase_identity(self):
        # transform side: translation multiplies by the deformed phase E(x, i xi)
        from dunklkit.intertwine import dunkl_kernel

        sm = _setup(0.5, R=12.0, n=128)
        prof = lambda r: np.exp(-(r**2) / 2.0)
        f = SampledFunction(sm.grid, prof(np.abs(sm.grid.nodes[:, 0])))
        x = [1.3]
        tau = translate_radial(sm.grid.rs, sm.grid, x, prof, n_quad=96)
        lhs = dunkl_transform(sm, tau)
        phase = np.array([dunkl_kernel(sm.grid.rs, x, 1j * xi) for xi in sm.grid.nodes])
        rhs = phase * dunkl_transform(sm, f).values
        scale = np.max(np.abs(rhs))
        np.testing.assert_allclose(lhs.values / scale, rhs / scale, atol=1e-7)


class TestConvolution(unittest.TestCase):
    def test_heat_semigroup_through_convolution(self):
        sm = _setup(0.5, n=128)
        e1 = spectral_heat_sample(sm, 0.3)
        e2 = spectral_heat_sample(sm, 0.4)
        e3 = spectral_heat_sample(sm, 0.7)
        f1 = SampledFunction(sm.grid, e1.values.astype(complex))
        f2 = SampledFunction(sm.grid, e2.values.astype(complex))
        conv = convolve(sm, f1, f2)
        mask = sm.grid.interior_mask(0.5)
        np.testing.assert_allclose(
            conv.values.real[mask], e3.values[mask], atol=1e-7
        )


class TestCache(unittest.TestCase):
    def test_cache_roundtrip(self):
        rs = RootSystem.z2_product([0.5])
        grid = build_grid(rs, 6.0, 32)
        with tempfile.TemporaryDirectory() as tmp:
            old = os.environ.get("DUNKLKIT_CACHE")
            os.environ["DUNKLKIT_CACHE"] = tmp
            try:
                sm1 = build_spectral_matrix(grid)
                files = [p for p in os.listdir(tmp) if p.endswith(".npz")]
                self.assertEqual(len(files), 1)
                sm2 = build_spectral_matrix(grid)
                np.testing.assert_array_equal(sm1.kernel_table, sm2.kernel_table)
            finally:
                if old is None:
                    os.environ.pop("DUNKLKIT_CACHE", None)
                else:
                    os.environ["DUNKLKIT_CACHE"] = old

    def test_cache_opt_out(self):
        rs = RootSystem.z2_product([0.5])
        grid = build_grid(rs, 6.0, 32)
        with tempfile.TemporaryDirectory() as tmp:
            old = os.environ.get("DUNKLKIT_CACHE")
            os.environ["DUNKLKIT_CACHE"] = tmp
            try:
                build_spectral_matrix(grid, cache=False)
                self.assertEqual(os.listdir(tmp), [])
            finally:
                if old is None:
                    os.environ.pop("DUNKLKIT_CACHE", None)
                else:
                    os.environ["DUNKLKIT_CACHE"] = old


class TestRefinement(unittest.TestCase):
    def test_roundtrip_defect_decays(self):
        rs = RootSystem.z2_product([0.5])

        def probe(sm):
            xs = sm.grid.nodes[:, 0]
            f = SampledFunction(sm.grid, families.gaussian(xs, 0.8))
            back = inverse_transform(sm, dunkl_transform(sm, f))
            return SampledFunction(sm.grid, back.values - f.values).norm_l2()

        slope = refinement_defect_slope(rs, 10.0, (32, 48, 64), probe)
        self.assertGreater(slope, 2.0)


if __name__ == "__main__":
    unittest.main()
