"""Smallness moduli, heat characterization, verdicts, smoothing norms."""

import math
import unittest

import numpy as np

from dunklkit.errors import CapabilityError, InputError
from dunklkit.grids import build_grid
from dunklkit.kato import (
    CLASSICAL,
    ORBIT,
    classify,
    growth_bound_check,
    heat_modulus,
    kato_equivalence_check,
    kato_modulus,
    resolvent_decay,
    smoothing_norms,
)
from dunklkit.reflection import RootSystem
from dunklkit.schrodinger import potential_function, potential_preset, resolved_calculus

ONE = potential_function("constant", c=1.0)


class TestModulus(unittest.TestCase):
    def test_constant_classical(self):
        # d = 1 Green factor is 1: the window integral is 2t
        for t in (0.5, 1.0, 2.0):
            m = kato_modulus(ONE, t, CLASSICAL, 1)
            self.assertAlmostEqual(m.value, 2.0 * t, places=9)
            self.assertFalse(m.divergent)

    def test_orbit_doubles_off_origin(self):
        t = 0.5
        at0 = kato_modulus(ONE, t, ORBIT, 1, probes=(0.0,))
        off = kato_modulus(ONE, t, ORBIT, 1, probes=(2.0,))
        self.assertAlmostEqual(at0.value, 2.0 * t, places=9)
        self.assertAlmostEqual(off.value, 4.0 * t, places=9)

    def test_trivial_group_collapses_orbit(self):
        t = 0.5
        off = kato_modulus(ONE, t, ORBIT, 1, probes=(2.0,), sign_group=False)
        self.assertAlmostEqual(off.value, 2.0 * t, places=9)

    def test_supercritical_diverges(self):
        V = potential_function("inverse_power", beta=1.5)
        m = kato_modulus(V, 1.0, CLASSICAL, 1)
        self.assertTrue(m.divergent)
        self.assertEqual(m.value, np.inf)

    def test_three_dim_examples(self):
        # radial |y|^-1: area factor 4 pi, integrand collapses to a constant
        m = kato_modulus(lambda r: 1.0 / np.maximum(r, 1e-300), 1.0, CLASSICAL, 3)
        self.assertAlmostEqual(m.value, 4.0 * math.pi, places=7)
        m2 = kato_modulus(
            lambda r: np.maximum(r, 1e-300) ** -2.0, 1.0, CLASSICAL, 3
        )
        self.assertTrue(m2.divergent)

    def test_input_validation(self):
        with self.assertRaises(InputError):
            kato_modulus(ONE, 0.0)
        with self.assertRaises(InputError):
            kato_modulus(ONE, 1.0, form="bogus")
        with self.assertRaises(CapabilityError):
            kato_modulus(ONE, 1.0, ORBIT, dimension=2)

    def test_equivalence_sandwich(self):
        soft = potential_function("soft_coulomb", a=1.0)
        rep = kato_equivalence_check(soft, (0.5, 1.0))
        for row in rep["rows"]:
            self.assertGreaterEqual(row["lower_slack"], -1e-10)
            self.assertGreaterEqual(row["upper_slack"], -1e-10)


class TestHeatModulus(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.rs = RootSystem.z2_product([0.5])

    def test_constant_is_exact(self):
        # mass one in every window: the time integral of |V| = 1 is t itself
        for t in (0.3, 1.0):
            hm = heat_modulus(self.rs, ONE, t)
            self.assertAlmostEqual(hm, t, places=8)

    def test_monotone_in_t(self):
        soft = potential_function("soft_coulomb", a=1.0)
        h1 = heat_modulus(self.rs, soft, 0.1, order=4, n_panels=6, epsabs=1e-8)
        h2 = heat_modulus(self.rs, soft, 1.0, order=4, n_panels=6, epsabs=1e-8)
        self.assertLess(h1, h2)

    def test_resolvent_constant(self):
        rep = resolvent_decay(self.rs, ONE, (1.0, 4.0), epsabs=1e-8)
        for row in rep["rows"]:
            self.assertAlmostEqual(row["norm"], 1.0 / row["a"], places=6)
            self.assertGreaterEqual(row["bound"] * 1.001, row["norm"])
        with self.assertRaises(InputError):
            resolvent_decay(self.rs, ONE, (-1.0,))


class TestGrowthBound(unittest.TestCase):
    def test_constant_trivial_group(self):
        rep = growth_bound_check(ONE, (0.5, 1.0, 2.0, 4.0), sign_group=False)
        self.assertLess(rep["C"], 2.0)
        self.assertTrue(rep["stable"])

    def test_orbit_form_larger(self):
        flat = growth_bound_check(ONE, (1.0, 2.0), probes=(3.0,), sign_group=False)
        orbit = growth_bound_check(ONE, (1.0, 2.0), probes=(3.0,), sign_group=True)
        self.assertGreater(orbit["C"], flat["C"] * 1.5)


class TestClassify(unittest.TestCase):
    def test_verdicts(self):
        rs = RootSystem.z2_product([0.5])
        rep = classify(rs, ONE, (0.0, 1.0), (0.0,))
        self.assertEqual(rep.verdict, "Kato")
        self.assertFalse(rep.diagnostics["divergent"])
        bad = classify(
            rs, potential_function("inverse_power", beta=1.5), (0.0, 1.0), (0.0,)
        )
        self.assertEqual(bad.verdict, "NotKato")
        self.assertTrue(bad.diagnostics["divergent"])


class TestSmoothing(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        rs = RootSystem.z2_product([0.5])
        grid = build_grid(rs, 10.0, 96)
        pot = potential_preset(grid, "soft_coulomb", a=1.0)
        cls.ed = resolved_calculus(grid, pot)

    def test_corner_norms(self):
        rep = smoothing_norms(self.ed, 0.5, [(1, 2), (2, 2), (2, "inf")])
        for v in rep.corner_norms.values():
            self.assertTrue(np.isfinite(v))
            self.assertGreater(v, 0.0)
        self.assertLessEqual(rep.corner_norms[("inf", "inf")], 1.0 + 1e-6)
        self.assertGreaterEqual(rep.interpolated[(2, 2)], rep.l2_direct * (1 - 1e-9))

    def test_invalid_inputs(self):
        with self.assertRaises(InputError):
            smoothing_norms(self.ed, 0.0, [])
        with self.assertRaises(InputError):
            smoothing_norms(self.ed, 0.5, [(2, 1)])


if __name__ == "__main__":
    unittest.main()
