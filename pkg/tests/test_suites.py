"""Suite registry and the batch runner's file outputs."""

import json
import os
import tempfile
import unittest
from pathlib import Path

from dunklkit.config import load_config
from dunklkit.suites import REGISTRY, run_suites

import yaml

FAST_DOC = {
    "group": {"kind": "z2_product", "multiplicities": [0.5]},
    "grid": {"R": 10.0, "N": 96},
    "potential": {"preset": "soft_coulomb", "params": {"a": 1.0}},
    "suites": ["trotter_order", "smoothing"],
    "seed": 5,
}


def _load(tmp, doc):
    path = os.path.join(tmp, "run.yaml")
    with open(path, "w") as fh:
        yaml.safe_dump(doc, fh)
    return load_config(path, known_suites=set(REGISTRY))


class TestRegistry(unittest.TestCase):
    def test_size_and_metadata(self):
        self.assertGreaterEqual(len(REGISTRY), 12)
        for name, defn in REGISTRY.items():
            self.assertEqual(name, defn.name)
            self.assertTrue(defn.description)
            self.assertTrue(defn.anchor)
            self.assertTrue(callable(defn.fn))


class TestRunner(unittest.TestCase):
    def test_outputs_and_determinism(self):
        with tempfile.TemporaryDirectory() as tmp:
            cfg = _load(tmp, FAST_DOC)
            out1 = Path(tmp) / "a"
            out2 = Path(tmp) / "b"
            s1 = run_suites(cfg, out1, cfg.seed)
            s2 = run_suites(cfg, out2, cfg.seed)

            self.assertTrue(s1["overall_pass"])
            self.assertEqual(s1["suite_order"], ["trotter_order", "smoothing"])
            for name in FAST_DOC["suites"]:
                self.assertTrue((out1 / f"{name}.csv").exists())
                block = s1["suites"][name]
                self.assertIn("hard_checks", block)
                self.assertTrue(block["pass"])
            self.assertIn("trotter_error_vs_n", s1["curves"])

            # byte-identical reruns, summary and curve files alike
            self.assertEqual(
                (out1 / "summary.json").read_bytes(),
                (out2 / "summary.json").read_bytes(),
            )
            for name in FAST_DOC["suites"]:
                self.assertEqual(
                    (out1 / f"{name}.csv").read_bytes(),
                    (out2 / f"{name}.csv").read_bytes(),
                )

            persisted = json.loads((out1 / "summary.json").read_text())
            self.assertEqual(persisted["seed"], 5)
            self.assertEqual(persisted["config"]["grid"]["N"], 96)

    def test_seed_changes_draws(self):
        doc = dict(FAST_DOC, suites=["riesz_l2"], grid={"R": 10.0, "N": 48})
        with tempfile.TemporaryDirectory() as tmp:
            cfg = _load(tmp, doc)
            s1 = run_suites(cfg, Path(tmp) / "a", 1)
            s2 = run_suites(cfg, Path(tmp) / "b", 2)
            v1 = s1["suites"]["riesz_l2"]["values"]
            v2 = s2["suites"]["riesz_l2"]["values"]
            self.assertNotEqual(v1, v2)


class TestCurveFiles(unittest.TestCase):
    def test_csv_layout(self):
        with tempfile.TemporaryDirectory() as tmp:
            doc = dict(FAST_DOC, suites=["trotter_order"])
            cfg = _load(tmp, doc)
            out = Path(tmp) / "run"
            run_suites(cfg, out, 0)
            lines = (out / "trotter_order.csv").read_text().splitlines()
            self.assertEqual(lines[0], "curve,x,y")
            for line in lines[1:]:
                name, x, y = line.split(",")
                self.assertEqual(name, "trotter_error_vs_n")
                float(x), float(y)


if __name__ == "__main__":
    unittest.main()
