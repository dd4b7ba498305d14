"""Run configuration loading and validation paths."""

import json
import os
import tempfile
import unittest

import yaml

from dunklkit.config import DEFAULT_SWEEPS, load_config
from dunklkit.errors import ConfigError


def _write(tmp, name, payload):
    path = os.path.join(tmp, name)
    with open(path, "w") as fh:
        if name.endswith(".json"):
            json.dump(payload, fh)
        elif isinstance(payload, str):
            fh.write(payload)
        else:
            yaml.safe_dump(payload, fh)
    return path


class TestLoadConfig(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def test_full_document(self):
        path = _write(
            self.tmp,
            "run.yaml",
            {
                "group": {"kind": "z2_product", "multiplicities": [0.5, 1.0]},
                "grid": {"R": 8.0, "N": 64},
                "potential": {"preset": "constant", "params": {"c": 2}},
                "suites": ["plancherel"],
                "sweeps": {"t_list": [0.2]},
                "out_dir": "runs/x",
                "seed": 7,
            },
        )
        cfg = load_config(path, known_suites={"plancherel", "heat_kernel"})
        self.assertEqual(cfg.group["multiplicities"], [0.5, 1.0])
        self.assertEqual(cfg.grid, {"R": 8.0, "N": 64})
        self.assertEqual(cfg.potential["params"]["c"], 2.0)
        self.assertEqual(cfg.suites, ("plancherel",))
        self.assertEqual(cfg.sweeps["t_list"], [0.2])
        # unspecified sweep axes fall back to the defaults
        self.assertEqual(cfg.sweeps["kappa_list"], DEFAULT_SWEEPS["kappa_list"])
        self.assertEqual(cfg.seed, 7)

    def test_json_document(self):
        path = _write(self.tmp, "run.json", {"grid": {"R": 6.0, "N": 32}})
        cfg = load_config(path)
        self.assertEqual(cfg.grid["N"], 32)

    def test_empty_suite_list_means_all(self):
        path = _write(self.tmp, "run.yaml", {"suites": []})
        cfg = load_config(path, known_suites={"b", "a"})
        self.assertEqual(cfg.suites, ("a", "b"))

    def test_defaults_fill_missing_sections(self):
        path = _write(self.tmp, "run.yaml", {})
        cfg = load_config(path)
        self.assertEqual(cfg.group["kind"], "z2_product")
        self.assertEqual(cfg.out_dir, "runs/latest")
        self.assertEqual(cfg.seed, 0)

    def test_dihedral_group(self):
        path = _write(
            self.tmp, "run.yaml", {"group": {"kind": "dihedral", "m": 4, "k_even": 0.3}}
        )
        cfg = load_config(path)
        self.assertEqual(cfg.group["m"], 4)

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config(os.path.join(self.tmp, "nope.yaml"))

    def test_unparseable(self):
        path = _write(self.tmp, "run.yaml", "group: [unclosed\n  - ]broken")
        with self.assertRaises(ConfigError):
            load_config(path)

    def test_non_mapping_root(self):
        path = _write(self.tmp, "run.yaml", "- 1\n- 2\n")
        with self.assertRaises(ConfigError):
            load_config(path)

    def test_rejections(self):
        bad_docs = [
            {"group": {"kind": "bogus"}},
            {"group": {"kind": "z2_product", "multiplicities": []}},
            {"group": {"kind": "z2_product", "multiplicities": [-0.5]}},
            {"group": {"kind": "dihedral", "m": 1}},
            {"grid": {"R": -1.0}},
            {"grid": {"N": 33}},
            {"grid": {"N": 2.5}},
            {"potential": {"preset": "bogus"}},
            {"potential": {"preset": "inverse_power"}},
            {"suites": "plancherel"},
            {"sweeps": {"t_list": ["x"]}},
            {"seed": -3},
            {"seed": 1.5},
        ]
        for i, doc in enumerate(bad_docs):
            path = _write(self.tmp, f"bad{i}.yaml", doc)
            with self.assertRaises(ConfigError, msg=f"doc {i}: {doc}"):
                load_config(path)

    def test_unknown_suite(self):
        path = _write(self.tmp, "run.yaml", {"suites": ["nope"]})
        with self.assertRaises(ConfigError):
            load_config(path, known_suites={"plancherel"})
        # without a registry the names pass through unchecked
        cfg = load_config(path)
        self.assertEqual(cfg.suites, ("nope",))


if __name__ == "__main__":
    unittest.main()
