import json
import os
import tempfile
import unittest

from ergodic_rates.cli.config import (
    ConfigError,
    ExperimentConfig,
    KoopmanSpec,
    LacunaryConfig,
    load_config,
    parse_config,
)
from ergodic_rates.cli.main import apply_overrides
from ergodic_rates.core.errors import UsageError

POWER_LAW = {"measure": {"type": "power_law", "alpha": 0.5}, "checks": ["lemma13_identity"]}


class TestParseConfig(unittest.TestCase):

    def test_defaults(self):
        config = parse_config(json.dumps(POWER_LAW))
        self.assertEqual(config.k_grid.min_exp, 4)
        self.assertEqual(config.k_grid.max_exp, 20)
        self.assertEqual(config.tail_fraction, 0.5)
        self.assertEqual(config.output.formats, ["csv", "json", "svg"])
        self.assertIsNone(config.measure.c)

    def test_lacunary_defaults(self):
        config = parse_config(json.dumps({"measure": {"type": "lacunary", "low_exponent": 0.2, "high_exponent": 1.8}}))
        self.assertIsInstance(config.measure, LacunaryConfig)
        self.assertEqual(config.measure.depth, 8)

    def test_koopman_model(self):
        text = json.dumps({"model": {"type": "koopman", "map": "doubling", "observable": [[1, 1.0, 0.0]]}})
        self.assertIsInstance(parse_config(text).model, KoopmanSpec)

    def test_rotation_needs_alpha(self):
        text = json.dumps({"model": {"type": "koopman", "map": "rotation", "observable": [[1, 1.0, 0.0]]}})
        with self.assertRaises(ConfigError):
            parse_config(text)

    def test_bad_json_reports_position(self):
        with self.assertRaises(ConfigError) as cm:
            parse_config('{\n  "measure": {"type": "power_law",\n}', "exp.json")
        self.assertIn("exp.json", str(cm.exception))
        self.assertIn("line 3", str(cm.exception))

    def test_unknown_check(self):
        data = dict(POWER_LAW, checks=["thm99_nothing"])
        with self.assertRaises(ConfigError) as cm:
            parse_config(json.dumps(data))
        self.assertIn("checks", str(cm.exception))

    def test_unknown_check_param(self):
        data = dict(POWER_LAW, check_params={"cor18": {"depth": 3}})
        with self.assertRaises(ConfigError):
            parse_config(json.dumps(data))

    def test_extra_key_rejected(self):
        with self.assertRaises(ConfigError) as cm:
            parse_config(json.dumps(dict(POWER_LAW, grid=[1, 2])))
        self.assertIn("grid", str(cm.exception))

    def test_exactly_one_source(self):
        with self.assertRaises(ConfigError):
            parse_config(json.dumps({"checks": []}))
        both = dict(POWER_LAW, model={"type": "random_diagonal", "dim": 4})
        with self.assertRaises(ConfigError):
            parse_config(json.dumps(both))

    def test_grid_limits(self):
        with self.assertRaises(ConfigError):
            parse_config(json.dumps(dict(POWER_LAW, k_grid={"min_exp": 4, "max_exp": 1100})))
        with self.assertRaises(ConfigError):
            parse_config(json.dumps(dict(POWER_LAW, eps_grid={"min_exp": 1, "max_exp": 4})))

    def test_config_error_is_usage_error(self):
        self.assertTrue(issubclass(ConfigError, UsageError))


class TestLoadConfig(unittest.TestCase):

    def test_round_trip_through_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "exp.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(dict(POWER_LAW, name="pl"), fh)
            config = load_config(path)
        self.assertEqual(config.name, "pl")

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config("/nonexistent/exp.json")

    def test_overrides(self):
        config = ExperimentConfig.model_validate(POWER_LAW)
        updated = apply_overrides(config, 42, "elsewhere")
        self.assertEqual(updated.seed, 42)
        self.assertEqual(updated.output.dir, "elsewhere")
        self.assertEqual(config.output.dir, "out")
        self.assertIs(apply_overrides(config, None, None), config)


if __name__ == "__main__":
    unittest.main()
