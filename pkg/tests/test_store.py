import json
import os
import tempfile
import unittest

import numpy as np

from ergodic_rates.core.errors import UsageError
from ergodic_rates.measures.circle import CircleMeasure, PowerLawSegment, arc_mass, fejer_functional
from ergodic_rates.measures.store import load_measure, measure_from_dict, measure_to_dict, save_measure


class TestMeasureStore(unittest.TestCase):

    def setUp(self):
        self.tmp_dir = tempfile.TemporaryDirectory()
        self.atoms = CircleMeasure.atomic([(0.0, 0.25), (np.pi, 0.5), (-1.25, 0.25)])
        self.density = CircleMeasure.density([PowerLawSegment(c=0.3, alpha=0.7, lo=-1.0, hi=2.0)])
        self.mixture = CircleMeasure.mixture([self.atoms, self.density])

    def tearDown(self):
        self.tmp_dir.cleanup()

    def test_document_schema(self):
        doc = measure_to_dict(self.mixture)
        self.assertEqual(doc["kind"], "mixture")
        self.assertEqual([p["kind"] for p in doc["parts"]], ["atomic", "density"])
        self.assertEqual(doc["parts"][0]["atoms"][1], [float(np.pi), 0.5])
        self.assertEqual(doc["parts"][1]["segments"][0], {"c": 0.3, "alpha": 0.7, "from": -1.0, "to": 2.0})

    def test_file_preserves_functionals(self):
        path = os.path.join(self.tmp_dir.name, "nested", "mu.json")
        save_measure(self.mixture, path)
        with open(path, "r", encoding="utf-8") as f:
            self.assertEqual(json.load(f)["kind"], "mixture")
        loaded = load_measure(path)
        self.assertEqual(loaded.kind, "mixture")
        for eps in (0.1, 1.25, np.pi):
            self.assertEqual(arc_mass(loaded, eps), arc_mass(self.mixture, eps))
        self.assertAlmostEqual(fejer_functional(loaded, 16), fejer_functional(self.mixture, 16), places=14)

    def test_unknown_kind(self):
        with self.assertRaises(UsageError):
            measure_from_dict({"kind": "singular"})

    def test_empty_atomic(self):
        mu = measure_from_dict({"kind": "atomic", "atoms": []})
        self.assertEqual(mu.total_mass, 0.0)


if __name__ == "__main__":
    unittest.main()
