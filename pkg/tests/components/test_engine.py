import os
import tempfile
import unittest
from jinja2 import UndefinedError
from unipade import DefaultEngine
from unipade.base import BaseEngine


class TestEngine(unittest.TestCase):
    def setUp(self):
        self.engine = DefaultEngine()

    def test_render_custom_template(self):
        with tempfile.TemporaryDirectory() as directory:
            with open(os.path.join(directory, "hello.j2"), "w") as handle:
                handle.write("Hello {{ name }}!")
            engine = DefaultEngine(templates_dir=directory)
            self.assertEqual(engine.render("hello.j2", {"name": "unipade"}), "Hello unipade!")

    def test_render_build_report(self):
        transcript = {
            "mode": "holomorphic",
            "precision_bits": 256,
            "order": 9,
            "recorded_indices": [4, 7],
            "steps": [
                {"n": 1, "system": 1, "k": 4, "p": 4, "t": 3, "fit_degree": 2, "error": "0.1", "budget": "1.0"},
                {"n": 2, "system": 1, "k": 7, "p": 7, "t": 3, "fit_degree": 3, "error": "0.01", "budget": "0.25"},
            ],
        }
        checks = [
            {"pade_equals_partial_sum": True},
            {"pade_equals_partial_sum": True},
            {"pade_equals_partial_sum": False},
        ]
        rendered = self.engine.render(
            "build.md.j2", {"prefix": "run", "transcript": transcript, "checks": checks}
        )
        self.assertIn("# Universal series build: run", rendered)
        self.assertIn("- recorded indices: 4, 7", rendered)
        self.assertIn("| 2 | 1 | 7 | 7 | 3 | 3 | 0.01 | 0.25 |", rendered)
        self.assertIn("2 of 3 approximants equal the partial sum.", rendered)

    def test_render_verify_report_not_found(self):
        verdict = {"metric": "euclidean", "threshold": 0.125, "searched": 9, "found": False, "margins": []}
        rendered = self.engine.render("verify.md.j2", {"prefix": "run", "verdict": verdict})
        self.assertIn("No index in the searched prefix meets the threshold.", rendered)

    def test_report_context(self):
        context = BaseEngine.report_context("run", "verdict", {"found": True}, {"checks": []})
        self.assertEqual(context, {"prefix": "run", "verdict": {"found": True}, "checks": []})
        self.assertEqual(BaseEngine.report_context("run", "span", {}), {"prefix": "run", "span": {}})

    def test_render_span_report(self):
        span = {
            "depth": 2,
            "passed": True,
            "nested": True,
            "non_normal_steps": [],
            "reserved_indices": [[5, 9], []],
            "levels": [{"recorded_indices": [2, 5, 7, 9]}, {"recorded_indices": [5, 9]}],
            "checks": [],
        }
        rendered = self.engine.render("span.md.j2", {"prefix": "run", "span": span})
        self.assertIn("- level 1: recorded 2, 5, 7, 9; reserved 5, 9", rendered)
        self.assertIn("- level 2: recorded 5, 9; reserved none", rendered)

    # Edge case: StrictUndefined surfaces missing context keys
    def test_missing_context_raises(self):
        with self.assertRaises(UndefinedError):
            self.engine.render("verify.md.j2", {"prefix": "run"})


if __name__ == "__main__":
    unittest.main()
