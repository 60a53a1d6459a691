import os
import tempfile
import unittest
from unittest.mock import patch
from unipade.config import (
    OUTPUT_DIR_ENV,
    ExperimentConfigBuilder,
    config_from_dict,
    load_config,
    parse_complex,
    parse_domain,
    parse_polynomial,
    parse_qside_table,
    parse_rational,
    parse_shape,
    parse_table,
    parse_target,
)
from unipade.core import ConfigError, Disk, DiskDomain, RectangleDomain
from unipade.core.geometry import Intersection, Segment, Union
from unipade.core.series import RationalFunction


def document(**overrides):
    doc = {
        "domain": {"type": "disk"},
        "center": [0, 0],
        "table": {"generator": "linear", "length": 200, "q": [1, 2]},
        "enumeration": {
            "compacts": [{"type": "disk", "center": [2.5, 0], "radius": 0.25}],
            "targets": ["poly:1", "poly:0,1"],
        },
        "steps": 2,
        "precision_bits": 256,
        "tolerances": {"mesh": 0.05, "fit_budget": 30},
    }
    doc.update(overrides)
    return doc


class TestConfigFromDict(unittest.TestCase):
    def test_full_document(self):
        config = config_from_dict(document())
        self.assertEqual(config.domain, DiskDomain())
        self.assertEqual(config.center, 0j)
        self.assertEqual(config.table.p_at(5), 5)
        self.assertEqual(config.steps, 2)
        self.assertEqual(config.precision_bits, 256)
        self.assertEqual(config.tolerances.mesh, 0.05)
        self.assertEqual(config.tolerances.fit_budget, 30)
        self.assertEqual(config.tolerances.exhaustion_offset, 1)
        self.assertEqual(config.enumeration.pair_count, 2)
        self.assertIsNone(config.witness)
        self.assertIsNone(config.span)
        self.assertEqual(config.output.prefix, "unipade")

    def test_default_enumeration_uses_outer_family(self):
        doc = document()
        del doc["enumeration"]
        config = config_from_dict(doc)
        self.assertEqual(config.enumeration.compacts, (Disk(2.5, 0.25),))
        self.assertIsNone(config.enumeration.pair_count)

    def test_unknown_keys(self):
        with self.assertRaises(ConfigError):
            config_from_dict(document(seed=1))

    def test_not_an_object(self):
        with self.assertRaises(ConfigError):
            config_from_dict([1, 2])

    def test_missing_domain_and_table(self):
        doc = document()
        del doc["domain"]
        with self.assertRaises(ConfigError):
            config_from_dict(doc)
        doc = document()
        del doc["table"]
        with self.assertRaises(ConfigError):
            config_from_dict(doc)

    # Edge case: the expansion center must lie in the domain
    def test_center_outside_domain(self):
        with self.assertRaises(ConfigError):
            config_from_dict(document(center=[2, 0]))

    def test_formal_mode_allows_any_center(self):
        config = config_from_dict(document(center=[2, 0], mode="formal"))
        self.assertEqual(config.center, 2 + 0j)

    def test_witness_section(self):
        witness = {
            "kind": "type1",
            "K": {"type": "disk", "center": [2.5, 0], "radius": 0.25},
            "L": {"type": "disk", "center": [0, 0], "radius": 0.5},
            "h": "poly:1,0.5",
            "table": {"generator": "linear", "length": 80, "q": [1, 2]},
            "s": 10,
            "epsilon": 0.05,
        }
        config = config_from_dict(document(witness=witness))
        self.assertEqual(config.witness.kind, "type1")
        self.assertEqual(config.witness.K, Disk(2.5, 0.25))
        self.assertTrue(config.witness.g.is_zero)
        self.assertEqual(config.witness.h.degree, 1)

    def test_witness_epsilon_range(self):
        witness = {
            "kind": "type1",
            "K": {"type": "disk", "center": [2.5, 0], "radius": 0.25},
            "L": {"type": "disk", "center": [0, 0], "radius": 0.5},
            "h": "poly:1",
            "table": {"generator": "linear", "length": 80, "q": [1]},
            "s": 10,
            "epsilon": 0.1,
        }
        with self.assertRaises(ConfigError):
            config_from_dict(document(witness=witness))

    def test_qside_witness_table(self):
        witness = {
            "kind": "type1_qside",
            "K": {"type": "disk", "center": [2.5, 0], "radius": 0.25},
            "L": {"type": "disk", "center": [0, 0], "radius": 0.5},
            "h": "poly:1",
            "table": {"generator": "constant_q", "length": 80, "q": 3},
            "s": 10,
            "epsilon": 0.05,
        }
        config = config_from_dict(document(witness=witness))
        self.assertEqual(config.witness.table.q_at(4), 3)

    def test_span_section(self):
        config = config_from_dict(document(span={"coefficients": [1, [0.5, 0]]}))
        self.assertEqual(config.span.coefficients, (1 + 0j, 0.5 + 0j))
        self.assertEqual(config.span.systems, (config.table,))
        with self.assertRaises(ConfigError):
            config_from_dict(document(span={"coefficients": [1, 0]}))
        with self.assertRaises(ConfigError):
            config_from_dict(document(span={"coefficients": [1], "depth_cap": 0}))

    def test_output_directory_override(self):
        with patch.dict(os.environ, {OUTPUT_DIR_ENV: "/tmp/runs"}):
            config = config_from_dict(document(output={"directory": "results", "prefix": "desk"}))
        self.assertEqual(config.output.directory, "/tmp/runs")
        self.assertEqual(config.output.prefix, "desk")


class TestBuilderValidation(unittest.TestCase):
    def setUp(self):
        self.builder = ExperimentConfigBuilder()

    def test_steps(self):
        for steps in (0, -1, 1.5, True):
            with self.assertRaises(ConfigError):
                self.builder.with_steps(steps)
        self.assertIs(self.builder.with_steps(3), self.builder)

    def test_mode(self):
        with self.assertRaises(ConfigError):
            self.builder.with_mode("entire")

    def test_precision(self):
        with self.assertRaises(ConfigError):
            self.builder.with_precision(32)
        with self.assertRaises(ConfigError):
            self.builder.with_precision(128.0)
        self.builder.with_precision(53)
        self.assertEqual(self.builder.precision_bits, 53)

    def test_tolerances(self):
        with self.assertRaises(ConfigError):
            self.builder.with_tolerances({"epsilon": 1})
        with self.assertRaises(ConfigError):
            self.builder.with_tolerances({"mesh": 0})
        with self.assertRaises(ConfigError):
            self.builder.with_tolerances({"fit_budget": -1})
        with self.assertRaises(ConfigError):
            self.builder.with_tolerances({"tol_D": 0})
        self.builder.with_tolerances({"mesh": 0.1})
        self.builder.with_tolerances({"jacobi_q_cap": 3})
        self.assertEqual((self.builder.tolerances.mesh, self.builder.tolerances.jacobi_q_cap), (0.1, 3))

    def test_witness_kind(self):
        with self.assertRaises(ConfigError):
            self.builder.with_witness({"kind": "type3"})

    def test_span_needs_coefficients(self):
        with self.assertRaises(ConfigError):
            self.builder.with_span({"systems": []})

    def test_enumeration(self):
        with self.assertRaises(ConfigError):
            self.builder.with_enumeration({"targets": ["poly:1"]})
        with self.assertRaises(ConfigError):
            self.builder.with_enumeration({"outer": 1, "policy": "twice"})

    def test_outer_count(self):
        self.builder.with_domain({"type": "disk"}).with_table({"p": [1], "q": [[1]]})
        self.builder.with_enumeration({"outer": 0})
        with self.assertRaises(ConfigError):
            self.builder.build()

    def test_output(self):
        with self.assertRaises(ConfigError):
            self.builder.with_output({"prefix": ""})
        with self.assertRaises(ConfigError):
            self.builder.with_output({"directory": 3})

    def test_table_type(self):
        with self.assertRaises(ConfigError):
            self.builder.with_table("linear")


class TestLoadConfig(unittest.TestCase):
    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config("/nonexistent/unipade.json")

    def test_invalid_json(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "config.json")
            with open(path, "w") as handle:
                handle.write("{domain: disk")
            with self.assertRaises(ConfigError):
                load_config(path)

    def test_round_trip_from_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "config.json")
            with open(path, "w") as handle:
                handle.write(
                    '{"domain": {"type": "rectangle", "lower_left": [-1, -1], "upper_right": [1, 1]},'
                    ' "table": {"generator": "linear", "length": 10, "q": [1]}}'
                )
            config = load_config(path)
        self.assertEqual(config.domain, RectangleDomain(-1 - 1j, 1 + 1j))
        self.assertEqual(config.steps, 1)


class TestLiterals(unittest.TestCase):
    def test_complex_forms(self):
        self.assertEqual(parse_complex([1, 2]), 1 + 2j)
        self.assertEqual(parse_complex(3), 3 + 0j)
        self.assertEqual(parse_complex("1+2i"), 1 + 2j)
        self.assertEqual(parse_complex("-0.5j"), -0.5j)
        for bad in (True, [1], "one", None, [1, "x"]):
            with self.assertRaises(ConfigError):
                parse_complex(bad)

    def test_polynomial(self):
        p = parse_polynomial("poly:1, 0, 2+1i")
        self.assertEqual(p.degree, 2)
        self.assertEqual(complex(p.coefficient(2)), 2 + 1j)
        with self.assertRaises(ConfigError):
            parse_polynomial("1,2")
        with self.assertRaises(ConfigError):
            parse_polynomial("poly:")

    def test_rational(self):
        r = parse_rational("rational:1;-2,1")
        self.assertIsInstance(r, RationalFunction)
        self.assertEqual(r.denominator.degree, 1)
        self.assertIsInstance(parse_target("rational:1;1"), RationalFunction)
        with self.assertRaises(ConfigError):
            parse_rational("rational:1,2")
        with self.assertRaises(ConfigError):
            parse_rational("rational:1;0")

    def test_shapes(self):
        self.assertEqual(parse_shape({"type": "disk", "center": [0, 1], "radius": 2}), Disk(1j, 2.0))
        self.assertEqual(parse_shape({"type": "segment", "start": 0, "end": [1, 1]}), Segment(0, 1 + 1j))
        intersection = parse_shape({
            "type": "intersection",
            "pieces": [
                {"type": "disk", "center": 0, "radius": 1},
                {"type": "rectangle", "lower_left": [0, 0], "upper_right": [1, 1]},
            ],
        })
        self.assertIsInstance(intersection, Intersection)
        union = parse_shape({
            "type": "union",
            "pieces": [{"type": "disk", "center": 3, "radius": 1}, {"type": "disk", "center": -3, "radius": 1}],
        })
        self.assertIsInstance(union, Union)
        self.assertEqual(len(union.pieces), 2)

    def test_invalid_shapes(self):
        with self.assertRaises(ConfigError):
            parse_shape({"type": "ellipse"})
        with self.assertRaises(ConfigError):
            parse_shape({"type": "disk", "center": 0})
        with self.assertRaises(ConfigError):
            parse_shape({"type": "disk", "center": 0, "radius": -1})
        with self.assertRaises(ConfigError):
            parse_shape({"type": "annulus", "center": 0, "inner": 2, "outer": 1})

    def test_domains(self):
        self.assertEqual(parse_domain({"type": "disk", "radius": 2}), DiskDomain(0, 2.0))
        half = parse_domain({"type": "half_disk"})
        self.assertTrue(half.contains(0.5j))
        ring = parse_domain({"type": "annulus_complement"})
        self.assertTrue(ring.contains(0))
        with self.assertRaises(ConfigError):
            parse_domain({"type": "strip"})
        with self.assertRaises(ConfigError):
            parse_domain({"type": "disk", "radius": 0})

    def test_tables(self):
        linear = parse_table({"generator": "linear", "length": 5, "q": [1, 2], "allowed": [2, 4]})
        self.assertEqual(linear.allowed, frozenset({2, 4}))
        growing = parse_table({"generator": "growing", "length": 6, "q_offsets": [0, 1], "rate": 2})
        self.assertEqual(growing.qs_at(6), (3, 4))
        explicit = parse_table({"p": [1, 3], "q": [[1], [1, 2]]})
        self.assertEqual(explicit.p_at(2), 3)
        with self.assertRaises(ConfigError):
            parse_table({"generator": "random"})
        with self.assertRaises(ConfigError):
            parse_table({"generator": "linear", "length": 5, "q": [1.5]})
        with self.assertRaises(ConfigError):
            parse_table({"p": [1, 2], "q": [[1]]})

    def test_qside_tables(self):
        constant = parse_qside_table({"generator": "constant_q", "length": 5, "q": 3})
        self.assertEqual(constant.ps_at(2), (2, 3))
        explicit = parse_qside_table({"q": [2, 2], "p": [[1], [2]]})
        self.assertEqual(explicit.q_at(2), 2)
        with self.assertRaises(ConfigError):
            parse_qside_table({"q": [2]})


if __name__ == "__main__":
    unittest.main()
