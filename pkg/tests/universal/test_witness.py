import unittest
from unittest.mock import Mock
import numpy as np
from unipade import Polynomial, QSideTable, QTable, RationalFunction, WitnessGenerator
from unipade.core import Disk, InvalidPerturbation
from unipade.universal.witness import TYPE1, TYPE1_QSIDE, TYPE2, MembershipCheck, WitnessReport

SEED = 31
INSTANCES = 20
K = Disk(2.5, 0.25)
L = Disk(0, 0.5)


def zero(z):
    return 0


def disk_point(rng, radius=1.0):
    return complex(radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


class TestType1Witness(unittest.TestCase):
    def setUp(self):
        self.generator = WitnessGenerator(precision=256, logger=Mock())
        self.table = QTable.linear(80, [1, 2])

    def test_constant_target(self):
        report = self.generator.type1_witness(Polynomial.zero(), K, Polynomial((1,)), L, self.table, 10, 0.05)
        self.assertEqual(report.kind, TYPE1)
        self.assertTrue(report.passed)
        self.assertLess(report.margins["approximation_K"], 0.1)
        self.assertEqual(report.witness.degree, report.ps[0])

    def test_random_instances(self):
        rng = np.random.default_rng(SEED)
        for _ in range(INSTANCES):
            h = Polynomial((disk_point(rng), disk_point(rng, 0.3)))
            g = Polynomial((disk_point(rng, 0.5),))
            report = self.generator.type1_witness(g, K, h, L, self.table, 10, 0.05)
            self.assertTrue(report.passed, report.margins)
            self.assertEqual(report.witness.degree, self.table.p_at(report.k))
            for value in report.margins.values():
                self.assertLess(value, report.threshold)

    # Edge case: epsilon must lie strictly below 1/s
    def test_epsilon_range(self):
        with self.assertRaises(ValueError):
            self.generator.type1_witness(Polynomial.zero(), K, Polynomial((1,)), L, self.table, 10, 0.1)
        with self.assertRaises(ValueError):
            self.generator.type1_witness(Polynomial.zero(), K, Polynomial((1,)), L, self.table, 10, 0)

    def test_zero_perturbation(self):
        with self.assertRaises(InvalidPerturbation):
            self.generator.type1_witness(
                Polynomial.zero(), K, Polynomial((1,)), L, self.table, 10, 0.05, perturbation=0
            )


class TestType1QSideWitness(unittest.TestCase):
    def setUp(self):
        self.generator = WitnessGenerator(precision=256, logger=Mock())
        self.table = QSideTable.constant_q(80, 3)

    def test_constant_target(self):
        report = self.generator.type1_witness_qside(
            Polynomial.zero(), K, Polynomial((1,)), L, self.table, 10, 0.05
        )
        self.assertEqual(report.kind, TYPE1_QSIDE)
        self.assertEqual(report.qs, (3,))
        self.assertTrue(report.passed)
        self.assertGreater(report.pole_margin, 0)

    def test_random_instances(self):
        rng = np.random.default_rng(SEED + 1)
        for _ in range(INSTANCES):
            h = Polynomial((disk_point(rng), disk_point(rng, 0.3)))
            g = Polynomial((disk_point(rng, 0.5),))
            report = self.generator.type1_witness_qside(g, K, h, L, self.table, 10, 0.05)
            self.assertTrue(report.passed, report.margins)
            self.assertGreater(report.pole_margin, 0)
            self.assertEqual(report.ps, self.table.ps_at(report.k))
            self.assertEqual(report.witness.denominator.degree, 3)


class TestType2Witness(unittest.TestCase):
    def setUp(self):
        self.generator = WitnessGenerator(precision=256, logger=Mock())
        self.table = QTable.growing(80, (1, 2))

    def test_pole_inside_K(self):
        h = RationalFunction(Polynomial((1,), precision=256), Polynomial((-2.5, 1), precision=256))
        report = self.generator.type2_witness(zero, h, K, L, self.table, 10, 0.05)
        self.assertEqual(report.kind, TYPE2)
        self.assertTrue(report.passed, report.margins)
        self.assertLess(report.margins["chordal_K"], 0.05)
        self.assertEqual(report.witness.numerator.degree, report.ps[0])
        self.assertEqual(report.t, report.ps[0] - report.witness.denominator.degree)

    def test_random_instances(self):
        rng = np.random.default_rng(SEED + 2)
        for _ in range(INSTANCES):
            pole = 2.5 + disk_point(rng, 0.1)
            scale = 0.5 + 0.5 * rng.uniform()
            h = RationalFunction(
                Polynomial((scale,), precision=256), Polynomial((-pole, 1), precision=256)
            )
            report = self.generator.type2_witness(zero, h, K, L, self.table, 10, 0.05)
            self.assertTrue(report.passed, report.margins)
            self.assertEqual(report.witness.numerator.degree, self.table.p_at(report.k))
            self.assertGreater(self.table.min_q(report.k), report.witness.denominator.degree)


class TestWitnessReport(unittest.TestCase):
    def report(self, pole_margin):
        return WitnessReport(
            kind=TYPE1_QSIDE,
            witness=None,
            d=0,
            k=1,
            ps=(1,),
            qs=(2,),
            t=0,
            threshold=0.1,
            epsilon=0.05,
            fit_degree=0,
            margins={"approximation_K": 0.01, "approximation_L": 0.02},
            memberships=(MembershipCheck(0, 1, 2, "normal", True, True),),
            pole_margin=pole_margin,
        )

    def test_passes_with_roots_outside_the_samples(self):
        self.assertTrue(self.report(0.3).passed)
        self.assertTrue(self.report(None).passed)

    # Edge case: a denominator root inside the samples fails the witness
    def test_nonpositive_pole_margin_fails(self):
        self.assertFalse(self.report(-1).passed)
        self.assertFalse(self.report(0).passed)

    def test_margin_without_value_fails(self):
        report = self.report(0.3)
        report.margins["pade_K"] = None
        self.assertFalse(report.passed)


if __name__ == "__main__":
    unittest.main()
