import unittest
from unittest.mock import Mock
import numpy as np
from unipade import (
    DefaultOrchestrator,
    PadeEngine,
    PadeIndex,
    Polynomial,
    PowerSeries,
    RationalFunction,
    NotInD,
    exp_series,
    geometric_series,
)
from unipade.core import CapExceeded, CenterOnPole, TruncationExceeded
from unipade.core.series import polynomial_from_roots

SEED = 20240611


def unit_disk(rng, size):
    radius = np.sqrt(rng.uniform(0.0, 1.0, size))
    angle = rng.uniform(0.0, 2 * np.pi, size)
    return [complex(z) for z in radius * np.exp(1j * angle)]


def random_corpus(count=200, length=13, seed=SEED):
    rng = np.random.default_rng(seed)
    return [PowerSeries(tuple(unit_disk(rng, length))) for _ in range(count)]


class TestPadeIndex(unittest.TestCase):
    def test_negative_index(self):
        with self.assertRaises(ValueError):
            PadeIndex(-1, 0)

    def test_span(self):
        self.assertEqual(PadeIndex(3, 2).span, 5)


class TestPadeEngine(unittest.TestCase):
    def setUp(self):
        self.engine = PadeEngine(53)

    # Named value: exp [1/1] = (1 + z/2) / (1 - z/2)
    def test_exp_one_one(self):
        result = self.engine.compute_pade(exp_series(4), PadeIndex(1, 1))
        num = [complex(c) for c in result.value.numerator.coeffs]
        den = [complex(c) for c in result.value.denominator.coeffs]
        for got, expected in zip(num + den, [1, 0.5, 1, -0.5]):
            self.assertLess(abs(got - expected), 1e-12)

    def test_hankel_index_convention(self):
        f = PowerSeries(tuple(range(1, 9)))
        matrix = self.engine.hankel_matrix(f, PadeIndex(3, 3))
        # top-left a_1, bottom-right a_5
        self.assertEqual(complex(matrix[0, 0]), 2)
        self.assertEqual(complex(matrix[2, 2]), 6)
        self.assertEqual(complex(matrix[0, 2]), complex(matrix[2, 0]))
        self.assertEqual(complex(self.engine.hankel_determinant(f, PadeIndex(4, 1))), 5)

    def test_hankel_pads_negative_indices(self):
        matrix = self.engine.hankel_matrix(PowerSeries((1, 2, 3, 4, 5)), PadeIndex(0, 2))
        self.assertEqual(complex(matrix[0, 0]), 0)
        self.assertEqual(complex(matrix[1, 1]), 2)

    def test_q_zero_is_partial_sum(self):
        f = PowerSeries((1, 2, 3, 4, 5, 6))
        result = self.engine.compute_pade(f, PadeIndex(5, 0))
        self.assertEqual([complex(c) for c in result.value.numerator.coeffs], [1, 2, 3, 4, 5, 6])
        self.assertEqual(complex(self.engine.hankel_determinant(f, PadeIndex(5, 0))), 1)

    def test_geometric_not_in_D(self):
        with self.assertRaises(NotInD):
            self.engine.compute_pade(geometric_series(6), PadeIndex(2, 2))

    def test_needs_p_plus_q_coefficients(self):
        with self.assertRaises(TruncationExceeded):
            self.engine.compute_pade(PowerSeries((1, 2, 3)), PadeIndex(2, 1))

    # Edge case: Row scaling leaves the membership verdict unchanged
    def test_membership_scale_invariant(self):
        f = random_corpus(1)[0]
        idx = PadeIndex(3, 2)
        scaled = f.scaled(1e-20)
        self.assertEqual(self.engine.is_in_D(f, idx).member, self.engine.is_in_D(scaled, idx).member)

    def test_normality_table_geometric(self):
        entries = self.engine.normality_table(geometric_series(7), 4, 3)
        for entry in entries:
            if entry.p >= 1 and entry.q >= 1:
                self.assertEqual(entry.member, entry.q == 1, (entry.p, entry.q))

    def test_normality_table_with_orchestrator(self):
        orchestrator = DefaultOrchestrator(max_workers=2)
        try:
            engine = PadeEngine(53, orchestrator=orchestrator)
            pooled = engine.normality_table(geometric_series(7), 4, 3)
        finally:
            orchestrator.shutdown()
        serial = self.engine.normality_table(geometric_series(7), 4, 3)
        self.assertEqual([(e.p, e.q, e.member) for e in pooled], [(e.p, e.q, e.member) for e in serial])

    # Edge case: A center on a pole is recorded, not raised
    def test_pade_over_centers_records_failures(self):
        logger = Mock()
        engine = PadeEngine(53, logger=logger)
        r = RationalFunction(Polynomial((1,)), Polynomial((1, -1)))
        outcomes = engine.pade_over_centers(r, [0, 1, 0.5], PadeIndex(0, 1))
        self.assertEqual([o.ok for o in outcomes], [True, False, True])
        self.assertEqual(outcomes[1].error, "CenterOnPole")
        logger.error.assert_called_once()

    def test_jacobi_cap(self):
        engine = PadeEngine(53, jacobi_q_cap=2)
        with self.assertRaises(CapExceeded):
            engine.jacobi_cross_check(exp_series(8), PadeIndex(2, 3))

    def test_classify_center_on_pole(self):
        r = RationalFunction(Polynomial((1,)), Polynomial((1, -1)))
        with self.assertRaises(CenterOnPole):
            self.engine.classify_rational(r, 1, 0, 1)


class TestDefiningProperty(unittest.TestCase):
    """Random 13-coefficient series, all (p, q) with p, q <= 6 inside D."""

    @classmethod
    def setUpClass(cls):
        cls.corpus = random_corpus()

    def _check(self, bits, bound):
        engine = PadeEngine(bits)
        checked = 0
        for f in self.corpus:
            f = PowerSeries(f.coeffs, f.center, bits)
            for p in range(7):
                for q in range(7):
                    idx = PadeIndex(p, q)
                    if not engine.is_in_D(f, idx).member:
                        continue
                    result = engine.compute_pade(f, idx)
                    self.assertLess(result.residual, bound, (p, q))
                    checked += 1
        self.assertGreater(checked, 0)

    def test_residual_53_bits(self):
        self._check(53, 1e-8)

    def test_residual_256_bits(self):
        self._check(256, 1e-30)

    def test_jacobi_cross_check(self):
        engine = PadeEngine(53)
        for f in self.corpus:
            for p in range(7):
                for q in range(5):
                    idx = PadeIndex(p, q)
                    if not engine.is_in_D(f, idx).member:
                        continue
                    report = engine.jacobi_cross_check(f, idx)
                    self.assertLess(report.relative_deviation, 1e-6, (p, q))


class TestRationalClassification(unittest.TestCase):
    """Coprime rationals of degree <= 4: members, identities and the vanishing corner."""

    def setUp(self):
        self.engine = PadeEngine(256)
        rng = np.random.default_rng(SEED)
        self.cases = []
        for _ in range(50):
            p0, q0 = int(rng.integers(0, 5)), int(rng.integers(0, 5))
            zeros = unit_disk(rng, p0)
            poles = [
                complex(r * np.exp(1j * a))
                for r, a in zip(rng.uniform(1.5, 3.0, q0), rng.uniform(0, 2 * np.pi, q0))
            ]
            leading = unit_disk(rng, 1)[0] + 2
            r = RationalFunction(
                polynomial_from_roots(zeros, leading, precision=256),
                polynomial_from_roots(poles, precision=256),
                coprime=True,
            )
            center = unit_disk(rng, 1)[0] * 0.5
            self.cases.append((r, center, p0, q0))

    def test_member_clauses(self):
        for r, center, p0, q0 in self.cases:
            for p, q, regime in (
                (p0, q0, "exact"),
                (p0 + 1, q0, "numerator_side"),
                (p0 + 2, q0, "numerator_side"),
                (p0, q0 + 1, "denominator_side"),
            ):
                verdict = self.engine.classify_rational(r, center, p, q)
                self.assertEqual(verdict.regime, regime)
                self.assertTrue(verdict.member)
                self.assertTrue(verdict.membership.member, (p0, q0, p, q))
                self.assertTrue(verdict.identity_holds, (p0, q0, p, q))
                self.assertLess(verdict.identity_residual, 1e-8)

    def test_determinant_vanishes_past_both_degrees(self):
        below = 0
        for r, center, p0, q0 in self.cases:
            verdict = self.engine.classify_rational(r, center, p0 + 1, q0 + 1)
            self.assertEqual(verdict.regime, "non_member")
            self.assertFalse(verdict.member)
            if not verdict.membership.member:
                below += 1
        self.assertEqual(below, len(self.cases))


class TestZeroBlock(unittest.TestCase):
    """a_p = 1 followed by q zeros makes |D_{p,q}| = 1 and [f; p/q] = S_p."""

    def setUp(self):
        self.engine = PadeEngine(53)
        self.rng = np.random.default_rng(SEED)

    def _series(self, p, q, pivot):
        coeffs = unit_disk(self.rng, p) + [pivot] + [0] * q
        return PowerSeries(tuple(coeffs))

    def test_pivot_one(self):
        for p in range(9):
            for q in range(5):
                f = self._series(p, q, 1)
                idx = PadeIndex(p, q)
                self.assertLess(abs(abs(self.engine.hankel_determinant(f, idx)) - 1), 1e-10)
                value = self.engine.compute_pade(f, idx).value
                partial = f.partial_sum(p)
                for got, expected in zip(value.numerator.padded(p + 1), partial.coeffs):
                    self.assertLess(abs(got - expected), 1e-10)
                for i, b in enumerate(value.denominator.coeffs):
                    self.assertLess(abs(b - (1 if i == 0 else 0)), 1e-10)

    def test_pivot_zero(self):
        for p in range(9):
            for q in range(1, 5):
                f = self._series(p, q, 0)
                self.assertFalse(self.engine.is_in_D(f, PadeIndex(p, q)).member, (p, q))


if __name__ == "__main__":
    unittest.main()
