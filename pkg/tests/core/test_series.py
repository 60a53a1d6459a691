import unittest
import numpy as np
from numpy.polynomial import polynomial as npp
from unipade import Polynomial, PowerSeries, RationalFunction, exp_series, geometric_series
from unipade.core import (
    CenterOnPole,
    NotCoprime,
    TruncationExceeded,
    ZeroDenominator,
    INFINITY,
    is_infinite,
    evaluate,
    recenter,
    resultant,
)
from unipade.core.series import polynomial_from_roots


class TestPolynomial(unittest.TestCase):
    def test_degree_ignores_trailing_zeros(self):
        self.assertEqual(Polynomial((1, 2, 0, 0)).degree, 1)

    def test_zero_polynomial_degree(self):
        self.assertEqual(Polynomial.zero().degree, -1)
        self.assertTrue(Polynomial.zero().is_zero)

    def test_evaluation_about_center(self):
        # 1 + 2 (z - 1)
        p = Polynomial((1, 2), center=1)
        self.assertAlmostEqual(complex(p(3)), 5)

    def test_evaluate_dispatches(self):
        self.assertAlmostEqual(complex(evaluate(PowerSeries((1, 1, 1)), 0.5)), 1.75)
        r = RationalFunction(Polynomial((1,)), Polynomial((1, -1)))
        self.assertAlmostEqual(complex(evaluate(r, 0.5)), 2)

    def test_infinity(self):
        self.assertTrue(is_infinite(Polynomial((0, 1))(INFINITY)))
        self.assertAlmostEqual(complex(Polynomial((7,))(INFINITY)), 7)

    def test_arithmetic(self):
        a = Polynomial((1, 1))
        b = Polynomial((1, -1))
        self.assertEqual([complex(c) for c in (a * b).coeffs], [1, 0, -1])
        self.assertEqual([complex(c) for c in (a - b).coeffs], [0, 2])

    def test_recenter_is_exact(self):
        p = Polynomial((1, -3, 0, 2))
        q = p.recenter(1.5)
        for z in (0, 1j, 2 - 1j):
            self.assertAlmostEqual(complex(p(z)), complex(q(z)), places=12)

    def test_monomial_and_times_power(self):
        m = Polynomial.monomial(3, 2)
        self.assertEqual(m.degree, 3)
        self.assertEqual(Polynomial((1,)).times_power(2).degree, 2)
        with self.assertRaises(ValueError):
            Polynomial.monomial(-1)

    def test_derivative(self):
        p = Polynomial((1, 1, 1, 1))
        self.assertEqual([complex(c) for c in p.derivative(2).coeffs], [2, 6])
        self.assertTrue(p.derivative(5).is_zero)

    def test_antiderivative_inverts_derivative(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            degree = int(rng.integers(0, 9))
            coeffs = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
            center = complex(rng.normal(), rng.normal())
            p = Polynomial(tuple(complex(c) for c in coeffs), center=center)
            a = p.antiderivative()
            self.assertEqual(a.degree, p.degree + 1)
            self.assertEqual(complex(a(center)), 0)
            for got, want in zip(a.derivative().coeffs, p.coeffs):
                self.assertLess(abs(complex(got) - complex(want)), 1e-12)
            z = complex(rng.normal(), rng.normal())
            expected = npp.polyval(z - center, npp.polyint(coeffs))
            self.assertLess(abs(complex(a(z)) - expected), 1e-9 * max(1.0, abs(expected)))

    def test_deflate(self):
        p = polynomial_from_roots([1, 2])
        q = p.deflate(1)
        self.assertEqual(q.degree, 1)
        self.assertAlmostEqual(complex(q(2)), 0, places=12)

    def test_non_finite_coefficients(self):
        with self.assertRaises(ValueError):
            Polynomial((float("nan"),))


class TestPowerSeries(unittest.TestCase):
    def setUp(self):
        self.f = PowerSeries((1, 2, 3, 4))

    def test_order(self):
        self.assertEqual(self.f.order, 3)

    def test_partial_sum(self):
        self.assertEqual([complex(c) for c in self.f.partial_sum(1).coeffs], [1, 2])
        self.assertTrue(self.f.partial_sum(-1).is_zero)

    # Edge case: Indices past the truncation order are unknown, not zero
    def test_truncation_exceeded(self):
        with self.assertRaises(TruncationExceeded):
            self.f.coefficient(4)
        with self.assertRaises(TruncationExceeded):
            self.f.partial_sum(5)

    def test_empty_series(self):
        with self.assertRaises(ValueError):
            PowerSeries(())

    def test_shifted(self):
        g = self.f.shifted(Polynomial((1, 1)))
        self.assertEqual([complex(c) for c in g.coeffs], [2, 3, 3, 4])

    def test_recenter_truncated(self):
        g = recenter(self.f, 0.5, 3)
        self.assertAlmostEqual(complex(g(0.5)), complex(self.f(0.5)), places=12)
        with self.assertRaises(TruncationExceeded):
            recenter(self.f, 0.5, 4)

    def test_named_series(self):
        e = exp_series(6)
        self.assertAlmostEqual(complex(e.coefficient(3)), 1 / 6, places=14)
        self.assertEqual(geometric_series(4).order, 4)
        self.assertAlmostEqual(complex(geometric_series(3, center=0.5).coefficient(2)), 8, places=12)
        with self.assertRaises(CenterOnPole):
            geometric_series(3, center=1)


class TestRationalFunction(unittest.TestCase):
    def test_zero_denominator(self):
        with self.assertRaises(ZeroDenominator):
            RationalFunction(Polynomial((1,)), Polynomial.zero())

    def test_not_coprime(self):
        # (z - 1)^2 / (z - 1)
        with self.assertRaises(NotCoprime):
            RationalFunction(polynomial_from_roots([1, 1]), polynomial_from_roots([1]), coprime=True)

    def test_pole_evaluates_to_infinity(self):
        r = RationalFunction(Polynomial((1,)), Polynomial((-1, 1)))
        self.assertTrue(is_infinite(r(1)))
        self.assertAlmostEqual(complex(r(INFINITY)), 0)

    def test_taylor_geometric(self):
        r = RationalFunction(Polynomial((1,)), Polynomial((1, -1)))
        series = r.taylor(0, 5)
        for c in series.coeffs:
            self.assertAlmostEqual(complex(c), 1, places=14)

    def test_taylor_at_pole(self):
        r = RationalFunction(Polynomial((1,)), Polynomial((1, -1)))
        with self.assertRaises(CenterOnPole):
            r.taylor(1, 3)

    def test_resultant_detects_common_root(self):
        a = polynomial_from_roots([1, 2])
        b = polynomial_from_roots([2, 3])
        self.assertLess(abs(resultant(a, b)), 1e-12)
        self.assertGreater(abs(resultant(a, polynomial_from_roots([3]))), 1e-3)

    def test_addition_with_polynomial(self):
        r = RationalFunction(Polynomial((1,)), Polynomial((1, -1)))
        s = r + Polynomial((0, 1))
        self.assertAlmostEqual(complex(s(0.5)), 2.5, places=12)


if __name__ == "__main__":
    unittest.main()
