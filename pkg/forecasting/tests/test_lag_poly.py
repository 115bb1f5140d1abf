import numpy as np
from django.test import SimpleTestCase

from ..lag_poly import LagPolynomial, expand_ar, expand_ma


class ExpandArTests(SimpleTestCase):

    def test_non_seasonal_passes_through(self):
        self.assertEqual(expand_ar([0.5], [], 4), [0.5])

    def test_interaction_lag_carries_minus_sign(self):
        # (1 - 0.5B)(1 - 0.4B^4) = 1 - 0.5B - 0.4B^4 + 0.2B^5
        expanded = expand_ar([0.5], [0.4], 4)
        self.assertEqual(len(expanded), 5)
        for got, expected in zip(expanded, [0.5, 0.0, 0.0, 0.4, -0.2]):
            self.assertAlmostEqual(got, expected, places=15)

    def test_pure_seasonal_ar(self):
        expanded = expand_ar([], [0.9], 12)
        self.assertEqual(expanded, [0.0] * 11 + [0.9])

    def test_no_negative_zeros(self):
        expanded = expand_ar([0.5], [0.4], 4)
        self.assertFalse(any(np.signbit(c) for c in expanded[1:3]))


class ExpandMaTests(SimpleTestCase):

    def test_interaction_lag_carries_plus_sign(self):
        expanded = expand_ma([0.3], [0.2], 12)
        self.assertEqual(len(expanded), 13)
        self.assertAlmostEqual(expanded[0], 0.3)
        self.assertAlmostEqual(expanded[11], 0.2)
        self.assertAlmostEqual(expanded[12], 0.06)
        self.assertTrue(all(c == 0.0 for c in expanded[1:11]))

    def test_white_noise(self):
        self.assertEqual(expand_ma([], [], 12), [])

    def test_non_seasonal_ma_unchanged(self):
        self.assertEqual(expand_ma([-0.0073], [], 12), [-0.0073])


class LagPolynomialTests(SimpleTestCase):

    def test_expansion_matches_product_of_factors(self):
        rng = np.random.default_rng(20240601)
        for _ in range(100):
            s = int(rng.integers(1, 13))
            for kind, expand in (('ar', expand_ar), ('ma', expand_ma)):
                ordinary = list(rng.uniform(-1, 1, size=rng.integers(0, 4)))
                seasonal = list(rng.uniform(-1, 1, size=rng.integers(0, 4)))
                expanded = LagPolynomial(tuple(expand(ordinary, seasonal, s)), kind)
                first = LagPolynomial(tuple(ordinary), kind)
                second = LagPolynomial.seasonal(seasonal, s, kind)
                for z in rng.uniform(-0.9, 0.9, size=20):
                    self.assertLess(abs(expanded.evaluate(z) - first.evaluate(z) * second.evaluate(z)), 1e-12)

    def test_canonical_trims_trailing_zeros(self):
        polynomial = LagPolynomial.ar([0.5, 0.0, 0.0])
        self.assertEqual(polynomial.canonical().coeffs, (0.5,))
        self.assertEqual(polynomial.order, 3)

    def test_coefficients_include_leading_one(self):
        np.testing.assert_array_equal(LagPolynomial.ar([0.5]).coefficients(), [1.0, -0.5])
        np.testing.assert_array_equal(LagPolynomial.ma([0.5]).coefficients(), [1.0, 0.5])

    def test_cannot_mix_kinds(self):
        with self.assertRaises(ValueError):
            LagPolynomial.ar([0.5]) * LagPolynomial.ma([0.5])

    def test_invalid_season_length(self):
        with self.assertRaises(ValueError):
            expand_ar([0.5], [0.4], 0)
