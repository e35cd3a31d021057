import math
import unittest

from paraprod.exceptions import DomainError, NotUpperDoublingError, WrongWeightKindError
from paraprod.norms.seminorms import (b_phi_bloch_factor, b_phi_seminorm, bloch_seminorm, c1_omega_star_seminorm,
                                      garsia_at, garsia_seminorm, lip_seminorm)
from paraprod.series.functions import binomial_series, log_series
from paraprod.series.taylor import TaylorSeries
from paraprod.weights import RadialWeightDescriptor


class TestBloch(unittest.TestCase):
    def test_identity_symbol(self):
        estimate = bloch_seminorm(TaylorSeries.monomial(1))
        self.assertAlmostEqual(estimate.value, 1., places=12)
        self.assertEqual(estimate.certified, 'lower_bound')

    def test_square(self):
        # max of 2r(1 − r²) at r = 1/√3
        estimate = bloch_seminorm(TaylorSeries.monomial(2))
        self.assertAlmostEqual(estimate.value, 4. / (3. * math.sqrt(3.)), places=6)
        self.assertAlmostEqual(abs(estimate.argmax), 1. / math.sqrt(3.), places=3)

    def test_log(self):
        # sup of (1 + r)(1 − r^512) on [0, 1)
        estimate = bloch_seminorm(log_series(512))
        self.assertAlmostEqual(estimate.value, 1.985, delta=.005)
        self.assertLessEqual(estimate.value, 2. + 1e-9)
        self.assertEqual(set(estimate.cap_values), {256, 512})

    def test_constant(self):
        self.assertEqual(bloch_seminorm(TaylorSeries([3])).value, 0.)

    def test_to_json(self):
        obj = bloch_seminorm(TaylorSeries.monomial(1)).to_json()
        self.assertEqual(obj['kind'], 'bloch')
        self.assertEqual(len(obj['argmax']), 2)


class TestLipschitz(unittest.TestCase):
    def test_square_root(self):
        estimate = lip_seminorm(binomial_series(.5, 512), .5)
        self.assertLessEqual(estimate.value, .5 + 1e-9)
        self.assertGreater(estimate.value, .2)
        self.assertEqual(estimate.details['s'], .5)

    def test_fourth_root_not_half_lipschitz(self):
        # (1 − z)^{1/4} is outside Lip_{1/2}, the truncated seminorm grows like cap^{1/4}
        low = lip_seminorm(binomial_series(.25, 64), .5)
        high = lip_seminorm(binomial_series(.25, 256), .5)
        self.assertGreaterEqual(high.value, 1.15 * low.value)
        self.assertIn('truncation_limited', high.flags)

    def test_exponent_range(self):
        for s in (0., 1., 1.5):
            with self.assertRaises(DomainError):
                lip_seminorm(TaylorSeries.monomial(1), s)


class TestBPhi(unittest.TestCase):
    def test_needs_exponential_weight(self):
        with self.assertRaises(WrongWeightKindError):
            b_phi_seminorm(TaylorSeries.monomial(1), RadialWeightDescriptor.standard())

    def test_identity_symbol(self):
        w = RadialWeightDescriptor.exponential(1., 1.)
        value = b_phi_seminorm(TaylorSeries.monomial(1), w).value
        self.assertGreater(value, 0.)
        self.assertLessEqual(value, 1.)

    def test_bloch_factor_finite(self):
        factor = b_phi_bloch_factor(RadialWeightDescriptor.exponential(1., 1.))
        self.assertTrue(math.isfinite(factor))
        self.assertGreaterEqual(factor, 1. / (1. + RadialWeightDescriptor.exponential(1., 1.).phi_prime(0.)))


class TestGarsia(unittest.TestCase):
    def test_at_origin(self):
        # g∘φ₀ − g(0) = −z for g = z
        self.assertAlmostEqual(garsia_at(TaylorSeries.monomial(1), 0j), 1. / math.sqrt(2.), places=12)

    def test_identity_symbol(self):
        estimate = garsia_seminorm(TaylorSeries.monomial(1))
        self.assertAlmostEqual(estimate.value, 1. / math.sqrt(2.), places=9)

    def test_point_outside(self):
        with self.assertRaises(DomainError):
            garsia_at(TaylorSeries.monomial(1), 1.)


class TestCarleson(unittest.TestCase):
    def test_constant_symbol(self):
        estimate = c1_omega_star_seminorm(TaylorSeries([2]), RadialWeightDescriptor.standard())
        self.assertEqual(estimate.value, 0.)

    def test_identity_symbol(self):
        estimate = c1_omega_star_seminorm(TaylorSeries.monomial(1), RadialWeightDescriptor.standard(1.),
                                          levels=range(6))
        self.assertGreater(estimate.value, 0.)
        self.assertTrue(math.isfinite(estimate.value))
        self.assertEqual(len(estimate.details['level_sups']), 6)

    def test_not_doubling(self):
        with self.assertRaises(NotUpperDoublingError):
            c1_omega_star_seminorm(TaylorSeries.monomial(1), RadialWeightDescriptor.exponential(1., 1.))


if __name__ == '__main__':
    unittest.main()
