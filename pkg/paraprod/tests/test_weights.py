import math
import unittest

from scipy import special

from paraprod.exceptions import (DomainError, LiteralError, NotUpperDoublingError, UnknownWeightKindError,
                                 WrongWeightKindError)
from paraprod.weights import RadialWeightDescriptor, Verdict, WeightKind


class TestDescriptor(unittest.TestCase):
    def test_from_json(self):
        w = RadialWeightDescriptor.from_json('{"kind":"standard","alpha":1.5}')
        self.assertEqual(w.kind, WeightKind.STANDARD)
        self.assertEqual(w.alpha, 1.5)

    def test_round_trip(self):
        for w in (RadialWeightDescriptor.standard(2.), RadialWeightDescriptor.exponential(2., .5),
                  RadialWeightDescriptor.double_exponential(3.)):
            self.assertEqual(RadialWeightDescriptor.from_json(w.to_json()), w)

    def test_unknown_kind(self):
        with self.assertRaises(UnknownWeightKindError):
            RadialWeightDescriptor.from_json('{"kind":"gaussian"}')

    def test_malformed(self):
        with self.assertRaises(LiteralError):
            RadialWeightDescriptor.from_json('{"alpha":1}')
        with self.assertRaises(LiteralError):
            RadialWeightDescriptor.from_json('{"kind":"tabulated"}')

    def test_bad_alpha(self):
        with self.assertRaises(DomainError):
            RadialWeightDescriptor.standard(-1.)

    def test_radius_domain(self):
        with self.assertRaises(DomainError):
            RadialWeightDescriptor.standard().omega(1.)


class TestEvaluators(unittest.TestCase):
    def test_standard_omega_hat(self):
        w = RadialWeightDescriptor.standard(0.)
        for r in (0., .3, .9, .999):
            self.assertAlmostEqual(w.omega_hat(r), 1. - r, places=12)

    def test_standard_omega_hat_alpha1(self):
        # ∫_r^1 2(1−s²) ds
        w = RadialWeightDescriptor.standard(1.)
        r = .4
        expected = 2. * ((1. - r) - (1. - r ** 3) / 3.)
        self.assertAlmostEqual(w.omega_hat(r), expected, places=12)

    def test_moments(self):
        for alpha in (0., 1., 2.5):
            w = RadialWeightDescriptor.standard(alpha)
            for n in (0, 3, 30):
                expected = (alpha + 1.) * special.beta(n + 1., alpha + 1.)
                self.assertAlmostEqual(w.moment(n) / expected, 1., places=10)

    def test_unit_mass(self):
        self.assertAlmostEqual(RadialWeightDescriptor.standard(3.).mass(), 1., places=12)

    def test_exponential_omega_hat_quadrature(self):
        # ∫_r^1 e^{−1/(1−s)} ds = e^{−x}/x − E₁(x) with x = 1/(1−r)
        w = RadialWeightDescriptor.exponential(1., 1.)
        for r in (.5, .8):
            x = 1. / (1. - r)
            expected = math.exp(-x) / x - special.exp1(x)
            self.assertAlmostEqual(w.omega_hat(r) / expected, 1., places=7)

    def test_normalized(self):
        w = RadialWeightDescriptor.exponential(1., 1.).normalized()
        self.assertAlmostEqual(w.mass(), 1., places=8)

    def test_omega_star_closed_form(self):
        w = RadialWeightDescriptor.standard(0.)
        tab = RadialWeightDescriptor.tabulated([(0., 1.), (.5, 1.), (1., 1.)])
        for r in (.2, .7):
            self.assertAlmostEqual(w.omega_star(r), tab.omega_star(r), places=8)

    def test_phi_prime_kind(self):
        with self.assertRaises(WrongWeightKindError):
            RadialWeightDescriptor.standard().phi_prime(.5)
        w = RadialWeightDescriptor.exponential(2., 1.)
        self.assertAlmostEqual(w.phi_prime(.5), 2. / .25)

    def test_double_exponential(self):
        # ω = exp(exp(−c/(1−r))), φ = −exp(−c/(1−r))
        w = RadialWeightDescriptor.double_exponential(1.)
        self.assertAlmostEqual(w.omega(0.), math.exp(math.exp(-1.)), places=12)
        self.assertAlmostEqual(w.phi(0.), -math.exp(-1.), places=12)
        self.assertAlmostEqual(w.phi_prime(0.), math.exp(-1.), places=12)


class TestClassification(unittest.TestCase):
    def test_standard_doubling(self):
        for alpha in (0., .5, 1., 2., 5.):
            report = RadialWeightDescriptor.standard(alpha).classify_doubling()
            self.assertEqual(report.in_upper_doubling.verdict, Verdict.PASS)
            self.assertEqual(report.in_lower_doubling.verdict, Verdict.PASS)
            self.assertTrue(RadialWeightDescriptor.standard(alpha).is_upper_doubling())

    def test_standard_doubling_constant(self):
        report = RadialWeightDescriptor.standard(1.).classify_doubling()
        self.assertLessEqual(report.doubling_sup, 4. + 1e-9)

    def test_exponential_fails(self):
        w = RadialWeightDescriptor.exponential(1., 1.)
        report = w.classify_doubling()
        self.assertEqual(report.in_upper_doubling.verdict, Verdict.FAIL)
        self.assertGreater(w.omega_hat(.99) / w.omega_hat(.995), 100.)

    def test_report_json(self):
        obj = RadialWeightDescriptor.standard(0.).classify_doubling().to_json()
        self.assertEqual(obj['in_upper_doubling']['verdict'], 'pass')
        self.assertIn(obj['in_lower_doubling']['K'], (2, 4, 8, 16))

    def test_beta_exponent_standard(self):
        certificate = RadialWeightDescriptor.standard(0.).beta_exponent()
        self.assertTrue(math.isclose(certificate.beta, 1., abs_tol=1e-9))
        self.assertGreaterEqual(certificate.C, 1.)

    def test_beta_exponent_not_doubling(self):
        with self.assertRaises(NotUpperDoublingError):
            RadialWeightDescriptor.exponential(1., 1.).beta_exponent()


if __name__ == '__main__':
    unittest.main()
