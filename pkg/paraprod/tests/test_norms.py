import math
import unittest

import numpy as np
from pydantic import ValidationError
from scipy import integrate, special

from paraprod.exceptions import DomainError
from paraprod.norms.bergman import bergman_norm, moment_norm, mz_isomorphism_check, pointwise_bound_check
from paraprod.norms.kernels import kernel_integral_check
from paraprod.norms.quadrature import QuadratureConfig, circle_values, pairwise_sum
from paraprod.norms.stolz import (arc_half_width, calderon_check, in_stolz_region, maximal_function_norm,
                                  restricted_norm, tent_norm, tent_product_check)
from paraprod.series.taylor import TaylorSeries
from paraprod.weights import RadialWeightDescriptor


def random_poly(seed, degree):
    rng = np.random.default_rng(seed)
    return TaylorSeries(list(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)))


def small_tent_config(**overrides):
    values = {'tent_radii': 64, 'tent_angles': 256}
    values.update(overrides)
    return QuadratureConfig.from_config(**values)


class TestQuadrature(unittest.TestCase):
    def test_odd_angles_rejected(self):
        with self.assertRaises(ValidationError):
            QuadratureConfig(n_theta=255)

    def test_aperture_fixed(self):
        with self.assertRaises(ValidationError):
            QuadratureConfig(stolz_aperture=3.)

    def test_circle_values(self):
        coeffs = np.array([1., 2., 3.])
        values = circle_values(coeffs, np.array([.5]), 8)[0]
        z = .5 * np.exp(2j * np.pi * np.arange(8) / 8)
        self.assertTrue(np.allclose(values, 1. + 2. * z + 3. * z * z))

    def test_circle_values_folded(self):
        coeffs = np.arange(1., 12.)
        values = circle_values(coeffs, np.array([.9]), 4)[0]
        z = .9 * np.exp(2j * np.pi * np.arange(4) / 4)
        self.assertTrue(np.allclose(values, np.polyval(coeffs[::-1], z)))

    def test_pairwise_sum(self):
        self.assertEqual(pairwise_sum(np.ones(7)), 7.)
        self.assertEqual(pairwise_sum(np.array([])), 0.)


class TestBergmanNorm(unittest.TestCase):
    def test_monomial_moments(self):
        for alpha in (0., 1., 2.5):
            w = RadialWeightDescriptor.standard(alpha)
            for n in (0, 1, 7, 30):
                expected = (alpha + 1.) * special.beta(n + 1., alpha + 1.)
                value = bergman_norm(TaylorSeries.monomial(n), 2, w).value ** 2
                self.assertAlmostEqual(value / expected, 1., places=9)

    def test_exact_value_reported_without_error(self):
        estimate = bergman_norm(TaylorSeries([1, 1]), 2, RadialWeightDescriptor.standard())
        self.assertEqual(estimate.err_est, 0.)
        self.assertAlmostEqual(estimate.value, math.sqrt(1.5), places=12)

    def test_quadrature_agrees_with_moments(self):
        for alpha in (0., 1.):
            w = RadialWeightDescriptor.standard(alpha)
            f = random_poly(1, 9)
            exact = moment_norm(f, w)
            quadrature = bergman_norm(f, 2, w, exact_moments=False)
            self.assertFalse(quadrature.inconclusive)
            self.assertLess(abs(quadrature.value - exact), 1e-7 * exact)

    def test_constant_function(self):
        w = RadialWeightDescriptor.standard(2.)
        for p in (.5, 1., 3.):
            self.assertAlmostEqual(bergman_norm(TaylorSeries([1]), p, w).value, 1., places=8)

    def test_zero_function(self):
        self.assertEqual(bergman_norm(TaylorSeries.zero(), 3, RadialWeightDescriptor.standard()).value, 0.)

    def test_bad_exponent(self):
        with self.assertRaises(DomainError):
            bergman_norm(TaylorSeries([1]), 0, RadialWeightDescriptor.standard())

    def test_dilation_contracts(self):
        w = RadialWeightDescriptor.standard(1.)
        for seed in range(2, 8):
            f = random_poly(seed, 6)
            for p in (1., 2., 4.):
                full = bergman_norm(f, p, w).value
                for r in (.3, .6, .9):
                    self.assertLessEqual(bergman_norm(f.dilate(r), p, w).value, full * (1. + 1e-6))

    def test_rotation_invariance(self):
        w = RadialWeightDescriptor.standard(.5)
        f = random_poly(4, 5)
        rotation = np.exp(1j * np.arange(6) * .7)
        rotated = TaylorSeries(list(f.to_complex_array() * rotation))
        a = bergman_norm(f, 3., w).value
        b = bergman_norm(rotated, 3., w).value
        self.assertLess(abs(a - b), 1e-6 * a)

    def test_pointwise_bound_constant(self):
        # sup|1|² / (‖1‖² / ((1 − r)ω̂((1 + r)/2))) = (1 − r)(1 − (1 + r)/2) at α = 0
        factor = pointwise_bound_check(TaylorSeries([1]), .5, 2, RadialWeightDescriptor.standard())
        self.assertAlmostEqual(factor, .125, places=9)

    def test_pointwise_bound_radius(self):
        with self.assertRaises(DomainError):
            pointwise_bound_check(TaylorSeries([1]), 1., 2, RadialWeightDescriptor.standard())

    def test_multiplication_by_z(self):
        result = mz_isomorphism_check(random_poly(5, 4), 2, RadialWeightDescriptor.standard())
        self.assertLessEqual(result['contraction'], 1.)
        self.assertGreaterEqual(result['inverse_constant'], 1.)


class TestStolz(unittest.TestCase):
    def test_arc_half_width_matches_region(self):
        r, rho = .5, .6
        phi = float(arc_half_width(r, rho))
        self.assertGreater(phi, 0.)
        self.assertTrue(in_stolz_region(r * np.exp(.99j * phi), rho))
        self.assertFalse(in_stolz_region(r * np.exp(1.01j * phi), rho))

    def test_arc_empty_outside(self):
        self.assertEqual(float(arc_half_width(.7, .6)), 0.)
        self.assertFalse(in_stolz_region(.7, .6))

    def test_arc_full_circle_near_origin(self):
        self.assertAlmostEqual(float(arc_half_width(.01, .5)), math.pi)

    def test_maximal_function_of_constant(self):
        w = RadialWeightDescriptor.standard()
        estimate = maximal_function_norm(TaylorSeries([1]), 2, w, small_tent_config())
        self.assertAlmostEqual(estimate.value, 1., places=6)

    def test_restricted_norm_of_constant(self):
        w = RadialWeightDescriptor.standard()
        self.assertAlmostEqual(restricted_norm(TaylorSeries([1]), 2, w, small_tent_config()), 1., places=6)

    def test_tent_norm_of_constant(self):
        # ∫_𝔻 |Γ(ζ)| dA(ζ) with |Γ(ζ)| the normalized area of the region
        def integrand(r, rho):
            return 2. * rho * 2. * float(arc_half_width(r, rho)) * r / math.pi

        expected = math.sqrt(integrate.dblquad(integrand, 0., 1., 0., lambda rho: rho)[0])
        w = RadialWeightDescriptor.standard()
        grid = tent_norm(TaylorSeries([1]), 2, w, small_tent_config(tent_radii=128, tent_angles=512))
        self.assertLess(abs(grid.value - expected), .05 * expected)
        montecarlo = tent_norm(TaylorSeries([1]), 2, w,
                               small_tent_config(mode='montecarlo', mc_samples=200_000, seed=7))
        self.assertIsNotNone(montecarlo.sigma)
        self.assertLess(abs(montecarlo.value - expected), .03 * expected)

    def test_montecarlo_needs_p2(self):
        with self.assertRaises(DomainError):
            tent_norm(TaylorSeries([1, 1]), 3, RadialWeightDescriptor.standard(), small_tent_config(mode='montecarlo'))

    def test_zero_function(self):
        self.assertEqual(tent_norm(TaylorSeries.zero(), 2, RadialWeightDescriptor.standard()).value, 0.)

    def test_calderon_ratio_bounded(self):
        w = RadialWeightDescriptor.standard()
        ratios = []
        for seed in range(3):
            result = calderon_check(random_poly(seed, 6), 2, w, small_tent_config())
            ratios.append(result['ratio'])
        self.assertTrue(all(.02 < r < 50. for r in ratios))
        self.assertLess(max(ratios) / min(ratios), 50.)

    def test_calderon_other_exponents(self):
        w = RadialWeightDescriptor.standard(1.)
        for p in (1., 4.):
            for seed in range(2):
                result = calderon_check(random_poly(seed, 5), p, w, small_tent_config())
                self.assertTrue(.01 < result['ratio'] < 100.)

    def test_tent_product_positive(self):
        h = TaylorSeries([1, 1])
        ratio = tent_product_check(h, h, 2, RadialWeightDescriptor.standard(), small_tent_config())
        self.assertTrue(math.isfinite(ratio))
        self.assertGreater(ratio, 0.)
        self.assertLess(ratio, 100.)

    def test_tent_product_zero(self):
        with self.assertRaises(DomainError):
            tent_product_check(TaylorSeries.zero(), TaylorSeries([0, 1]), 2, RadialWeightDescriptor.standard(),
                               small_tent_config())


class TestKernels(unittest.TestCase):
    def test_origin(self):
        result = kernel_integral_check(0j, 2., RadialWeightDescriptor.standard(), beta=1.)
        self.assertAlmostEqual(result['ratio'], 1., places=7)

    def test_ratio_stays_bounded(self):
        w = RadialWeightDescriptor.standard()
        ratios = [kernel_integral_check(r, 2., w, beta=1.)['ratio'] for r in (0., .5, .9, .95)]
        self.assertTrue(all(.1 <= r <= 10. for r in ratios))
        self.assertLessEqual(max(ratios) / min(ratios), 4.)

    def test_xi_outside_disc(self):
        with self.assertRaises(DomainError):
            kernel_integral_check(1., 2., RadialWeightDescriptor.standard(), beta=1.)

    def test_eta_not_above_beta(self):
        with self.assertRaises(DomainError):
            kernel_integral_check(.5, .5, RadialWeightDescriptor.standard())


if __name__ == '__main__':
    unittest.main()
