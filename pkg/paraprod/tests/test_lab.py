import math
import unittest

import numpy as np

from paraprod.algebra.expr import GOperatorExpr, parse_expr
from paraprod.exceptions import DegenerateFamilyError, DomainError, LiteralError, ShapeError, ZeroNormWitnessError
from paraprod.lab.estimator import delta0_norm, norm_ratio, opnorm_lower, trivial_operator_norm
from paraprod.lab.experiments import (CommutatorCheck, IdentitySuite, PowerLemmaCheck, RadicalityExperiment,
                                      TwoLetterSurvey)
from paraprod.lab.families import TestFamily
from paraprod.lab.identities import case_generator, identity_kinds, run_identity, symbol_shift
from paraprod.paraproducts import apply_word
from paraprod.series.functions import log_series
from paraprod.series.taylor import TaylorSeries
from paraprod.weights import RadialWeightDescriptor


z = TaylorSeries.monomial(1)
standard = RadialWeightDescriptor.standard()


class TestFamilies(unittest.TestCase):
    def test_monomials(self):
        members = TestFamily.from_spec('monomials:5').members()
        self.assertEqual(len(members), 6)
        self.assertEqual(members[0][0], 'z^0')

    def test_monomials_h0(self):
        members = TestFamily.from_spec('monomials:5', restrict_H0=True).members()
        self.assertEqual(len(members), 5)
        self.assertTrue(all(f.vanishes_at_zero() for _, f in members))

    def test_random_is_reproducible(self):
        a = TestFamily.from_spec('random_polys:4:3:7').members()
        b = TestFamily.from_spec('random_polys:4:3:7').members()
        self.assertEqual([i for i, _ in a], ['random[0]', 'random[1]', 'random[2]', 'random[3]'])
        for (_, f), (_, h) in zip(a, b):
            self.assertLessEqual(f.degree, 3)
            self.assertTrue(np.array_equal(f.to_complex_array(), h.to_complex_array()))

    def test_custom_json(self):
        family = TestFamily.from_spec('{"kind":"custom","series":["[[0,0],[1,0]]"]}')
        self.assertEqual(family.members(), [('custom[0]', z)])
        self.assertEqual(family.to_json()['size'], 1)

    def test_kernels(self):
        family = TestFamily.doubling_kernels(eta=2., radii=(.5,), angles=2, cap=32)
        members = family.members(2., standard)
        self.assertEqual([i for i, _ in members], ['kernel[0.5,0/2]', 'kernel[0.5,1/2]'])
        self.assertEqual(members[0][1].cap, 32)

    def test_kernels_need_doubling_weight(self):
        family = TestFamily.doubling_kernels(eta=2., radii=(.5,), angles=2, cap=32)
        with self.assertRaises(DomainError):
            family.members(2., RadialWeightDescriptor.exponential(1., 1.))

    def test_kernels_eta_above_beta(self):
        # β = 1 for the unweighted disc
        family = TestFamily.doubling_kernels(eta=.5, radii=(.5,), angles=2, cap=32)
        with self.assertRaises(DomainError):
            family.members(2., standard)

    def test_kernels_need_weight(self):
        with self.assertRaises(LiteralError):
            TestFamily.doubling_kernels(eta=2.).members()

    def test_malformed(self):
        for spec in ('nope', 'random_polys:x', '{"kind":"custom"', '{"kind":"monomials","size":3}'):
            with self.assertRaises(LiteralError):
                TestFamily.from_spec(spec)

    def test_empty(self):
        with self.assertRaises(DegenerateFamilyError):
            TestFamily.custom([]).members()


class TestEstimator(unittest.TestCase):
    def test_identity(self):
        estimate = opnorm_lower(GOperatorExpr.identity(), z, 2., standard, TestFamily.monomials(5))
        self.assertAlmostEqual(estimate.lower_bound, 1., places=14)
        self.assertEqual(estimate.best_witness, 'z^0')
        self.assertEqual(estimate.certified, 'lower_bound')

    def test_constant_symbol(self):
        estimate = opnorm_lower(GOperatorExpr.word('T'), TaylorSeries([3]), 2., standard, TestFamily.monomials(5))
        self.assertEqual(estimate.lower_bound, 0.)

    def test_t_with_identity_symbol(self):
        # ‖T_z z^k‖/‖z^k‖ = ((k+1)(k+2))^{−1/2}
        estimate = opnorm_lower(GOperatorExpr.word('T'), z, 2., standard, TestFamily.monomials(10))
        self.assertAlmostEqual(estimate.lower_bound, 1. / math.sqrt(2.), places=12)
        self.assertEqual(estimate.best_witness, 'z^0')
        self.assertEqual(estimate.to_json()['family']['kind'], 'monomials')

    def test_ascent_is_seeded_and_monotone(self):
        op = GOperatorExpr.word('T')
        family = TestFamily.monomials(3)
        base = opnorm_lower(op, z, 2., standard, family)
        first = opnorm_lower(op, z, 2., standard, family, refine=20, seed=5)
        second = opnorm_lower(op, z, 2., standard, family, refine=20, seed=5)
        self.assertGreaterEqual(first.lower_bound, base.lower_bound)
        self.assertEqual(first.lower_bound, second.lower_bound)
        self.assertEqual(first.best_witness, second.best_witness)

    def test_zero_witness(self):
        with self.assertRaises(ZeroNormWitnessError):
            norm_ratio(GOperatorExpr.word('T'), z, TaylorSeries.zero(), 2., standard)

    def test_truncation_flag(self):
        # M_g with g = log(1/(1−z)) cut at a low cap keeps a heavy tail
        ratio = norm_ratio(GOperatorExpr.word('M'), log_series(4), TaylorSeries.monomial(2), 2., standard)
        self.assertIn('truncation_limited', ratio.flags)

    def test_delta0_norm(self):
        self.assertAlmostEqual(delta0_norm(2., standard), 1.)
        w = RadialWeightDescriptor.exponential(1., 1.)
        self.assertAlmostEqual(delta0_norm(4., w), w.mass() ** -.25)

    def test_trivial_operator(self):
        # M − S − T = g(0)δ₀
        self.assertAlmostEqual(trivial_operator_norm(parse_expr('M - S - T'), TaylorSeries([2, 1]), 2., standard), 2.)
        with self.assertRaises(ShapeError):
            trivial_operator_norm(parse_expr('T'), z, 2., standard)


class TestIdentities(unittest.TestCase):
    def test_every_kind(self):
        for index in range(2 * len(identity_kinds)):
            case = run_identity(index, case_generator(11, index))
            self.assertEqual(case.kind, identity_kinds[index % len(identity_kinds)])
            self.assertTrue(case.passed, case.to_json())

    def test_shift_keeps_identity_term(self):
        # g = 0 and λ = 1: S²_{g+λ} f = f on H₀, carried by the λ²I term alone
        f = TaylorSeries([0, 1, 1])
        self.assertTrue(apply_word('SS', TaylorSeries.constant(1), f).allclose(f))
        self.assertTrue(apply_word('SS', TaylorSeries.zero(), f).allclose(TaylorSeries.zero()))
        for seed in range(5):
            self.assertTrue(symbol_shift(case_generator(seed, 0)).passed)

    def test_suite(self):
        report = IdentitySuite(seed=3, cases=25).run()
        self.assertEqual(report['failed'], 0)
        self.assertEqual(report['passed'], 25)
        self.assertEqual(sum(counts['passed'] for counts in report['by_kind'].values()), 25)
        self.assertNotIn('failures', report)


class TestExperiments(unittest.TestCase):
    def test_power_lemma_constant(self):
        # ‖T1‖²/(‖T²1‖·‖1‖) = √3 for g = z
        check = PowerLemmaCheck(z, 2., standard, 1, TestFamily.custom([TaylorSeries.one()]))
        report = check.run()
        self.assertAlmostEqual(report['max'], math.sqrt(3.), places=12)
        self.assertEqual(report['degenerate'], [])

    def test_power_lemma_degenerate(self):
        check = PowerLemmaCheck(TaylorSeries([2]), 2., standard, 2, TestFamily.monomials(4))
        with self.assertRaises(DegenerateFamilyError):
            check.run()

    def test_power_lemma_bad_power(self):
        with self.assertRaises(DomainError):
            PowerLemmaCheck(z, 2., standard, 0, TestFamily.monomials(4))

    def test_radicality(self):
        experiment = RadicalityExperiment(z, 2., standard, 3, TestFamily.monomials(10))
        report = experiment.run()
        self.assertEqual([row['m'] for row in report['rows']], [1, 2, 3])
        self.assertEqual(report['label'], 'illustration')
        self.assertGreater(report['constant'], 0.)
        self.assertAlmostEqual(report['rows'][0]['lower_bound'], 1. / math.sqrt(2.), places=12)

    def test_radicality_range(self):
        with self.assertRaises(DomainError):
            RadicalityExperiment(z, 2., standard, 7, TestFamily.monomials(10))

    def test_two_letter(self):
        survey = TwoLetterSurvey(TaylorSeries([1, 1]), 2., standard, TestFamily.monomials(4))
        report = survey.run()
        self.assertEqual(len(report['rows']), 9)
        self.assertTrue(all(report['identities'].values()))
        conditions = {row['word']: row['condition'] for row in report['rows']}
        self.assertEqual(conditions['TS'], 'g^2 in T(A^p_omega)')
        self.assertEqual(conditions['MM'], 'H_infinity')
        self.assertEqual(conditions['TT'], 'T(A^p_omega)')

    def test_commutator_check(self):
        report = CommutatorCheck(2, 1).run()
        self.assertEqual(len(report['rows']), 5)
        self.assertTrue(report['all_exact'])

    def test_commutator_check_numeric(self):
        experiment = CommutatorCheck(1, 1, g=z, weight=standard, family=TestFamily.monomials(6, restrict_H0=True))
        report = experiment.run()
        for row in report['rows']:
            self.assertGreaterEqual(row['lb_commutator'], 0.)
            self.assertGreater(row['lb_power'], 0.)


if __name__ == '__main__':
    unittest.main()
