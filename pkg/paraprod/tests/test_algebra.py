import math
import unittest
from fractions import Fraction

import numpy as np

from paraprod.algebra.canonical import CanonicalSTForm, canonicalize, is_trivial, st_word, word_normal_form
from paraprod.algebra.classify import SymbolClass, two_letter_class
from paraprod.algebra.commutators import commutator, commutator_iter
from paraprod.algebra.decompose import quotient_basis, quotient_decompose, rebase, word_class
from paraprod.algebra.equality import equal_on_H0
from paraprod.algebra.expr import BivariatePoly, GOperatorExpr, parse_expr
from paraprod.config import ParaprodConfig, set_config
from paraprod.exceptions import DomainError, LiteralError, ShapeError, SingularBasisError, TermExplosionError
from paraprod.paraproducts import apply_operator
from paraprod.series.exact import ONE, ZERO, ExactComplex
from paraprod.series.functions import random_exact_polynomial
from paraprod.series.taylor import TaylorSeries


def random_pairs(seed, count=6):
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        g = random_exact_polynomial(rng, int(rng.integers(1, 4)))
        pairs.append((g, random_exact_polynomial(rng, int(rng.integers(0, 4)))))
    return pairs


class TestExpressions(unittest.TestCase):
    def test_parse_sum(self):
        op = parse_expr('ST - 1/2*TT')
        self.assertEqual(op.terms, {'ST': ONE, 'TT': ExactComplex(Fraction(-1, 2))})

    def test_parse_atoms(self):
        self.assertEqual(parse_expr('I'), GOperatorExpr.identity())
        self.assertEqual(parse_expr('delta0'), GOperatorExpr.delta0())
        self.assertEqual(parse_expr('pi0 + delta0'), GOperatorExpr.identity())

    def test_parse_json(self):
        op = parse_expr('[{"coeff":[2,0],"word":"ST"},"T"]')
        self.assertEqual(op, GOperatorExpr({'ST': 2, 'T': 1}))
        self.assertEqual(parse_expr(op.to_json()), op)

    def test_parse_malformed(self):
        for text in ('SX', 'S T', '', '{"rank_one":[]}', '[{"coeff":1}]'):
            with self.assertRaises(LiteralError):
                parse_expr(text)

    def test_merging(self):
        op = GOperatorExpr([(1, 'ST'), (-1, 'ST'), (2, 'T')])
        self.assertEqual(op.words(), ['T'])

    def test_immutable(self):
        with self.assertRaises(AttributeError):
            GOperatorExpr.word('T').terms = {}

    def test_power(self):
        t = GOperatorExpr.word('T')
        self.assertEqual(t ** 0, GOperatorExpr.identity())
        self.assertEqual(t ** 3, GOperatorExpr.word('TTT'))

    def test_at_one(self):
        # M(1) = g₀ + g(0), T(1) = g₀, S(1) = 0
        self.assertEqual(GOperatorExpr.word('M').at_one(), BivariatePoly({(1, 0): 1, (0, 1): 1}))
        self.assertEqual(GOperatorExpr.word('T').at_one(), BivariatePoly({(1, 0): 1}))
        self.assertTrue(GOperatorExpr.word('S').at_one().is_zero())

    def test_compose_matches_application(self):
        a = parse_expr('M + 2*delta0 - ST')
        b = parse_expr('TS - pi0 + M')
        composed = a * b
        for g, f in random_pairs(1):
            self.assertEqual(apply_operator(composed, g, f), apply_operator(a, g, apply_operator(b, g, f)))

    def test_term_guard(self):
        set_config(ParaprodConfig(max_terms=4))
        try:
            with self.assertRaises(TermExplosionError):
                GOperatorExpr({'S': 1, 'T': 1, 'M': 1, 'SS': 1, 'TT': 1})
        finally:
            set_config(None)


class TestCanonical(unittest.TestCase):
    def test_reordering(self):
        self.assertEqual(word_normal_form('TS'), (((0, 2), -ONE), ((1, 1), ONE)))

    def test_multiplication_is_trivial(self):
        form = canonicalize(parse_expr('M - S - T'))
        self.assertTrue(form.is_trivial())
        self.assertEqual(form.rank_one, BivariatePoly({(0, 1): 1}))
        self.assertTrue(is_trivial(parse_expr('M - S - T')))

    def test_identity_coefficient(self):
        form = canonicalize(parse_expr('I + 3*S'))
        self.assertEqual(form.pi0_coeff, ONE)
        self.assertEqual(form.s_poly, {1: ExactComplex(3)})
        self.assertFalse(form.is_trivial())

    def test_leading_term(self):
        form = canonicalize(parse_expr('SSTT + TTTT'))
        self.assertEqual(form.leading_term(), (2, 2))
        self.assertIsNone(CanonicalSTForm().leading_term())

    def test_idempotent(self):
        for text in ('TS + 2*MST - 1/2*SS + I', 'MMT - delta0', 'TSTS'):
            form = canonicalize(parse_expr(text))
            self.assertEqual(canonicalize(form.to_expr()), form)

    def test_sound(self):
        for text in ('TS + 2*MST - 1/2*SS + I', 'MMT - delta0', 'TMS + pi0', 'SMMT'):
            op = parse_expr(text)
            rebuilt = canonicalize(op).to_expr()
            for g, f in random_pairs(2):
                self.assertEqual(apply_operator(rebuilt, g, f), apply_operator(op, g, f))

    def test_to_json(self):
        obj = canonicalize(parse_expr('TS')).to_json()
        self.assertEqual([t['a'] for t in obj['st_terms']], [0, 1])
        self.assertFalse(obj['trivial'])


class TestCommutators(unittest.TestCase):
    def test_zero_order(self):
        op = parse_expr('ST')
        self.assertEqual(commutator_iter(op, 0), op)

    def test_negative_order(self):
        with self.assertRaises(DomainError):
            commutator_iter(parse_expr('ST'), -1)

    def test_iterated_commutator(self):
        # [S^mT^n, T]_m = m!·T^{2m+n} on H₀
        for m in range(5):
            for n in range(4):
                lhs = commutator_iter(GOperatorExpr.word(st_word(m, n)), m)
                rhs = GOperatorExpr.word('T' * (2 * m + n), math.factorial(m))
                self.assertTrue(canonicalize(lhs).equal_on_h0(canonicalize(rhs)), f'm={m}, n={n}')

    def test_commutator_differs_on_constants(self):
        # [S, T]1 − TT1 = g(0)g₀
        g = TaylorSeries([1, 1])
        one = TaylorSeries.one()
        st = commutator(GOperatorExpr.word('S'), GOperatorExpr.word('T'))
        difference = apply_operator(st, g, one) - apply_operator(GOperatorExpr.word('TT'), g, one)
        self.assertEqual(difference, TaylorSeries.monomial(1))


class TestDecomposition(unittest.TestCase):
    def test_known_word(self):
        decomposition = quotient_decompose(4, 2, 0)
        self.assertEqual(decomposition.to_json(), {'q': 2, 'd': 0, 'word': 'SSTSST'})
        self.assertEqual(quotient_decompose(5, 2, 1).word, 'SSTSTST')

    def test_structure(self):
        for m in range(9):
            for n in range(5):
                for j in range(m + 1):
                    if n + j == 0:
                        continue
                    word = quotient_decompose(m, n, j).word
                    self.assertEqual(word_class(word), (0, m - j, n + j))
                    self.assertTrue(word.endswith('T'))
                    blocks = [len(b) for b in word.split('T')[:-1]]
                    self.assertLessEqual(max(blocks) - min(blocks), 1)
                    form = canonicalize(GOperatorExpr.word(word))
                    self.assertEqual(form.leading_term(), (m - j, n + j))
                    self.assertEqual(form.st_terms[(m - j, n + j)], ONE)

    def test_domain(self):
        with self.assertRaises(DomainError):
            quotient_decompose(0, 0, 0)
        with self.assertRaises(DomainError):
            quotient_decompose(2, 1, 3)

    def test_basis(self):
        self.assertEqual(quotient_basis(2, 2), ['STST', 'STTT', 'TTTT'])

    def test_rebase(self):
        # SSTT = STST + STTT on H₀
        self.assertEqual(rebase(GOperatorExpr.word('SSTT')), [ONE, ZERO])

    def test_rebase_shape(self):
        with self.assertRaises(ShapeError):
            rebase(parse_expr('M'))
        with self.assertRaises(ShapeError):
            rebase(parse_expr('2*SSTT'))

    def test_rebase_singular(self):
        with self.assertRaises(SingularBasisError):
            rebase(GOperatorExpr.word('SSTT'), basis=['STST', 'TTTT', 'STTT'])


class TestEquality(unittest.TestCase):
    def test_reordered_words_differ(self):
        result = equal_on_H0(parse_expr('ST'), parse_expr('TS'))
        self.assertFalse(result)
        self.assertFalse(result.canonical_equal)
        self.assertIn('witness', result.to_json())

    def test_rewrite_rule(self):
        result = equal_on_H0(parse_expr('TS'), parse_expr('ST - TT'))
        self.assertTrue(result)
        self.assertIsNone(result.witness)

    def test_rank_one_ignored_on_h0(self):
        self.assertTrue(equal_on_H0(parse_expr('M'), parse_expr('S + T + delta0')))


class TestClassification(unittest.TestCase):
    def test_two_letter_words(self):
        for word in ('MM', 'MS', 'SM', 'SS'):
            self.assertEqual(two_letter_class(word), SymbolClass.H_INFINITY)
        # ST = TM = ½T_{g²}, and MT, TS differ from ST by ±TT on H₀
        for word in ('ST', 'TM', 'MT', 'TS'):
            self.assertEqual(two_letter_class(word), SymbolClass.G_SQUARED_BLOCH_TYPE)
        self.assertEqual(two_letter_class('TT'), SymbolClass.BLOCH_TYPE)

    def test_bad_words(self):
        with self.assertRaises(DomainError):
            two_letter_class('MST')
        with self.assertRaises(LiteralError):
            two_letter_class('MX')


if __name__ == '__main__':
    unittest.main()
