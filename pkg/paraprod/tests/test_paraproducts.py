import unittest
from fractions import Fraction

import numpy as np

from paraprod.algebra.expr import BivariatePoly, GOperatorExpr
from paraprod.config import ParaprodConfig, set_config
from paraprod.exceptions import DegreeOverflowError, DomainError, LiteralError
from paraprod.paraproducts import (Symbol, apply_M, apply_S, apply_T, apply_operator, apply_word, delta0,
                                   dilated_operator, evaluate_rank_one, pi0)
from paraprod.series.functions import random_exact_polynomial
from paraprod.series.taylor import TaylorSeries


z = TaylorSeries.monomial(1)
one = TaylorSeries.one()


class TestLetters(unittest.TestCase):
    def test_multiplication(self):
        self.assertEqual(apply_M(TaylorSeries([1, 1]), z), TaylorSeries([0, 1, 1]))

    def test_t_of_one(self):
        self.assertEqual(apply_T(z, one), z)

    def test_s_kills_constants(self):
        self.assertTrue(apply_S(z, TaylorSeries([5])).is_zero())

    def test_st_of_one(self):
        # S_z(T_z 1) = ∫ z = z²/2
        self.assertEqual(apply_word('ST', z, one), TaylorSeries([0, 0, Fraction(1, 2)]))

    def test_empty_word(self):
        f = TaylorSeries([1, 2, 3])
        self.assertEqual(apply_word('', z, f), f)

    def test_multiplication_split(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            g = random_exact_polynomial(rng, 3)
            f = random_exact_polynomial(rng, 4)
            split = apply_S(g, f) + apply_T(g, f) + TaylorSeries([g.value_at_zero() * f.value_at_zero()])
            self.assertEqual(apply_M(g, f), split)

    def test_t_powers_of_one(self):
        # T^3 1 = g₀³/3! for g = 1 + z
        g = TaylorSeries([1, 1])
        self.assertEqual(apply_word('TTT', g, one), TaylorSeries([0, 0, 0, Fraction(1, 6)]))

    def test_products_vanish_at_zero(self):
        g = TaylorSeries([2, 1, 1])
        f = TaylorSeries([3, 1])
        for word in ('S', 'T', 'TS', 'SMT'):
            self.assertTrue(apply_word(word, g, f).vanishes_at_zero())

    def test_bad_letter(self):
        with self.assertRaises(LiteralError):
            apply_word('MX', z, one)

    def test_float_symbol(self):
        g = TaylorSeries([.5, 1.])
        self.assertTrue(apply_T(g, one).allclose(TaylorSeries([0., 1.])))


class TestRankOne(unittest.TestCase):
    def test_delta0_and_pi0(self):
        f = TaylorSeries([3, 1])
        self.assertEqual(delta0(f), TaylorSeries([3]))
        self.assertEqual(pi0(f), z)
        self.assertEqual(apply_operator(GOperatorExpr.delta0(), z, f), TaylorSeries([3]))
        self.assertEqual(apply_operator(GOperatorExpr.pi0(), z, f), z)

    def test_evaluate_rank_one(self):
        # x·y + 2 with g = 3 + z: x = z, y = 3
        poly = BivariatePoly({(1, 1): 1, (0, 0): 2})
        self.assertEqual(evaluate_rank_one(poly, TaylorSeries([3, 1])), TaylorSeries([2, 3]))

    def test_operator_with_rank_one(self):
        op = GOperatorExpr({'T': 1}, rank_one=BivariatePoly({(0, 1): 1}))
        g = TaylorSeries([2, 1])
        f = TaylorSeries([5, 1])
        expected = apply_T(g, f) + TaylorSeries([10])
        self.assertEqual(apply_operator(op, g, f), expected)

    def test_symbol_cache(self):
        symbol = Symbol(TaylorSeries([2, 1]))
        self.assertEqual(symbol.g0, z)
        self.assertEqual(symbol.value_at_zero, 2)
        self.assertIs(symbol.derivative(), symbol.derivative())


class TestGuards(unittest.TestCase):
    def test_degree_overflow(self):
        set_config(ParaprodConfig(max_degree=8))
        try:
            with self.assertRaises(DegreeOverflowError):
                apply_word('MMMMM', TaylorSeries.monomial(2), one)
        finally:
            set_config(None)


class TestDilation(unittest.TestCase):
    def test_dilated_symbol(self):
        op = GOperatorExpr.word('T')
        self.assertEqual(dilated_operator(op, z, Fraction(1, 2), one), TaylorSeries([0, Fraction(1, 2)]))

    def test_dilation_outside_disc(self):
        with self.assertRaises(DomainError):
            dilated_operator(GOperatorExpr.word('T'), z, 2, one)


if __name__ == '__main__':
    unittest.main()
