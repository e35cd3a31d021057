"""
Canonical ST-forms of g-operators.

Every g-operator L acts as L f = L(Π₀f) + f(0)·L(1). On H₀ the rewrite rules

    M → S + T,    TS → ST − TT

are valid, so the word part of L restricted to H₀ reduces to a combination
of S^aT^b. The canonical form keeps those terms (b ≥ 1), the pure-S
polynomial (a ≥ 1, b = 0), the identity coefficient on H₀ and the rank-one
polynomial L(1) = P(g₀, g(0)):

    L f = [Σ c_{a,b} S^aT^b + Q(S) + c·I](Π₀f) + P(g₀, g(0))·f(0)
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Tuple

import paraprod.constants as const
from paraprod.algebra.expr import BivariatePoly, GOperatorExpr, check_term_count
from paraprod.series.exact import ONE, ZERO, ExactComplex


logger = logging.getLogger(__name__)


def st_word(a: int, b: int) -> str:
    """The word S^aT^b."""
    return const.letter_s * a + const.letter_t * b


@dataclass
class CanonicalSTForm:
    """Σ c_{a,b} S^aT^b (b ≥ 1) + Q(S) + pi0_coeff·I on H₀, plus the rank-one part."""
    st_terms: Dict[Tuple[int, int], ExactComplex] = field(default_factory=dict)
    s_poly: Dict[int, ExactComplex] = field(default_factory=dict)
    pi0_coeff: ExactComplex = ZERO
    rank_one: BivariatePoly = field(default_factory=BivariatePoly)

    def is_trivial(self) -> bool:
        """True when only the rank-one evaluation part is left."""
        return not self.st_terms and not self.s_poly and not self.pi0_coeff

    def equal_on_h0(self, other: 'CanonicalSTForm') -> bool:
        return (self.st_terms == other.st_terms and self.s_poly == other.s_poly
                and self.pi0_coeff == other.pi0_coeff)

    def leading_term(self):
        """(a, b) of the st-term with the most S letters, or None."""
        if not self.st_terms:
            return None
        return max(self.st_terms, key=lambda ab: (ab[0], -ab[1]))

    def h0_expr(self) -> GOperatorExpr:
        """The word part acting on H₀, without any rank-one correction."""
        items = [(c, st_word(a, b)) for (a, b), c in self.st_terms.items()]
        items += [(c, st_word(a, 0)) for a, c in self.s_poly.items()]
        if self.pi0_coeff:
            items.append((self.pi0_coeff, ''))
        return GOperatorExpr(items)

    def to_expr(self) -> GOperatorExpr:
        """An expression acting like this form on every f (X Π₀ = X − X(1)δ₀)."""
        words = self.h0_expr()
        return GOperatorExpr(words.terms, self.rank_one - words.words_at_one())

    def to_json(self) -> dict:
        return {
            'st_terms': [{'coeff': c.to_json(), 'a': a, 'b': b} for (a, b), c in sorted(self.st_terms.items())],
            's_poly': [{'coeff': c.to_json(), 'a': a} for a, c in sorted(self.s_poly.items())],
            'pi0_coeff': self.pi0_coeff.to_json(),
            'rank_one': self.rank_one.to_json(),
            'trivial': self.is_trivial()
        }

    def __str__(self):
        return str(self.h0_expr()) + (f' + [{self.rank_one}]*delta0' if not self.rank_one.is_zero() else '')


def _add_into(target: Dict, source, scale: ExactComplex):
    for key, c in source:
        value = target.get(key, ZERO) + scale * c
        if value:
            target[key] = value
        else:
            target.pop(key, None)


@lru_cache(maxsize=65536)
def word_normal_form(word: str) -> Tuple[Tuple[Tuple[int, int], ExactComplex], ...]:
    """S^aT^b expansion of a word on H₀, as sorted ((a, b), coeff) pairs.

    All M letters are eliminated first, then the leftmost TS is rewritten.
    Each step lowers (#M, #S, #TS-inversions) lexicographically.

    Raises:
        TermExplosionError: more intermediate terms than max_terms.
    """
    result = {}
    if const.letter_multiplication in word:
        i = word.index(const.letter_multiplication)
        _add_into(result, word_normal_form(word[:i] + const.letter_s + word[i + 1:]), ONE)
        _add_into(result, word_normal_form(word[:i] + const.letter_t + word[i + 1:]), ONE)
    else:
        i = word.find(const.letter_t + const.letter_s)
        if i < 0:
            return (((word.count(const.letter_s), word.count(const.letter_t)), ONE),)
        _add_into(result, word_normal_form(word[:i] + 'ST' + word[i + 2:]), ONE)
        _add_into(result, word_normal_form(word[:i] + 'TT' + word[i + 2:]), -ONE)
    check_term_count(len(result))
    return tuple(sorted(result.items()))


def canonicalize(op: GOperatorExpr) -> CanonicalSTForm:
    """Canonical ST-form of a g-operator.

    Raises:
        TermExplosionError: more intermediate terms than max_terms.
    """
    combined = {}
    for word in op.words():
        _add_into(combined, word_normal_form(word), op.terms[word])
        check_term_count(len(combined))

    form = CanonicalSTForm(rank_one=op.at_one())
    for (a, b), c in combined.items():
        if b >= 1:
            form.st_terms[(a, b)] = c
        elif a >= 1:
            form.s_poly[a] = c
        else:
            form.pi0_coeff = c
    logger.debug(f'canonicalize {op} -> {form}')
    return form


def is_trivial(op: GOperatorExpr) -> bool:
    return canonicalize(op).is_trivial()
