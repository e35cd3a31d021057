"""
The paraproducts M_g, S_g, T_g together with δ₀ and Π₀, acting on series.

    M_g f = f·g,    S_g f = ∫₀ᶻ f'g,    T_g f = ∫₀ᶻ f g'

Words apply right to left: apply_word("ST", g, f) = S_g(T_g f).
"""

import logging
from dataclasses import dataclass, field
from typing import Union

import paraprod.constants as const
from paraprod.algebra.expr import BivariatePoly, GOperatorExpr, check_word
from paraprod.exceptions import DegreeOverflowError
from paraprod.series.taylor import TaylorSeries, degree_limit


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Symbol:
    """A symbol g with its cached Π₀g."""
    g: TaylorSeries
    g0: TaylorSeries = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'g0', self.g.pi0())

    @property
    def value_at_zero(self):
        return self.g.value_at_zero()

    def derivative(self) -> TaylorSeries:
        cached = self.__dict__.get('_derivative')
        if cached is None:
            cached = self.g.differentiate()
            object.__setattr__(self, '_derivative', cached)
        return cached

    def dilate(self, lam) -> 'Symbol':
        return Symbol(self.g.dilate(lam))


SymbolLike = Union[Symbol, TaylorSeries]


def as_symbol(g: SymbolLike) -> Symbol:
    return g if isinstance(g, Symbol) else Symbol(g)


def apply_M(g: SymbolLike, f: TaylorSeries) -> TaylorSeries:
    """M_g f = f·g."""
    return f * as_symbol(g).g


def apply_S(g: SymbolLike, f: TaylorSeries) -> TaylorSeries:
    """S_g f = ∫₀ᶻ f'(ζ)g(ζ)dζ; vanishes at 0."""
    return (f.differentiate() * as_symbol(g).g).integrate0()


def apply_T(g: SymbolLike, f: TaylorSeries) -> TaylorSeries:
    """T_g f = ∫₀ᶻ f(ζ)g'(ζ)dζ; vanishes at 0."""
    return (f * as_symbol(g).derivative()).integrate0()


def delta0(f: TaylorSeries) -> TaylorSeries:
    """δ₀f as the constant function f(0)."""
    return TaylorSeries([f.value_at_zero()], backend=f.backend)


def pi0(f: TaylorSeries) -> TaylorSeries:
    """Π₀f = f − f(0)."""
    return f.pi0()


_letters = {
    const.letter_multiplication: apply_M,
    const.letter_s: apply_S,
    const.letter_t: apply_T
}


def _check_word_degree(word: str, symbol: Symbol, f: TaylorSeries):
    # each letter raises the degree by at most deg g
    if not (symbol.g.is_exact and f.is_exact and symbol.g.is_polynomial and f.is_polynomial):
        return
    bound = len(word) * symbol.g.degree + f.degree
    if bound > degree_limit():
        raise DegreeOverflowError(f'word of {len(word)} letters on degrees ({symbol.g.degree}, {f.degree}) '
                                  f'may reach degree {bound} > {degree_limit()}')


def apply_word(word: str, g: SymbolLike, f: TaylorSeries) -> TaylorSeries:
    """L₁⋯L_N f, applying L_N first; the empty word is the identity.

    Raises:
        LiteralError: letters other than M, S, T.
        DegreeOverflowError: exact result degree above the configured limit.
    """
    symbol = as_symbol(g)
    check_word(word)
    _check_word_degree(word, symbol, f)
    result = f
    for letter in reversed(word):
        result = _letters[letter](symbol, result)
    return result


def evaluate_rank_one(poly: BivariatePoly, g: SymbolLike) -> TaylorSeries:
    """P(g₀, g(0)) as a series."""
    symbol = as_symbol(g)
    y = symbol.value_at_zero
    result = TaylorSeries.zero()
    powers = {}
    for (k, j), c in sorted(poly.terms.items()):
        if k not in powers:
            powers[k] = symbol.g0 ** k
        scalar = c * y ** j if symbol.g.is_exact else complex(c) * complex(y) ** j
        result = result + powers[k].scale(scalar)
    return result


def apply_operator(op: GOperatorExpr, g: SymbolLike, f: TaylorSeries) -> TaylorSeries:
    """Σ c_w W_w f + P(g₀, g(0))·f(0)."""
    symbol = as_symbol(g)
    result = TaylorSeries.zero()
    for word in op.words():
        result = result + apply_word(word, symbol, f).scale(op.terms[word])
    if not op.rank_one.is_zero():
        result = result + evaluate_rank_one(op.rank_one, symbol).scale(f.value_at_zero())
    return result


def dilated_operator(op: GOperatorExpr, g: SymbolLike, lam, f: TaylorSeries) -> TaylorSeries:
    """L_{g_λ} f, the operator with the dilated symbol g_λ(z) = g(λz).

    Raises:
        DomainError: |λ| > 1.
    """
    return apply_operator(op, as_symbol(g).dilate(lam), f)
