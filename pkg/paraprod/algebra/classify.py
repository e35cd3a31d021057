"""Boundedness conditions on the symbol for two-letter g-words."""

from enum import Enum

from paraprod.algebra.decompose import word_class
from paraprod.exceptions import DomainError


class SymbolClass(str, Enum):
    H_INFINITY = 'H_infinity'
    BLOCH_TYPE = 'T(A^p_omega)'
    G_SQUARED_BLOCH_TYPE = 'g^2 in T(A^p_omega)'


_bounded_multiplier_words = {'MM', 'MS', 'SM', 'SS'}
# ST = TM = ½T_{g²}; MT = ST + TT and TS = ST − TT on H₀
_g_squared_words = {'ST', 'TM', 'MT', 'TS'}


def two_letter_class(word: str) -> SymbolClass:
    """Condition on g for the two-letter word to be bounded on A^p_ω, ω radial.

    MM, MS, SM and SS need g ∈ H^∞. ST, TM, MT and TS are bounded exactly
    when T_{g²} is, that is g² in the Bloch-type space T(A^p_ω). TT is
    bounded exactly when T_g is, so it needs g ∈ T(A^p_ω).

    Raises:
        DomainError: word does not have two letters.
    """
    word_class(word)
    if len(word) != 2:
        raise DomainError(f'two-letter word expected, got "{word}"')
    if word in _bounded_multiplier_words:
        return SymbolClass.H_INFINITY
    if word in _g_squared_words:
        return SymbolClass.G_SQUARED_BLOCH_TYPE
    return SymbolClass.BLOCH_TYPE
