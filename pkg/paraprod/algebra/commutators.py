"""Iterated commutators [L, T]_k."""

import paraprod.constants as const
from paraprod.algebra.expr import GOperatorExpr
from paraprod.exceptions import DomainError


def commutator(a: GOperatorExpr, b: GOperatorExpr) -> GOperatorExpr:
    """[A, B] = AB − BA."""
    return a * b - b * a


def commutator_iter(op: GOperatorExpr, k: int) -> GOperatorExpr:
    """[L, T]_0 = L, [L, T]_{k+1} = [L, T]_k T − T [L, T]_k.

    Raises:
        DomainError: k < 0.
        TermExplosionError: more terms than max_terms.
    """
    if k < 0:
        raise DomainError(f'commutator order must be >= 0, got {k}')
    t = GOperatorExpr.word(const.letter_t)
    result = op
    for _ in range(k):
        result = commutator(result, t)
    return result
