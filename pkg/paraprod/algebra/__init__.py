from paraprod.algebra.expr import BivariatePoly, GOperatorExpr, parse_expr
from paraprod.algebra.canonical import CanonicalSTForm, canonicalize, is_trivial
from paraprod.algebra.decompose import QuotientDecomposition, quotient_basis, quotient_decompose, rebase, word_class
from paraprod.algebra.commutators import commutator, commutator_iter
from paraprod.algebra.equality import EqualityResult, equal_on_H0
from paraprod.algebra.classify import SymbolClass, two_letter_class


__all__ = [
    'BivariatePoly',
    'CanonicalSTForm',
    'QuotientDecomposition',
    'EqualityResult',
    'GOperatorExpr',
    'SymbolClass',
    'canonicalize',
    'commutator',
    'commutator_iter',
    'quotient_basis',
    'quotient_decompose',
    'equal_on_H0',
    'is_trivial',
    'parse_expr',
    'rebase',
    'two_letter_class',
    'word_class'
]
