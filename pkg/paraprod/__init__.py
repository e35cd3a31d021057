from paraprod.series import ExactComplex, TaylorSeries, parse_series
from paraprod.weights import RadialWeightDescriptor
from paraprod.algebra import CanonicalSTForm, GOperatorExpr, canonicalize, parse_expr
from paraprod.paraproducts import Symbol, apply_M, apply_S, apply_T, apply_operator, apply_word


def load_weight(descriptor) -> RadialWeightDescriptor:
    """RadialWeightDescriptor from a JSON object such as '{"kind":"standard","alpha":1}'."""
    return RadialWeightDescriptor.from_json(descriptor)


__all__ = [
    'CanonicalSTForm',
    'ExactComplex',
    'GOperatorExpr',
    'RadialWeightDescriptor',
    'Symbol',
    'TaylorSeries',
    'apply_M',
    'apply_S',
    'apply_T',
    'apply_operator',
    'apply_word',
    'canonicalize',
    'load_weight',
    'parse_expr',
    'parse_series'
]
