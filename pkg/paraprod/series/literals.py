"""
JSON codec for series and complex numbers.

A series literal is an array of [re, im] pairs (index = degree). Entries may be
numbers or "p/q" strings; ints and strings select the exact backend. Named
families are given as objects:

    {"family": "log", "cap": 512}
    {"family": "binomial", "s": 0.5, "cap": 256}
    {"family": "kernel", "xi": [0.5, 0], "eta": 2, "p": 2, "weight": {...}, "cap": 256}
    {"coeffs": [[1, 0], [0, 1]], "cap": 64}   (truncation of a given prefix)
"""

import json
from typing import Optional

from paraprod.config import get_config
from paraprod.exceptions import LiteralError
from paraprod.series.exact import ExactComplex
from paraprod.series.functions import binomial_series, doubling_kernel, log_series
from paraprod.series.taylor import Backend, Exactness, TaylorSeries


def _load(obj):
    if isinstance(obj, str):
        try:
            return json.loads(obj)
        except json.JSONDecodeError as e:
            raise LiteralError(f'malformed JSON: {e}') from e
    return obj


def parse_complex(obj):
    """Number, "p/q" string or [re, im] pair; exact values give ExactComplex, others complex."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError:
            pass
    if ExactComplex.is_exact_value(obj):
        return ExactComplex.coerce(obj)
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise LiteralError(f'complex literal must be a [re, im] pair: {obj!r}')
        try:
            return complex(float(obj[0]), float(obj[1]))
        except (TypeError, ValueError) as e:
            raise LiteralError(f'malformed complex literal {obj!r}') from e
    if isinstance(obj, (int, float, complex)) and not isinstance(obj, bool):
        return complex(obj)
    raise LiteralError(f'malformed complex literal {obj!r}')


def _entries(items, exact: Optional[bool]):
    if not isinstance(items, list):
        raise LiteralError(f'series literal must be an array, got {type(items).__name__}')
    values = []
    for k, item in enumerate(items):
        if isinstance(item, (list, tuple)) and len(item) != 2:
            raise LiteralError(f'coefficient {k} must be a [re, im] pair, got {item!r}')
        if isinstance(item, bool) or item is None or isinstance(item, dict):
            raise LiteralError(f'coefficient {k} is not a number: {item!r}')
        values.append(item)
    if exact is None:
        exact = all(ExactComplex.is_exact_value(v) for v in values)
    if exact:
        try:
            return [ExactComplex.coerce(v) for v in values], Backend.EXACT
        except (TypeError, ValueError) as e:
            raise LiteralError(f'malformed exact coefficient: {e}') from e
    try:
        return [complex(parse_complex(v)) for v in values], Backend.FLOAT
    except (TypeError, ValueError) as e:
        raise LiteralError(f'malformed coefficient: {e}') from e


def _family(obj: dict) -> TaylorSeries:
    family = obj['family']
    cap = int(obj.get('cap', get_config().default_cap))
    exact = bool(obj.get('exact', False))
    if family == 'log':
        return log_series(cap, exact=exact)
    if family == 'binomial':
        if 's' not in obj:
            raise LiteralError('binomial family needs an exponent "s"')
        return binomial_series(float(obj['s']), cap, exact=exact)
    if family == 'kernel':
        from paraprod.weights import RadialWeightDescriptor
        missing = [key for key in ('xi', 'eta', 'p', 'weight') if key not in obj]
        if missing:
            raise LiteralError(f'kernel family is missing: {", ".join(missing)}')
        weight = RadialWeightDescriptor.from_json(obj['weight'])
        return doubling_kernel(complex(parse_complex(obj['xi'])), float(obj['eta']), float(obj['p']),
                               weight, cap)
    raise LiteralError(f'unknown series family "{family}" (expected log, binomial or kernel)')


def parse_series(obj, exact: Optional[bool] = None) -> TaylorSeries:
    """Builds a TaylorSeries from its JSON literal.

    Raises:
        LiteralError: malformed literal.
    """
    obj = _load(obj)
    if isinstance(obj, dict):
        if 'family' in obj:
            try:
                return _family(obj)
            except (TypeError, ValueError) as e:
                if isinstance(e, LiteralError):
                    raise
                raise LiteralError(f'malformed series family: {e}') from e
        if 'coeffs' in obj:
            values, backend = _entries(obj['coeffs'], exact)
            if 'cap' in obj:
                return TaylorSeries(values, cap=int(obj['cap']), exactness=Exactness.TRUNCATED, backend=backend)
            return TaylorSeries(values, backend=backend)
        raise LiteralError('series object needs "family" or "coeffs"')
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        obj = [obj]
    values, backend = _entries(obj, exact)
    return TaylorSeries(values, backend=backend)


def series_to_json(f: TaylorSeries) -> list:
    """[re, im] pairs; "p/q" strings for the exact backend."""
    if f.is_exact:
        return [c.to_json() for c in f.coeffs]
    return [[float(c.real), float(c.imag)] for c in f.coeffs]


def complex_to_json(z) -> list:
    if isinstance(z, ExactComplex):
        return z.to_json()
    z = complex(z)
    return [z.real, z.imag]
