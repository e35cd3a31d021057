"""Deciding equality of g-operators on H₀."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from paraprod.algebra.canonical import canonicalize
from paraprod.algebra.expr import GOperatorExpr
from paraprod.series.functions import random_exact_polynomial
from paraprod.series.literals import series_to_json
from paraprod.series.taylor import TaylorSeries


logger = logging.getLogger(__name__)


@dataclass
class EqualityResult:
    equal: bool
    canonical_equal: bool
    witness: Optional[dict] = None

    def __bool__(self):
        return self.equal

    def to_json(self) -> dict:
        obj = {'equal': self.equal, 'canonical_equal': self.canonical_equal}
        if self.witness is not None:
            obj['witness'] = self.witness
        return obj


def random_h0_pairs(seed: int = 0, count: int = 10, degree: int = 5) -> List[Tuple[TaylorSeries, TaylorSeries]]:
    """(g, f) pairs with f(0) = 0: first (z, z), then random Gaussian-integer polynomials."""
    rng = np.random.default_rng(seed)
    z = TaylorSeries.monomial(1)
    pairs = [(z, z)]
    while len(pairs) < count:
        g = random_exact_polynomial(rng, int(rng.integers(1, degree + 1)))
        f = random_exact_polynomial(rng, int(rng.integers(1, degree + 1)), vanish_at_zero=True)
        pairs.append((g, f))
    return pairs


def equal_on_H0(a: GOperatorExpr, b: GOperatorExpr, seed: int = 0, count: int = 10,
                degree: int = 5) -> EqualityResult:
    """True iff the canonical forms agree on H₀ and exact application agrees on the test pairs.

    On disagreement the first pair with different outputs is returned as the witness.
    """
    from paraprod.paraproducts import apply_operator

    canonical_equal = canonicalize(a).equal_on_h0(canonicalize(b))
    for g, f in random_h0_pairs(seed, count, degree):
        lhs = apply_operator(a, g, f)
        rhs = apply_operator(b, g, f)
        if lhs != rhs:
            if canonical_equal:
                logger.error(f'canonical forms of {a} and {b} agree but application differs')
            witness = {'g': series_to_json(g), 'f': series_to_json(f),
                       'lhs': series_to_json(lhs), 'rhs': series_to_json(rhs)}
            return EqualityResult(False, canonical_equal, witness)
    if not canonical_equal:
        logger.warning(f'canonical forms of {a} and {b} differ but no test pair separates them')
    return EqualityResult(canonical_equal, canonical_equal)
