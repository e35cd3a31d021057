"""
Exact identities between paraproducts, checked on random Gaussian-integer data.

Each check draws its own symbol and test function from the generator and
returns an IdentityCase. Functions in H₀ are drawn with f(0) = 0.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from paraprod.paraproducts import apply_M, apply_S, apply_T, apply_word
from paraprod.series.exact import ExactComplex
from paraprod.series.functions import gaussian_integer, random_exact_polynomial
from paraprod.series.literals import complex_to_json, series_to_json
from paraprod.series.taylor import TaylorSeries


symbol_degree = 4
function_degree = 4


@dataclass
class IdentityCase:
    kind: str
    passed: bool
    details: Dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {'kind': self.kind, 'passed': self.passed, **self.details}


def _symbol(rng) -> TaylorSeries:
    return random_exact_polynomial(rng, int(rng.integers(1, symbol_degree + 1)))


def _h0_function(rng) -> TaylorSeries:
    return random_exact_polynomial(rng, int(rng.integers(1, function_degree + 1)), vanish_at_zero=True)


def _case(kind: str, lhs: TaylorSeries, rhs: TaylorSeries, **inputs) -> IdentityCase:
    passed = lhs == rhs
    details = {key: series_to_json(value) if isinstance(value, TaylorSeries) else value
               for key, value in inputs.items()}
    if not passed:
        details.update({'lhs': series_to_json(lhs), 'rhs': series_to_json(rhs)})
    return IdentityCase(kind, passed, details)


def multiplication_split(rng) -> IdentityCase:
    """M_g f = S_g f + T_g f for f ∈ H₀."""
    g, f = _symbol(rng), _h0_function(rng)
    return _case('M=S+T', apply_M(g, f), apply_S(g, f) + apply_T(g, f), g=g, f=f)


def ts_reordering(rng) -> IdentityCase:
    """T_gS_g f = S_gT_g f − T_g²f for f ∈ H₀."""
    g, f = _symbol(rng), _h0_function(rng)
    return _case('TS=ST-TT', apply_word('TS', g, f), apply_word('ST', g, f) - apply_word('TT', g, f), g=g, f=f)


def t_powers(rng) -> IdentityCase:
    """n!Tⁿ1 = g₀ⁿ and (n+1)!Tⁿg₀ = g₀^{n+1}, n ≤ 6."""
    g = _symbol(rng)
    n = int(rng.integers(1, 7))
    g0 = g.pi0()
    word = 'T' * n
    first = _case('n!T^n1=g0^n', apply_word(word, g, TaylorSeries.one()).scale(math.factorial(n)), g0 ** n,
                  g=g, n=n)
    if not first.passed:
        return first
    return _case('n!T^n1=g0^n', apply_word(word, g, g0).scale(math.factorial(n + 1)), g0 ** (n + 1), g=g, n=n)


def s_power_t(rng) -> IdentityCase:
    """S_g^{n−1}T_g f = (1/n)T_{gⁿ} f, n ≤ 5."""
    g = _symbol(rng)
    f = random_exact_polynomial(rng, int(rng.integers(0, function_degree + 1)))
    n = int(rng.integers(1, 6))
    lhs = apply_word('S' * (n - 1) + 'T', g, f)
    rhs = apply_T(g ** n, f).scale(Fraction(1, n))
    return _case('S^(n-1)T=T_(g^n)/n', lhs, rhs, g=g, f=f, n=n)


def _gaussian_rational(rng) -> ExactComplex:
    numerator = gaussian_integer(rng, 5)
    return ExactComplex(Fraction(numerator.re, int(rng.integers(1, 6))),
                        Fraction(numerator.im, int(rng.integers(1, 6))))


def symbol_shift(rng) -> IdentityCase:
    """Moving the symbol by a constant λ, for f ∈ H₀.

    On H₀ the shift acts as S_{g+λ} = S_g + λI and T_{g+λ} = T_g, so a word
    expands into powers of λ and the squared term keeps its λ²I part:

        S²_{g+λ} = S_g² + 2λS_g + λ²I,
        T_{g+λ} = T_g,
        S_{g+λ}T_{g+λ} = S_gT_g + λT_g.
    """
    g, f = _symbol(rng), _h0_function(rng)
    lam = _gaussian_rational(rng)
    shifted = g + TaylorSeries.constant(lam)
    inputs = {'g': g, 'f': f, 'lambda': complex_to_json(lam)}
    checks = [
        (apply_word('SS', shifted, f),
         apply_word('SS', g, f) + apply_S(g, f).scale(lam * 2) + f.scale(lam * lam)),
        (apply_T(shifted, f), apply_T(g, f)),
        (apply_word('ST', shifted, f) - apply_T(shifted, f).scale(lam), apply_word('ST', g, f))
    ]
    for lhs, rhs in checks:
        case = _case('shift', lhs, rhs, **inputs)
        if not case.passed:
            return case
    return case


identity_checks: Dict[str, Callable] = {
    'M=S+T': multiplication_split,
    'TS=ST-TT': ts_reordering,
    'n!T^n1=g0^n': t_powers,
    'S^(n-1)T=T_(g^n)/n': s_power_t,
    'shift': symbol_shift
}

identity_kinds: List[str] = list(identity_checks)


def run_identity(index: int, rng) -> IdentityCase:
    """The index-th case of the round-robin over the identity kinds."""
    return identity_checks[identity_kinds[index % len(identity_kinds)]](rng)


def case_generator(seed: int, index: int):
    """Independent generator for case index under seed."""
    return np.random.default_rng([seed, index])
