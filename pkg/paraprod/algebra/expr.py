"""
Formal g-operators: linear combinations of words over {M, S, T} plus a
rank-one part P(g₀, g(0))·δ₀.

Words are plain strings read left to right as operator products, so "ST"
applies T first. The empty word is the identity. An expression acts as

    L f = Σ c_w W_w f + P(g₀, g(0))·f(0)

where P is a polynomial in x = g₀ = g − g(0) and y = g(0).
"""

import json
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

import paraprod.constants as const
from paraprod.config import get_config
from paraprod.exceptions import LiteralError, TermExplosionError
from paraprod.series.exact import ONE, ZERO, ExactComplex


Monomial = Tuple[int, int]
Coefficient = Union[ExactComplex, int, str]

_letter_set = frozenset(const.letters)


def check_word(word: str) -> str:
    """Validates a word over {M, S, T}.

    Raises:
        LiteralError: other letters.
    """
    if not isinstance(word, str):
        raise LiteralError(f'a word must be a string, got {word!r}')
    bad = set(word) - _letter_set
    if bad:
        raise LiteralError(f'word "{word}" contains letters outside M, S, T: {"".join(sorted(bad))}')
    return word


def check_term_count(n: int):
    limit = get_config().max_terms
    if n > limit:
        raise TermExplosionError(f'{n} intermediate terms exceed the limit of {limit}')


def _merge(target: Dict, key, coeff: ExactComplex):
    value = target.get(key, ZERO) + coeff
    if value:
        target[key] = value
    else:
        target.pop(key, None)


class BivariatePoly:
    """Polynomial Σ c_{k,j} x^k y^j with exact coefficients, x = g₀ and y = g(0)."""

    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Mapping[Monomial, Coefficient]] = None):
        merged = {}
        for (k, j), c in (terms or {}).items():
            if k < 0 or j < 0:
                raise LiteralError(f'negative exponent in rank-one monomial ({k}, {j})')
            _merge(merged, (int(k), int(j)), ExactComplex.coerce(c))
        self.terms: Dict[Monomial, ExactComplex] = merged

    @classmethod
    def constant(cls, c: Coefficient = 1) -> 'BivariatePoly':
        return cls({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other: 'BivariatePoly') -> 'BivariatePoly':
        result = dict(self.terms)
        for key, c in other.terms.items():
            _merge(result, key, c)
        return BivariatePoly(result)

    def __neg__(self) -> 'BivariatePoly':
        return BivariatePoly({key: -c for key, c in self.terms.items()})

    def __sub__(self, other: 'BivariatePoly') -> 'BivariatePoly':
        return self + (-other)

    def scale(self, c: Coefficient) -> 'BivariatePoly':
        c = ExactComplex.coerce(c)
        return BivariatePoly({key: c * v for key, v in self.terms.items()})

    def __mul__(self, other: 'BivariatePoly') -> 'BivariatePoly':
        result = {}
        for (k1, j1), c1 in self.terms.items():
            for (k2, j2), c2 in other.terms.items():
                _merge(result, (k1 + k2, j1 + j2), c1 * c2)
        return BivariatePoly(result)

    def apply_letter(self, letter: str) -> 'BivariatePoly':
        """The letter's operator applied to P(g₀, g(0)), again as a polynomial.

        T x^k y^j = x^{k+1} y^j/(k+1); S x^k y^j = k/(k+1)·x^{k+1} y^j + [k ≥ 1]·x^k y^{j+1};
        M x^k y^j = x^{k+1} y^j + x^k y^{j+1}.
        """
        result = {}
        for (k, j), c in self.terms.items():
            if letter == const.letter_t:
                _merge(result, (k + 1, j), c / (k + 1))
            elif letter == const.letter_s:
                if k >= 1:
                    _merge(result, (k + 1, j), c * k / (k + 1))
                    _merge(result, (k, j + 1), c)
            elif letter == const.letter_multiplication:
                _merge(result, (k + 1, j), c)
                _merge(result, (k, j + 1), c)
            else:
                raise LiteralError(f'unknown letter "{letter}"')
        return BivariatePoly(result)

    def apply_word(self, word: str) -> 'BivariatePoly':
        poly = self
        for letter in reversed(word):
            poly = poly.apply_letter(letter)
        return poly

    def at_x_zero(self) -> 'BivariatePoly':
        """P(0, y)."""
        return BivariatePoly({key: c for key, c in self.terms.items() if key[0] == 0})

    def to_json(self) -> list:
        return [[k, j, c.to_json()] for (k, j), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, obj) -> 'BivariatePoly':
        if not isinstance(obj, list):
            raise LiteralError(f'rank-one part must be a list of [k, j, coeff], got {obj!r}')
        terms = {}
        for item in obj:
            if not isinstance(item, list) or len(item) != 3:
                raise LiteralError(f'rank-one monomial must be [k, j, coeff], got {item!r}')
            k, j, c = item
            if not isinstance(k, int) or not isinstance(j, int):
                raise LiteralError(f'rank-one exponents must be integers, got {item!r}')
            c = ExactComplex.coerce(c)
            terms[(k, j)] = terms.get((k, j), ZERO) + c
        return cls(terms)

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for (k, j), c in sorted(self.terms.items()):
            factors = [f'x^{k}' if k > 1 else 'x' if k == 1 else '', f'y^{j}' if j > 1 else 'y' if j == 1 else '']
            body = ''.join(factors)
            parts.append(f'({c})' + (f'*{body}' if body else ''))
        return ' + '.join(parts)

    def __repr__(self):
        return f'BivariatePoly({self})'


def _m_prefix_power(word: str) -> Optional[int]:
    """(W f)(0) = y^n f(0) when W = M^n; None when W f always vanishes at 0."""
    if set(word) <= {const.letter_multiplication}:
        return len(word)
    return None


class GOperatorExpr:
    """Immutable linear combination of g-words with a rank-one part.

    Args:
        terms: mapping word -> coefficient, or iterable of (coefficient, word).
            Duplicate words are merged and zero coefficients dropped.
        rank_one: the polynomial P of the part P(g₀, g(0))·δ₀.

    Raises:
        LiteralError: words with letters other than M, S, T.
        TermExplosionError: more terms than max_terms.
    """

    __slots__ = ('terms', 'rank_one')

    def __init__(self, terms: Union[Mapping[str, Coefficient], Iterable[Tuple[Coefficient, str]], None] = None,
                 rank_one: Optional[BivariatePoly] = None):
        if terms is None:
            items = []
        elif isinstance(terms, Mapping):
            items = [(c, w) for w, c in terms.items()]
        else:
            items = list(terms)
        merged = {}
        for c, w in items:
            _merge(merged, check_word(w), ExactComplex.coerce(c))
        check_term_count(len(merged))
        object.__setattr__(self, 'terms', merged)
        object.__setattr__(self, 'rank_one', rank_one if rank_one is not None else BivariatePoly())

    def __setattr__(self, name, value):
        raise AttributeError('GOperatorExpr is immutable')

    # constructors

    @classmethod
    def word(cls, word: str, coeff: Coefficient = 1) -> 'GOperatorExpr':
        return cls({word: coeff})

    @classmethod
    def identity(cls) -> 'GOperatorExpr':
        return cls({'': 1})

    @classmethod
    def zero(cls) -> 'GOperatorExpr':
        return cls()

    @classmethod
    def delta0(cls) -> 'GOperatorExpr':
        """f ↦ f(0) as a constant function."""
        return cls(rank_one=BivariatePoly.constant(1))

    @classmethod
    def pi0(cls) -> 'GOperatorExpr':
        """f ↦ f − f(0)."""
        return cls({'': 1}, rank_one=BivariatePoly.constant(-1))

    # queries

    def is_zero(self) -> bool:
        return not self.terms and self.rank_one.is_zero()

    def words(self):
        return sorted(self.terms, key=lambda w: (len(w), w))

    def words_at_one(self) -> BivariatePoly:
        """Σ c_w W_w(1) as a polynomial in g₀ and g(0)."""
        result = BivariatePoly()
        one = BivariatePoly.constant(1)
        for w, c in self.terms.items():
            result = result + one.apply_word(w).scale(c)
        return result

    def at_one(self) -> BivariatePoly:
        """L(1) = Σ c_w W_w(1) + P."""
        return self.words_at_one() + self.rank_one

    def value_at_zero_factor(self) -> BivariatePoly:
        """κ(y) with (L f)(0) = κ(g(0))·f(0) for every f."""
        result = {}
        for w, c in self.terms.items():
            n = _m_prefix_power(w)
            if n is not None:
                _merge(result, (0, n), c)
        return BivariatePoly(result) + self.rank_one.at_x_zero()

    # arithmetic

    def __eq__(self, other):
        if not isinstance(other, GOperatorExpr):
            return NotImplemented
        return self.terms == other.terms and self.rank_one == other.rank_one

    __hash__ = None

    def __add__(self, other: 'GOperatorExpr') -> 'GOperatorExpr':
        if not isinstance(other, GOperatorExpr):
            return NotImplemented
        items = [(c, w) for w, c in self.terms.items()] + [(c, w) for w, c in other.terms.items()]
        return GOperatorExpr(items, self.rank_one + other.rank_one)

    def __neg__(self) -> 'GOperatorExpr':
        return self.scale(-1)

    def __sub__(self, other: 'GOperatorExpr') -> 'GOperatorExpr':
        if not isinstance(other, GOperatorExpr):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Coefficient) -> 'GOperatorExpr':
        c = ExactComplex.coerce(c)
        return GOperatorExpr({w: c * v for w, v in self.terms.items()}, self.rank_one.scale(c))

    def compose(self, other: 'GOperatorExpr') -> 'GOperatorExpr':
        """self ∘ other, including the rank-one interactions.

        With A f = Σ a_u U f + P_A f(0) and B f = Σ b_v V f + P_B f(0):
        A(B f) = Σ a_u b_v UV f + f(0)·(Σ a_u U(P_B) + P_A·κ_B).
        """
        check_term_count(len(self.terms) * max(len(other.terms), 1))
        items = [(a * b, u + v) for u, a in self.terms.items() for v, b in other.terms.items()]
        rank_one = self.rank_one * other.value_at_zero_factor()
        for u, a in self.terms.items():
            rank_one = rank_one + other.rank_one.apply_word(u).scale(a)
        return GOperatorExpr(items, rank_one)

    def __mul__(self, other):
        if isinstance(other, GOperatorExpr):
            return self.compose(other)
        if isinstance(other, (int, Fraction, ExactComplex)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, GOperatorExpr):
            return other.compose(self)
        if isinstance(other, (int, Fraction, ExactComplex)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> 'GOperatorExpr':
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = GOperatorExpr.identity()
        for _ in range(n):
            result = result * self
        return result

    # codec

    def to_json(self) -> dict:
        obj = {'terms': [{'coeff': self.terms[w].to_json(), 'word': w} for w in self.words()]}
        if not self.rank_one.is_zero():
            obj['rank_one'] = self.rank_one.to_json()
        return obj

    @classmethod
    def from_json(cls, obj) -> 'GOperatorExpr':
        """Reads [{"coeff": c, "word": w}, ...] or {"terms": [...], "rank_one": [[k, j, c], ...]}."""
        rank_one = None
        if isinstance(obj, dict):
            if 'terms' not in obj:
                raise LiteralError('operator object needs "terms"')
            if 'rank_one' in obj:
                rank_one = BivariatePoly.from_json(obj['rank_one'])
            obj = obj['terms']
        if not isinstance(obj, list):
            raise LiteralError(f'operator literal must be a list of terms, got {type(obj).__name__}')
        items = []
        for term in obj:
            if isinstance(term, str):
                items.append((1, term))
                continue
            if not isinstance(term, dict) or 'word' not in term:
                raise LiteralError(f'operator term must be {{"coeff": ..., "word": ...}}, got {term!r}')
            items.append((ExactComplex.coerce(term.get('coeff', 1)), term['word']))
        return cls(items, rank_one)

    def __str__(self):
        parts = []
        for w in self.words():
            c = self.terms[w]
            name = w or 'I'
            parts.append(name if c == ONE else f'-{name}' if c == -ONE else f'({c})*{name}')
        if not self.rank_one.is_zero():
            parts.append(f'[{self.rank_one}]*delta0')
        return ' + '.join(parts).replace('+ -', '- ') if parts else '0'

    def __repr__(self):
        return f'GOperatorExpr({self})'


_token = re.compile(r'\s*([+-])?\s*(?:(\d+(?:\.\d+)?(?:/\d+)?)\s*\*?\s*)?(delta0|pi0|I|[MST]+)\s*')


def parse_expr(text) -> GOperatorExpr:
    """Builds a GOperatorExpr from a JSON literal or a sum such as "M - S - T" or "ST - 1/2*TT".

    Atoms are words over M, S, T, "I" (identity), "delta0" and "pi0";
    coefficients are rationals written as integers, decimals or p/q.

    Raises:
        LiteralError: malformed text.
    """
    if isinstance(text, (list, dict)):
        return GOperatorExpr.from_json(text)
    if not isinstance(text, str):
        raise LiteralError(f'cannot parse an operator from {text!r}')
    stripped = text.strip()
    if stripped.startswith('"'):
        try:
            return parse_expr(json.loads(stripped))
        except json.JSONDecodeError as e:
            raise LiteralError(f'malformed operator JSON: {e}') from e
    if stripped.startswith('[') or stripped.startswith('{'):
        try:
            return GOperatorExpr.from_json(json.loads(stripped))
        except json.JSONDecodeError as e:
            raise LiteralError(f'malformed operator JSON: {e}') from e
    if not stripped:
        raise LiteralError('empty operator expression')

    result = GOperatorExpr.zero()
    pos = 0
    first = True
    while pos < len(stripped):
        match = _token.match(stripped, pos)
        if match is None or match.end() == pos:
            raise LiteralError(f'cannot parse operator expression at "{stripped[pos:]}"')
        sign, coeff, atom = match.groups()
        if sign is None and not first:
            raise LiteralError(f'missing + or - before "{atom}" in "{stripped}"')
        c = ExactComplex.coerce(coeff) if coeff else ONE
        if sign == '-':
            c = -c
        if atom == 'delta0':
            term = GOperatorExpr.delta0()
        elif atom == 'pi0':
            term = GOperatorExpr.pi0()
        elif atom == 'I':
            term = GOperatorExpr.identity()
        else:
            term = GOperatorExpr.word(atom)
        result = result + term.scale(c)
        pos = match.end()
        first = False
    return result
