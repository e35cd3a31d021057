"""
Letter counts, the quotient/remainder basis words B(m, n, j) and the
triangular rebasing of operators with leading term S^mT^n.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import paraprod.constants as const
from paraprod.algebra.canonical import canonicalize
from paraprod.algebra.expr import GOperatorExpr, check_word
from paraprod.exceptions import AlgebraError, DomainError, ShapeError, SingularBasisError
from paraprod.series.exact import ONE, ZERO, ExactComplex


logger = logging.getLogger(__name__)


def word_class(word: str) -> Tuple[int, int, int]:
    """(#M, #S, #T)."""
    check_word(word)
    return (word.count(const.letter_multiplication), word.count(const.letter_s), word.count(const.letter_t))


@dataclass(frozen=True)
class QuotientDecomposition:
    """B(m, n, j) = (S^{q+1}T)^d (S^qT)^{n+j−d} with q = ⌊(m−j)/(n+j)⌋, d = m−j−(n+j)q."""
    m: int
    n: int
    j: int
    q: int
    d: int
    word: str

    def to_json(self) -> dict:
        return {'q': self.q, 'd': self.d, 'word': self.word}


def quotient_decompose(m: int, n: int, j: int) -> QuotientDecomposition:
    """The word with m−j S letters spread as evenly as possible over n+j T letters.

    Raises:
        DomainError: j outside [0, m], negative n, or n + j = 0.
    """
    if m < 0 or n < 0 or not 0 <= j <= m:
        raise DomainError(f'need 0 <= j <= m and n >= 0, got m={m}, n={n}, j={j}')
    if n + j == 0:
        raise DomainError('n + j must be positive (division by zero)')
    q, d = divmod(m - j, n + j)
    s, t = const.letter_s, const.letter_t
    word = (s * (q + 1) + t) * d + (s * q + t) * (n + j - d)
    return QuotientDecomposition(m, n, j, q, d, word)


def quotient_basis(m: int, n: int) -> List[str]:
    """[B(m, n, 0), ..., B(m, n, m)]."""
    return [quotient_decompose(m, n, j).word for j in range(m + 1)]


def _as_expr(item: Union[str, GOperatorExpr]) -> GOperatorExpr:
    return GOperatorExpr.word(item) if isinstance(item, str) else item


def _graded_coefficients(op: GOperatorExpr, m: int, n: int, what: str) -> List[ExactComplex]:
    """Coefficients of S^{m−i}T^{n+i}, i = 0..m, checking the graded shape."""
    form = canonicalize(op)
    if form.s_poly or form.pi0_coeff:
        raise ShapeError(f'{what} has pure-S or identity terms on H0')
    coeffs = [ZERO] * (m + 1)
    for (a, b), c in form.st_terms.items():
        i = m - a
        if a + b != m + n or not 0 <= i <= m:
            raise ShapeError(f'{what} has a term S^{a}T^{b} outside the grade S^(m-j)T^(n+j)')
        coeffs[i] = c
    return coeffs


def rebase(op: GOperatorExpr, basis: Optional[Sequence[Union[str, GOperatorExpr]]] = None,
           m: Optional[int] = None, n: Optional[int] = None) -> List[ExactComplex]:
    """Coefficients a_1..a_m with op = B_0 + Σ a_j B_j on H₀.

    m and n default to the leading term S^mT^n of op; basis defaults to the
    quotient/remainder words for (m, n).

    Raises:
        ShapeError: op or a basis element is not of the graded shape, or the
            leading coefficient of op is not 1.
        SingularBasisError: the basis matrix is not triangular with nonzero diagonal.
    """
    if m is None or n is None:
        lead = canonicalize(op).leading_term()
        if lead is None:
            raise ShapeError(f'{op} has no S^mT^n term')
        m, n = lead
    basis = quotient_basis(m, n) if basis is None else list(basis)
    if len(basis) != m + 1:
        raise ShapeError(f'basis needs {m + 1} elements for m = {m}, got {len(basis)}')

    target = _graded_coefficients(op, m, n, 'operator')
    if target[0] != ONE:
        raise ShapeError(f'leading coefficient of S^{m}T^{n} must be 1, got {target[0]}')
    rows = [_graded_coefficients(_as_expr(b), m, n, f'basis element {j}') for j, b in enumerate(basis)]
    for j, row in enumerate(rows):
        if not row[j] or any(row[i] for i in range(j)):
            raise SingularBasisError(f'basis element {j} does not have leading term S^{m - j}T^{n + j}')

    # forward substitution: target_i = Σ_{j<=i} a_j rows[j][i]
    a = [ZERO] * (m + 1)
    for i in range(m + 1):
        residual = target[i]
        for j in range(i):
            residual = residual - a[j] * rows[j][i]
        a[i] = residual / rows[i][i]
    if a[0] != ONE:
        raise ShapeError(f'the leading basis element enters with coefficient {a[0]}, not 1')

    check = GOperatorExpr.zero()
    for j, b in enumerate(basis):
        check = check + _as_expr(b).scale(a[j])
    if not canonicalize(check).equal_on_h0(canonicalize(op)):
        raise AlgebraError('rebased combination does not reproduce the operator')
    logger.debug(f'rebase {op} on {basis}: {[str(c) for c in a[1:]]}')
    return a[1:]
