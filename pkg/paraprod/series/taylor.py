"""
Taylor series about 0 with exact or floating point coefficients.

A TaylorSeries is either an exact polynomial or the truncation of an analytic
function at a fixed cap. Exact polynomials have no cap of their own, so their
cap is always their degree. Truncations carry their cap explicitly, and any
operation that involves a truncated operand returns a truncation at the
smallest cap involved.
"""

import logging
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Union

import numpy as np

from paraprod.config import get_config
from paraprod.exceptions import DegreeOverflowError, DomainError
from paraprod.series.exact import ExactComplex, ONE, ZERO


logger = logging.getLogger(__name__)


class Backend(str, Enum):
    """Coefficient backend."""
    EXACT = 'exact'
    FLOAT = 'float'


class Exactness(str, Enum):
    """Whether a series is a polynomial or a truncated analytic function."""
    POLYNOMIAL = 'exact-polynomial'
    TRUNCATED = 'truncation-of-analytic'


Scalar = Union[int, Fraction, float, complex, ExactComplex]


def degree_limit() -> int:
    return get_config().max_degree


def _check_degree(cap: int, backend: Backend):
    if backend == Backend.EXACT and cap > degree_limit():
        raise DegreeOverflowError(
            f'exact result of degree {cap} exceeds the limit of {degree_limit()} '
            '(set PARAPROD_MAX_DEGREE to raise it)')


def _to_complex(value) -> complex:
    if isinstance(value, (str, list, tuple)):
        return complex(ExactComplex.coerce(value))
    return complex(value)


def _infer_backend(coeffs) -> Backend:
    if isinstance(coeffs, np.ndarray):
        return Backend.FLOAT
    if all(ExactComplex.is_exact_value(c) for c in coeffs):
        return Backend.EXACT
    return Backend.FLOAT


class TaylorSeries:
    """Immutable power series c_0 + c_1 z + ... + c_N z^N.

    Args:
        coeffs: coefficients, index = degree. Ints, Fractions, "p/q" strings and
            ExactComplex values select the exact backend, floats and complex
            numbers select the float backend.
        cap: maximum retained degree. Ignored for polynomials, whose cap is
            their degree.
        exactness: Exactness.POLYNOMIAL or Exactness.TRUNCATED.
        backend: force a backend instead of inferring it from coeffs.

    Raises:
        DegreeOverflowError: exact backend with cap above the degree limit.
    """

    __slots__ = ('_coeffs', 'cap', 'exactness', 'backend')

    def __init__(self, coeffs: Iterable, cap: Optional[int] = None,
                 exactness: Exactness = Exactness.POLYNOMIAL,
                 backend: Optional[Backend] = None):
        if not isinstance(coeffs, np.ndarray):
            coeffs = list(coeffs)
        exactness = Exactness(exactness)
        backend = Backend(backend) if backend is not None else _infer_backend(coeffs)

        if backend == Backend.EXACT:
            values = [ExactComplex.coerce(c) for c in coeffs]
            if not values:
                values = [ZERO]
        else:
            if isinstance(coeffs, np.ndarray):
                values = np.array(coeffs, dtype=complex)
            else:
                values = np.array([_to_complex(c) for c in coeffs], dtype=complex)
            if values.size == 0:
                values = np.zeros(1, dtype=complex)

        if exactness == Exactness.POLYNOMIAL:
            n = len(values)
            while n > 1 and not values[n - 1]:
                n -= 1
            values = values[:n]
        else:
            if cap is None:
                cap = len(values) - 1
            if cap < 0:
                raise DomainError(f'cap must be >= 0, got {cap}')
            if len(values) > cap + 1:
                values = values[:cap + 1]
            elif len(values) < cap + 1:
                missing = cap + 1 - len(values)
                if backend == Backend.EXACT:
                    values = values + [ZERO] * missing
                else:
                    values = np.concatenate([values, np.zeros(missing, dtype=complex)])

        if backend == Backend.EXACT:
            values = tuple(values)
        else:
            values.setflags(write=False)

        object.__setattr__(self, '_coeffs', values)
        object.__setattr__(self, 'cap', len(values) - 1)
        object.__setattr__(self, 'exactness', exactness)
        object.__setattr__(self, 'backend', backend)
        _check_degree(self.cap, backend)

    def __setattr__(self, name, value):
        raise AttributeError('TaylorSeries is immutable')

    # constructors

    @classmethod
    def constant(cls, c: Scalar) -> 'TaylorSeries':
        return cls([c])

    @classmethod
    def zero(cls) -> 'TaylorSeries':
        return cls([0])

    @classmethod
    def one(cls) -> 'TaylorSeries':
        return cls([1])

    @classmethod
    def monomial(cls, k: int, coeff: Scalar = 1) -> 'TaylorSeries':
        """coeff·z^k as an exact polynomial (float if coeff is a float)."""
        if k < 0:
            raise DomainError(f'monomial degree must be >= 0, got {k}')
        return cls([0] * k + [coeff])

    @classmethod
    def truncated(cls, coeffs: Iterable, cap: int, backend: Optional[Backend] = None) -> 'TaylorSeries':
        return cls(coeffs, cap=cap, exactness=Exactness.TRUNCATED, backend=backend)

    # accessors

    @property
    def coeffs(self):
        """Coefficients c_0..c_cap (tuple of ExactComplex or read-only complex array)."""
        return self._coeffs

    @property
    def is_exact(self) -> bool:
        return self.backend == Backend.EXACT

    @property
    def is_polynomial(self) -> bool:
        return self.exactness == Exactness.POLYNOMIAL

    @property
    def degree(self) -> int:
        """Highest index with a nonzero coefficient (0 for the zero series)."""
        n = self.cap
        while n > 0 and not self._coeffs[n]:
            n -= 1
        return n

    def coeff(self, k: int):
        if 0 <= k <= self.cap:
            return self._coeffs[k]
        return ZERO if self.is_exact else 0j

    def __getitem__(self, k: int):
        return self.coeff(k)

    def __len__(self):
        return self.cap + 1

    def is_zero(self) -> bool:
        if self.is_exact:
            return not any(self._coeffs)
        return not np.any(self._coeffs)

    def value_at_zero(self):
        return self._coeffs[0]

    def vanishes_at_zero(self) -> bool:
        return not self._coeffs[0]

    def to_complex_array(self) -> np.ndarray:
        if self.is_exact:
            return np.array([complex(c) for c in self._coeffs], dtype=complex)
        return np.array(self._coeffs)

    def to_float(self) -> 'TaylorSeries':
        if not self.is_exact:
            return self
        return TaylorSeries(self.to_complex_array(), cap=self.cap,
                            exactness=self.exactness, backend=Backend.FLOAT)

    def truncate(self, cap: int) -> 'TaylorSeries':
        """Truncation of this series at cap."""
        if not self.is_polynomial:
            cap = min(cap, self.cap)
        return TaylorSeries(self._coeffs[:cap + 1], cap=cap, exactness=Exactness.TRUNCATED,
                            backend=self.backend)

    # arithmetic helpers

    def _padded(self, cap: int, backend: Backend):
        if backend == Backend.EXACT:
            values = list(self._coeffs[:cap + 1])
            if len(values) < cap + 1:
                values.extend([ZERO] * (cap + 1 - len(values)))
            return values
        values = self.to_complex_array()[:cap + 1]
        if values.size < cap + 1:
            values = np.concatenate([values, np.zeros(cap + 1 - values.size, dtype=complex)])
        return values

    def _combine_meta(self, other: 'TaylorSeries', polynomial_cap: int):
        backend = Backend.EXACT if self.is_exact and other.is_exact else Backend.FLOAT
        if self.is_polynomial and other.is_polynomial:
            return backend, Exactness.POLYNOMIAL, polynomial_cap
        caps = [s.cap for s in (self, other) if not s.is_polynomial]
        return backend, Exactness.TRUNCATED, min(caps)

    def _scalar_backend(self, c) -> Backend:
        if self.is_exact and ExactComplex.is_exact_value(c):
            return Backend.EXACT
        return Backend.FLOAT

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, TaylorSeries):
            if isinstance(other, (int, Fraction, float, complex, ExactComplex, str)):
                other = TaylorSeries([other])
            else:
                return NotImplemented
        backend, exactness, cap = self._combine_meta(other, max(self.cap, other.cap))
        a = self._padded(cap, backend)
        b = other._padded(cap, backend)
        if backend == Backend.EXACT:
            values = [x + y for x, y in zip(a, b)]
        else:
            values = a + b
        return TaylorSeries(values, cap=cap, exactness=exactness, backend=backend)

    __radd__ = __add__

    def __neg__(self):
        if self.is_exact:
            values = [-c for c in self._coeffs]
        else:
            values = -self.to_complex_array()
        return TaylorSeries(values, cap=self.cap, exactness=self.exactness, backend=self.backend)

    def __sub__(self, other):
        if not isinstance(other, TaylorSeries):
            if isinstance(other, (int, Fraction, float, complex, ExactComplex, str)):
                other = TaylorSeries([other])
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> 'TaylorSeries':
        """c·f."""
        backend = self._scalar_backend(c)
        if backend == Backend.EXACT:
            c = ExactComplex.coerce(c)
            values = [c * x for x in self._coeffs]
        else:
            values = self.to_complex_array() * _to_complex(c)
        return TaylorSeries(values, cap=self.cap, exactness=self.exactness, backend=backend)

    def multiply(self, other: 'TaylorSeries') -> 'TaylorSeries':
        """Cauchy product, truncated at the cap of the result.

        Raises:
            DegreeOverflowError: exact result degree above the configured limit.
        """
        backend, exactness, cap = self._combine_meta(other, self.degree + other.degree)
        _check_degree(cap, backend)
        if backend == Backend.EXACT:
            a = self._coeffs[:cap + 1]
            b = [(j, c) for j, c in enumerate(other._coeffs[:cap + 1]) if c]
            values = [ZERO] * (cap + 1)
            for i, ai in enumerate(a):
                if not ai:
                    continue
                for j, bj in b:
                    k = i + j
                    if k > cap:
                        break
                    values[k] = values[k] + ai * bj
        else:
            a = self.to_complex_array()[:cap + 1]
            b = other.to_complex_array()[:cap + 1]
            values = np.convolve(a, b)[:cap + 1]
        return TaylorSeries(values, cap=cap, exactness=exactness, backend=backend)

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return self.multiply(other)
        if isinstance(other, (int, Fraction, float, complex, ExactComplex)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, TaylorSeries):
            return NotImplemented
        if self._scalar_backend(c) == Backend.EXACT:
            return self.scale(ONE / ExactComplex.coerce(c))
        return self.scale(1 / _to_complex(c))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = TaylorSeries([1], backend=self.backend)
        if not self.is_polynomial:
            result = result.truncate(self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # calculus

    def differentiate(self) -> 'TaylorSeries':
        """f' (cap decreases by one)."""
        cap = max(self.cap - 1, 0)
        if self.cap == 0:
            values = [0]
        elif self.is_exact:
            values = [c * k for k, c in enumerate(self._coeffs) if k > 0]
        else:
            values = self.to_complex_array()[1:] * np.arange(1, self.cap + 1)
        return TaylorSeries(values, cap=cap, exactness=self.exactness, backend=self.backend)

    def integrate0(self) -> 'TaylorSeries':
        """Primitive vanishing at 0 (cap increases by one).

        Raises:
            DegreeOverflowError: exact result degree above the configured limit.
        """
        cap = self.cap + 1
        _check_degree(cap, self.backend)
        if self.is_exact:
            values = [ZERO] + [c * Fraction(1, k + 1) for k, c in enumerate(self._coeffs)]
        else:
            values = np.concatenate([[0j], self.to_complex_array() / np.arange(1, cap + 1)])
        return TaylorSeries(values, cap=cap, exactness=self.exactness, backend=self.backend)

    def dilate(self, lam: Scalar) -> 'TaylorSeries':
        """f_λ(z) = f(λz), for |λ| <= 1.

        Raises:
            DomainError: if |λ| > 1.
        """
        if self._scalar_backend(lam) == Backend.EXACT:
            lam = ExactComplex.coerce(lam)
            if lam.abs2() > 1:
                raise DomainError(f'dilation parameter must satisfy |λ| <= 1, got {lam}')
            values = []
            power = ONE
            for c in self._coeffs:
                values.append(c * power)
                power = power * lam
            backend = Backend.EXACT
        else:
            lam = _to_complex(lam)
            if abs(lam) > 1.:
                raise DomainError(f'dilation parameter must satisfy |λ| <= 1, got {lam}')
            values = self.to_complex_array() * np.power(lam, np.arange(self.cap + 1))
            backend = Backend.FLOAT
        return TaylorSeries(values, cap=self.cap, exactness=self.exactness, backend=backend)

    def evaluate(self, z: Scalar):
        """Horner evaluation at z (exact when both the series and z are exact).

        Raises:
            DomainError: truncated series evaluated at |z| >= 1.
        """
        exact = self._scalar_backend(z) == Backend.EXACT
        if exact:
            z = ExactComplex.coerce(z)
            if not self.is_polynomial and z.abs2() >= 1:
                raise DomainError(f'truncated series can only be evaluated for |z| < 1, got {z}')
            acc = ZERO
            for c in reversed(self._coeffs):
                acc = acc * z + c
            return acc
        z = _to_complex(z)
        if not self.is_polynomial and abs(z) >= 1.:
            raise DomainError(f'truncated series can only be evaluated for |z| < 1, got {z}')
        return complex(np.polyval(self.to_complex_array()[::-1], z))

    def pi0(self) -> 'TaylorSeries':
        """Π₀f = f − f(0)."""
        if self.is_exact:
            values = (ZERO,) + self._coeffs[1:]
        else:
            values = self.to_complex_array()
            values[0] = 0
        return TaylorSeries(values, cap=self.cap, exactness=self.exactness, backend=self.backend)

    # comparison

    def __eq__(self, other):
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        if self.exactness != other.exactness or self.cap != other.cap:
            return False
        if self.is_exact and other.is_exact:
            return self._coeffs == other._coeffs
        return bool(np.array_equal(self.to_complex_array(), other.to_complex_array()))

    __hash__ = None

    def allclose(self, other: 'TaylorSeries', rtol: float = 1e-12, atol: float = 1e-14) -> bool:
        """Coefficientwise closeness, padding the shorter series with zeros."""
        cap = max(self.cap, other.cap)
        a = self._padded(cap, Backend.FLOAT)
        b = other._padded(cap, Backend.FLOAT)
        return bool(np.allclose(a, b, rtol=rtol, atol=atol))

    def __repr__(self):
        if self.is_exact:
            body = ', '.join(str(c) for c in self._coeffs)
        else:
            body = ', '.join(f'{c:.6g}' for c in self._coeffs[:8])
            if self.cap >= 8:
                body += ', ...'
        return f'TaylorSeries([{body}], cap={self.cap}, {self.exactness.value}, {self.backend.value})'

    def __str__(self):
        terms = []
        for k, c in enumerate(self._coeffs):
            if not c:
                continue
            cs = str(c) if self.is_exact else f'{c:.6g}'
            if k == 0:
                terms.append(cs)
            elif k == 1:
                terms.append(f'{cs}·z')
            else:
                terms.append(f'{cs}·z^{k}')
        text = ' + '.join(terms) if terms else '0'
        if not self.is_polynomial:
            text += f' + O(z^{self.cap + 1})'
        return text
