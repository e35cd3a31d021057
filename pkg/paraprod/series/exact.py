"""Exact complex numbers with rational real and imaginary parts."""

from fractions import Fraction
from numbers import Rational

from paraprod.exceptions import LiteralError


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise LiteralError(f'not a rational number: {value!r}')
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        # exact binary value of the float
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise LiteralError(f'malformed rational "{value}": {e}') from e
    raise LiteralError(f'not a rational number: {value!r}')


class ExactComplex:
    """Gaussian rational re + i·im.

    Instances are immutable. Arithmetic with ints, Fractions and other
    ExactComplex values stays exact; division by zero raises
    ZeroDivisionError.
    """

    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        object.__setattr__(self, 're', _fraction(re))
        object.__setattr__(self, 'im', _fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError('ExactComplex is immutable')

    @classmethod
    def coerce(cls, value) -> 'ExactComplex':
        """Builds an ExactComplex from a number, a "p/q" string or a [re, im] pair."""
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise LiteralError(f'complex literal must be a [re, im] pair: {value!r}')
            return cls(value[0], value[1])
        return cls(value, 0)

    @staticmethod
    def is_exact_value(value) -> bool:
        """True if value can be coerced without going through a float."""
        if isinstance(value, ExactComplex):
            return True
        if isinstance(value, bool):
            return False
        if isinstance(value, (int, Fraction, str)):
            return True
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return all(isinstance(v, (int, Fraction, str)) and not isinstance(v, bool) for v in value)
        return False

    def conjugate(self) -> 'ExactComplex':
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        return ExactComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        if other.im == 0:
            return ExactComplex(self.re * other.re, self.im * other.re)
        if self.im == 0:
            return ExactComplex(self.re * other.re, self.re * other.im)
        return ExactComplex(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        den = other.abs2()
        if den == 0:
            raise ZeroDivisionError('ExactComplex division by zero')
        num = self * other.conjugate()
        return ExactComplex(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ExactComplex(1) / (self ** -n)
        result = ExactComplex(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ExactComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f'ExactComplex({str(self.re)!r}, {str(self.im)!r})'

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f'{self.im}i'
        sign = '+' if self.im > 0 else '-'
        return f'({self.re}{sign}{abs(self.im)}i)'

    def to_json(self):
        """[re, im] as "p/q" strings."""
        return [str(self.re), str(self.im)]


def _coerce_operand(value):
    if isinstance(value, ExactComplex):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, (int, Fraction)):
        return ExactComplex(value, 0)
    return NotImplemented


ZERO = ExactComplex(0)
ONE = ExactComplex(1)
