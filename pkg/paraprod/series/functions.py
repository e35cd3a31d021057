"""Truncated Taylor expansions of the analytic functions used as symbols and test functions."""

import logging
from fractions import Fraction

import numpy as np

from paraprod.config import get_config
from paraprod.exceptions import DegreeOverflowError, DomainError
from paraprod.series.exact import ExactComplex
from paraprod.series.taylor import Backend, Exactness, TaylorSeries


logger = logging.getLogger(__name__)


def log_series(cap: int, exact: bool = False) -> TaylorSeries:
    """log(1/(1−z)) = Σ_{k≥1} z^k/k truncated at cap."""
    if cap < 1:
        raise DomainError(f'cap must be >= 1, got {cap}')
    if exact:
        coeffs = [0] + [Fraction(1, k) for k in range(1, cap + 1)]
        return TaylorSeries.truncated(coeffs, cap, backend=Backend.EXACT)
    coeffs = np.zeros(cap + 1, dtype=complex)
    coeffs[1:] = 1. / np.arange(1, cap + 1)
    return TaylorSeries.truncated(coeffs, cap)


def binomial_series(s, cap: int, exact: bool = False) -> TaylorSeries:
    """(1−z)^s by the recurrence c_{k+1} = c_k·(k−s)/(k+1).

    A nonnegative integer s gives an exact polynomial of degree s.
    """
    if isinstance(s, float) and s.is_integer():
        s = int(s)
    if isinstance(s, int) and s >= 0:
        coeffs = [1]
        for k in range(s):
            coeffs.append(coeffs[-1] * Fraction(k - s, k + 1))
        series = TaylorSeries(coeffs)
        return series if exact else series.to_float()
    if exact:
        s = Fraction(s)
        coeffs = [Fraction(1)]
        for k in range(cap):
            coeffs.append(coeffs[-1] * (k - s) / (k + 1))
        return TaylorSeries.truncated(coeffs, cap, backend=Backend.EXACT)
    k = np.arange(cap, dtype=float)
    ratios = (k - float(s)) / (k + 1.)
    coeffs = np.concatenate([[1.], np.cumprod(ratios)])
    return TaylorSeries.truncated(coeffs.astype(complex), cap)


def kernel_power_series(xi: complex, s: float, cap: int) -> TaylorSeries:
    """(1 − ξ̄z)^{−s} truncated at cap."""
    xi = complex(xi)
    if abs(xi) >= 1.:
        raise DomainError(f'kernel parameter must satisfy |ξ| < 1, got {xi}')
    return binomial_series(-s, cap).dilate(xi.conjugate())


def doubling_kernel(xi: complex, eta: float, p: float, weight, cap: int) -> TaylorSeries:
    """Test function h_ξ = ((1−|ξ|)^η / (ω̂(|ξ|)(1−ξ̄z)^{η+1}))^{1/p}.

    The fractional power of (1 − ξ̄z) is expanded by the binomial series.
    """
    if p <= 0:
        raise DomainError(f'p must be > 0, got {p}')
    xi = complex(xi)
    rho = abs(xi)
    factor = ((1. - rho) ** eta / weight.omega_hat(rho)) ** (1. / p)
    return kernel_power_series(xi, (eta + 1.) / p, cap).scale(factor)


def disc_automorphism(a: complex, cap: int) -> TaylorSeries:
    """φ_a(z) = (a − z)/(1 − āz) = a − (1−|a|²) Σ_{k≥1} ā^{k−1} z^k."""
    a = complex(a)
    if abs(a) >= 1.:
        raise DomainError(f'automorphism parameter must satisfy |a| < 1, got {a}')
    coeffs = np.zeros(cap + 1, dtype=complex)
    coeffs[0] = a
    if cap >= 1:
        coeffs[1:] = -(1. - abs(a) ** 2) * np.power(a.conjugate(), np.arange(cap))
    if a == 0:
        return TaylorSeries(coeffs)
    return TaylorSeries.truncated(coeffs, cap)


def compose(g: TaylorSeries, phi: TaylorSeries, cap: int) -> TaylorSeries:
    """g∘φ by Horner recomposition, truncated at cap (float backend).

    Raises:
        DegreeOverflowError: cap above the configured degree limit.
    """
    if cap > get_config().max_degree:
        raise DegreeOverflowError(f'recomposition cap {cap} exceeds the degree limit {get_config().max_degree}')
    coeffs = g.to_complex_array()[:g.degree + 1]
    phi = phi.to_float().truncate(cap)
    result = TaylorSeries.truncated([coeffs[-1]], cap)
    for c in coeffs[-2::-1]:
        result = result * phi + complex(c)
    logger.debug(f'recomposed degree {g.degree} series at cap {cap}')
    return result


def symbol_power(g: TaylorSeries, n: int) -> TaylorSeries:
    """g^n keeping the backend of g."""
    if n < 0:
        raise DomainError(f'power must be >= 0, got {n}')
    return g ** n


def gaussian_integer(rng, bound: int = 3) -> ExactComplex:
    """Random Gaussian integer with parts in [−bound, bound]."""
    return ExactComplex(int(rng.integers(-bound, bound + 1)), int(rng.integers(-bound, bound + 1)))


def random_exact_polynomial(rng, degree: int, vanish_at_zero: bool = False, bound: int = 3) -> TaylorSeries:
    """Exact polynomial with Gaussian-integer coefficients and nonzero leading term."""
    coeffs = [gaussian_integer(rng, bound) for _ in range(degree + 1)]
    while degree > 0 and not coeffs[degree]:
        coeffs[degree] = gaussian_integer(rng, bound)
    if vanish_at_zero:
        coeffs[0] = ExactComplex(0)
    return TaylorSeries(coeffs, backend=Backend.EXACT)


def random_float_polynomial(rng, degree: int, vanish_at_zero: bool = False) -> TaylorSeries:
    """Polynomial with standard complex Gaussian coefficients."""
    coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    if vanish_at_zero:
        coeffs[0] = 0.
    return TaylorSeries(coeffs, exactness=Exactness.POLYNOMIAL, backend=Backend.FLOAT)
