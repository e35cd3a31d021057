"""
Weighted Bergman norms ‖f‖_{A^p_ω} and the checks built on them.

All values are norms (p-th roots); the p-th power is value**p.
"""

import logging
from functools import lru_cache
from typing import Optional

import numpy as np

import paraprod.constants as const
from paraprod.exceptions import DomainError
from paraprod.norms.quadrature import (NormEstimate, QuadratureConfig, auto_n_theta, circle_values,
                                       pairwise_sum, radial_rule)
from paraprod.series.taylor import TaylorSeries
from paraprod.weights import RadialWeightDescriptor


logger = logging.getLogger(__name__)


@lru_cache(maxsize=128)
def moment_table(weight: RadialWeightDescriptor, n_max: int) -> np.ndarray:
    """moment(0..n_max) as a read-only array."""
    table = np.array([weight.moment(n) for n in range(n_max + 1)])
    table.setflags(write=False)
    return table


def _moments(weight: RadialWeightDescriptor, n_max: int) -> np.ndarray:
    # round the cache key up so that nearby degrees share a table
    size = 16
    while size < n_max:
        size *= 2
    return moment_table(weight, size)[:n_max + 1]


def _check_p(p: float):
    if not p > 0:
        raise DomainError(f'p must be > 0, got {p}')


def moment_norm(f: TaylorSeries, weight: RadialWeightDescriptor) -> float:
    """‖f‖_{A²_ω} = (Σ|c_n|² moment(n))^{1/2}."""
    c = f.to_complex_array()
    m = _moments(weight, c.size - 1)
    return float(np.sqrt(pairwise_sum(np.abs(c) ** 2 * m)))


def _polar_power(coeffs: np.ndarray, p: float, weight: RadialWeightDescriptor, cfg: QuadratureConfig) -> float:
    """∫_𝔻 |f|^p ω dA by graded Gauss in r and the trapezoid rule in θ."""
    nodes, weights = radial_rule(cfg)
    degree = coeffs.size - 1
    n_theta = auto_n_theta(p, degree, cfg.n_theta)
    values = circle_values(coeffs, nodes, n_theta)
    means = np.mean(np.abs(values) ** p, axis=1)
    return pairwise_sum(2. * nodes * weight.omega(nodes) * weights * means)


def bergman_norm(f: TaylorSeries, p: float, weight: RadialWeightDescriptor,
                 cfg: Optional[QuadratureConfig] = None, exact_moments: bool = True) -> NormEstimate:
    """‖f‖_{A^p_ω}.

    For p = 2 the exact moment formula is used (err_est = 0) unless
    exact_moments is False. Otherwise the polar quadrature is refined until two
    consecutive levels agree to cfg.rel_tol; if they never do, the estimate is
    flagged inconclusive.

    Args:
        f: the function.
        p: exponent, p > 0.
        weight: radial weight.
        cfg: quadrature configuration (defaults from the global config).
        exact_moments: use the moment formula when p = 2.

    Returns:
        NormEstimate with value = ‖f‖ and err_est = |difference| of the last
        two refinement levels.

    Raises:
        DomainError: p <= 0.
    """
    _check_p(p)
    cfg = cfg or QuadratureConfig.from_config()
    if p == 2 and exact_moments:
        return NormEstimate(moment_norm(f, weight), 0., cfg)
    coeffs = f.to_complex_array()[:f.degree + 1]
    if not np.any(coeffs):
        return NormEstimate(0., 0., cfg)

    level = cfg
    previous = _polar_power(coeffs, p, weight, level) ** (1. / p)
    for _ in range(cfg.max_refinements):
        level = level.refined()
        current = _polar_power(coeffs, p, weight, level) ** (1. / p)
        err = abs(current - previous)
        if err <= cfg.rel_tol * current:
            return NormEstimate(current, err, cfg)
        previous = current
    logger.warning(f'bergman_norm did not reach rel_tol {cfg.rel_tol} (err_est {err:.3g})')
    return NormEstimate(current, err, cfg, flags=[const.flag_inconclusive])


def sup_on_circle(f: TaylorSeries, r: float, n_theta: int = 1024) -> float:
    """max_{|z|=r} |f(z)| on n_theta angles, refined around the arg-max."""
    coeffs = f.to_complex_array()[:f.degree + 1]
    values = np.abs(circle_values(coeffs, np.array([r]), n_theta)[0])
    j = int(np.argmax(values))
    best = float(values[j])
    theta0 = 2. * np.pi * j / n_theta
    local = theta0 + np.linspace(-1., 1., 257) * 2. * np.pi / n_theta
    z = r * np.exp(1j * local)
    local_values = np.abs(np.polyval(coeffs[::-1], z))
    return max(best, float(np.max(local_values)))


def pointwise_bound_check(f: TaylorSeries, r: float, p: float, weight: RadialWeightDescriptor,
                          cfg: Optional[QuadratureConfig] = None) -> float:
    """Empirical factor sup_{|z|<=r}|f|^p / (C(r,ω)‖f‖^p) with C(r,ω) = 1/((1−r)ω̂((1+r)/2))."""
    if not 0. <= r < 1.:
        raise DomainError(f'radius must lie in [0, 1), got {r}')
    norm = bergman_norm(f, p, weight, cfg).value
    if norm == 0.:
        return 0.
    constant = 1. / ((1. - r) * weight.omega_hat((1. + r) / 2.))
    return sup_on_circle(f, r) ** p / (constant * norm ** p)


def mz_isomorphism_check(f: TaylorSeries, p: float, weight: RadialWeightDescriptor,
                         cfg: Optional[QuadratureConfig] = None) -> dict:
    """Ratios ‖zf‖/‖f‖ (at most 1) and ‖f‖/‖zf‖ (the empirical constant)."""
    norm_f = bergman_norm(f, p, weight, cfg).value
    norm_zf = bergman_norm(f * TaylorSeries.monomial(1), p, weight, cfg).value
    if norm_f == 0.:
        raise DomainError('M_z check needs a nonzero function')
    return {'contraction': norm_zf / norm_f, 'inverse_constant': norm_f / norm_zf}
