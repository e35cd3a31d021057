"""
Quadrature building blocks shared by the norm and seminorm evaluators.

Radial integrals over [0, 1) use Gauss-Legendre panels graded geometrically
towards r = 1 (breakpoints 1 − grading^k). Circle means use the trapezoid rule
on equally spaced angles, with the circle values obtained by one FFT of the
coefficient vector.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from pydantic import BaseModel, ConfigDict, Field, field_validator

import paraprod.constants as const
from paraprod.config import get_config


class QuadratureConfig(BaseModel):
    """Parameters of the polar quadratures.

    The Stolz aperture is part of the record but is fixed at 2.
    """

    model_config = ConfigDict(frozen=True)

    n_theta: int = Field(256, ge=2)
    radial_panels: int = Field(24, ge=1)
    grading: float = Field(0.5, gt=0., lt=1.)
    gauss_order: int = Field(20, ge=2)
    rel_tol: float = Field(1e-8, gt=0.)
    max_refinements: int = Field(3, ge=1)
    stolz_aperture: float = const.stolz_aperture

    # tent space and maximal function
    tent_radii: int = Field(256, ge=8)
    tent_angles: int = Field(1024, ge=8)
    tent_outer_panels: int = Field(8, ge=1)
    tent_outer_order: int = Field(8, ge=2)
    tent_outer_stride: int = Field(4, ge=1)
    tent_rel_tol: float = Field(5e-2, gt=0.)
    mode: str = 'grid'
    mc_samples: int = Field(1_000_000, ge=100)
    seed: int = 0

    @field_validator('n_theta', 'tent_angles')
    @classmethod
    def _even(cls, v: int) -> int:
        if v % 2:
            raise ValueError(f'angular sample counts must be even, got {v}')
        return v

    @field_validator('stolz_aperture')
    @classmethod
    def _aperture(cls, v: float) -> float:
        if v != const.stolz_aperture:
            raise ValueError(f'the Stolz aperture is fixed at {const.stolz_aperture}')
        return v

    @field_validator('mode')
    @classmethod
    def _mode(cls, v: str) -> str:
        if v not in ('grid', 'montecarlo'):
            raise ValueError(f'mode must be "grid" or "montecarlo", got "{v}"')
        return v

    @classmethod
    def from_config(cls, **overrides) -> 'QuadratureConfig':
        """Defaults from the global ParaprodConfig, with keyword overrides."""
        config = get_config()
        values = {
            'n_theta': config.n_theta + config.n_theta % 2,
            'radial_panels': config.radial_panels,
            'grading': config.grading,
            'rel_tol': config.rel_tol,
            'tent_radii': config.tent_radii,
            'tent_angles': config.tent_angles + config.tent_angles % 2
        }
        values.update(overrides)
        return cls(**values)

    def refined(self) -> 'QuadratureConfig':
        """Next refinement level: more radial nodes and twice the angles."""
        return self.model_copy(update={
            'n_theta': 2 * self.n_theta,
            'radial_panels': self.radial_panels + 4,
            'gauss_order': self.gauss_order + self.gauss_order // 2
        })

    def coarsened_tent(self) -> 'QuadratureConfig':
        """Half inner resolution, used for tent error estimates."""
        return self.model_copy(update={
            'tent_radii': max(8, self.tent_radii // 2),
            'tent_angles': max(8, (self.tent_angles // 4) * 2)
        })


@dataclass
class NormEstimate:
    """A norm value with its estimated quadrature error."""
    value: float
    err_est: float
    config: QuadratureConfig
    flags: List[str] = field(default_factory=list)
    sigma: Optional[float] = None

    def __post_init__(self):
        self.value = max(float(self.value), 0.)
        self.err_est = abs(float(self.err_est))

    @property
    def inconclusive(self) -> bool:
        return const.flag_inconclusive in self.flags

    def to_json(self) -> dict:
        obj = {'value': self.value, 'err_est': self.err_est, 'config': self.config.model_dump()}
        if self.flags:
            obj['flags'] = list(self.flags)
        if self.sigma is not None:
            obj['sigma'] = self.sigma
        return obj


def graded_breakpoints(n_panels: int, grading: float, start: float = 0., end: float = 1.) -> np.ndarray:
    """start, end − (end−start)·grading^k for k = 1..n_panels−1, end."""
    length = end - start
    inner = end - length * grading ** np.arange(1, n_panels)
    return np.concatenate([[start], inner, [end]])


@lru_cache(maxsize=64)
def _gauss(order: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_panels(breakpoints: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights over consecutive breakpoints."""
    x, w = _gauss(order)
    a = breakpoints[:-1, None]
    b = breakpoints[1:, None]
    nodes = (a + b) / 2. + (b - a) / 2. * x[None, :]
    weights = (b - a) / 2. * w[None, :]
    return nodes.ravel(), weights.ravel()


@lru_cache(maxsize=64)
def _radial_rule_cached(n_panels: int, grading: float, order: int):
    nodes, weights = gauss_panels(graded_breakpoints(n_panels, grading), order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def radial_rule(cfg: QuadratureConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Graded Gauss-Legendre rule on [0, 1)."""
    return _radial_rule_cached(cfg.radial_panels, cfg.grading, cfg.gauss_order)


def circle_values(coeffs: np.ndarray, radii: np.ndarray, n_theta: int, offset: float = 0.) -> np.ndarray:
    """f(r e^{iθ_j}) for θ_j = offset·Δθ + 2πj/n_theta, one row per radius.

    Coefficients beyond n_theta are folded modulo n_theta, which keeps the
    samples exact.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    k = np.arange(coeffs.size)
    scaled = coeffs[None, :] * np.power(radii[:, None], k[None, :])
    if offset:
        scaled = scaled * np.exp(1j * offset * 2. * np.pi / n_theta * k)[None, :]
    if coeffs.size > n_theta:
        folded = np.zeros((radii.size, n_theta), dtype=complex)
        for start in range(0, coeffs.size, n_theta):
            block = scaled[:, start:start + n_theta]
            folded[:, :block.shape[1]] += block
        scaled = folded
    return np.fft.ifft(scaled, n=n_theta, axis=1) * n_theta


def auto_n_theta(p: float, degree: int, base: int) -> int:
    """Angular samples: for even integer p, enough for the trapezoid rule to be exact."""
    if float(p).is_integer() and int(p) % 2 == 0:
        needed = int(p) * degree + 3
    else:
        needed = 4 * (degree + 1)
    n = max(base, needed)
    return n + n % 2


def pairwise_sum(values: np.ndarray) -> float:
    """Sum in a fixed pairwise order independent of how values were produced."""
    values = np.asarray(values, dtype=float).ravel()
    while values.size > 1:
        if values.size % 2:
            values = np.concatenate([values, [0.]])
        values = values[0::2] + values[1::2]
    return float(values[0]) if values.size else 0.
