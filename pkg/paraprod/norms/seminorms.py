"""
Grid lower bounds for the symbol seminorms: Bloch, Garsia, Lipschitz,
C¹(ω★) Carleson and the Bloch-type B_φ.

Every value is a sup over a finite set of points refined around the
arg-max, so it is a certified lower bound of the true seminorm. For
truncated (non-polynomial) symbols the evaluation is repeated at half the
cap and the result is flagged truncation_limited when the two differ by
more than 5%.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

import paraprod.constants as const
from paraprod.exceptions import DomainError, NotUpperDoublingError, WrongWeightKindError
from paraprod.norms.quadrature import (QuadratureConfig, circle_values, gauss_panels, graded_breakpoints,
                                       pairwise_sum)
from paraprod.series.functions import compose, disc_automorphism
from paraprod.series.taylor import TaylorSeries
from paraprod.weights import RadialWeightDescriptor, Verdict, WeightKind


logger = logging.getLogger(__name__)


@dataclass
class SeminormEstimate:
    """A seminorm value (a grid lower bound) with the point where it was attained."""
    value: float
    argmax: Optional[complex] = None
    flags: List[str] = field(default_factory=list)
    cap_values: Dict[int, float] = field(default_factory=dict)
    kind: str = ''
    certified: str = const.certified_lower_bound
    details: dict = field(default_factory=dict)

    @property
    def truncation_limited(self) -> bool:
        return const.flag_truncation_limited in self.flags

    @property
    def inconclusive(self) -> bool:
        return const.flag_inconclusive in self.flags

    def to_json(self) -> dict:
        obj = {'kind': self.kind, 'value': self.value, 'certified': self.certified}
        if self.argmax is not None:
            obj['argmax'] = [self.argmax.real, self.argmax.imag]
        if self.flags:
            obj['flags'] = list(self.flags)
        if self.cap_values:
            obj['cap_values'] = {str(k): v for k, v in sorted(self.cap_values.items())}
        if self.details:
            obj['details'] = self.details
        return obj


def default_radial_grid() -> np.ndarray:
    """Uniform on [0, 0.9] then geometric towards 1 down to 1 − r = 1e−6."""
    return np.unique(np.concatenate([np.linspace(0., .9, 46), 1. - np.logspace(-1., -6., 101)]))


RadialFactor = Callable[[np.ndarray], np.ndarray]


def _factored_sup(h: TaylorSeries, factor: RadialFactor, radii: Optional[np.ndarray] = None,
                  n_theta: int = 256, rounds: int = 3):
    """sup factor(|z|)·|h(z)| over a polar grid plus local refinement.

    Returns (value, argmax).
    """
    coeffs = h.to_complex_array()[:h.degree + 1]
    if not np.any(coeffs):
        return 0., 0j
    radii = default_radial_grid() if radii is None else np.asarray(radii, dtype=float)
    table = np.abs(circle_values(coeffs, radii, n_theta)) * factor(radii)[:, None]
    i, j = np.unravel_index(int(np.argmax(table)), table.shape)
    best = float(table[i, j])
    r0, theta0 = float(radii[i]), 2. * np.pi * j / n_theta
    r_span = (float(radii[max(i - 1, 0)]), float(radii[min(i + 1, radii.size - 1)]))
    theta_span = 2. * np.pi / n_theta
    reversed_coeffs = coeffs[::-1]

    for _ in range(rounds):
        rs = np.linspace(r_span[0], r_span[1], 33)
        rs = rs[(rs >= 0.) & (rs < 1.)]
        thetas = theta0 + np.linspace(-theta_span, theta_span, 33)
        z = rs[:, None] * np.exp(1j * thetas[None, :])
        local = np.abs(np.polyval(reversed_coeffs, z)) * factor(rs)[:, None]
        a, b = np.unravel_index(int(np.argmax(local)), local.shape)
        if local[a, b] > best:
            best = float(local[a, b])
            r0, theta0 = float(rs[a]), float(thetas[b])
        dr = (r_span[1] - r_span[0]) / 8.
        r_span = (max(r0 - dr, 0.), min(r0 + dr, np.nextafter(1., 0.)))
        theta_span /= 8.
    return best, complex(r0 * np.cos(theta0), r0 * np.sin(theta0))


def _with_truncation_check(g: TaylorSeries, kind: str, evaluate) -> SeminormEstimate:
    """Runs evaluate(g) and, for truncated g, evaluate(g at half cap)."""
    value, argmax = evaluate(g)
    estimate = SeminormEstimate(value, argmax, kind=kind, cap_values={g.cap: value})
    if not g.is_polynomial and g.cap >= 2:
        half = g.truncate(g.cap // 2)
        half_value, _ = evaluate(half)
        estimate.cap_values[half.cap] = half_value
        if value > 0. and abs(value - half_value) > const.truncation_rel_change * value:
            logger.warning(f'{kind} seminorm changes by more than {const.truncation_rel_change:.0%} '
                           f'between caps {half.cap} and {g.cap}')
            estimate.flags.append(const.flag_truncation_limited)
    logger.debug(f'{kind} seminorm {value:.8g} at {argmax}')
    return estimate


def bloch_seminorm(g: TaylorSeries, radii: Optional[Sequence[float]] = None,
                   n_theta: int = 256) -> SeminormEstimate:
    """sup (1−|z|²)|g'(z)|."""
    def evaluate(h):
        return _factored_sup(h.differentiate(), lambda r: 1. - r * r, radii, n_theta)
    return _with_truncation_check(g, 'bloch', evaluate)


def lip_seminorm(g: TaylorSeries, s: float, radii: Optional[Sequence[float]] = None,
                 n_theta: int = 256) -> SeminormEstimate:
    """sup (1−|z|)^{1−s}|g'(z)| for 0 < s < 1.

    Raises:
        DomainError: s outside (0, 1).
    """
    if not 0. < s < 1.:
        raise DomainError(f'Lipschitz exponent must lie in (0, 1), got {s}')

    def evaluate(h):
        return _factored_sup(h.differentiate(), lambda r: (1. - r) ** (1. - s), radii, n_theta)
    estimate = _with_truncation_check(g, 'lip', evaluate)
    estimate.details['s'] = s
    return estimate


def b_phi_seminorm(g: TaylorSeries, weight: RadialWeightDescriptor, radii: Optional[Sequence[float]] = None,
                   n_theta: int = 256) -> SeminormEstimate:
    """sup |g'(z)|/(1+φ'(|z|)) for the rapidly decreasing weights.

    Raises:
        WrongWeightKindError: weight is not exponential or double exponential.
    """
    if weight.kind not in (WeightKind.EXPONENTIAL, WeightKind.DOUBLE_EXPONENTIAL):
        raise WrongWeightKindError(f'B_phi needs an exponential weight, got {weight.kind.value}')

    def factor(r):
        return 1. / (1. + weight.phi_prime(r))

    def evaluate(h):
        return _factored_sup(h.differentiate(), factor, radii, n_theta)
    return _with_truncation_check(g, 'bphi', evaluate)


def b_phi_bloch_factor(weight: RadialWeightDescriptor, radii: Optional[Sequence[float]] = None) -> float:
    """sup_r 1/((1−r²)(1+φ'(r))), the factor relating B_φ to the Bloch seminorm."""
    radii = default_radial_grid() if radii is None else np.asarray(radii, dtype=float)
    return float(np.max(1. / ((1. - radii ** 2) * (1. + weight.phi_prime(radii)))))


# Garsia

def _a2_norm(f: TaylorSeries) -> float:
    c = f.to_complex_array()
    n = np.arange(c.size)
    return math.sqrt(pairwise_sum(np.abs(c) ** 2 / (n + 1.)))


def garsia_cap(a: complex) -> int:
    """Cap of the recomposition g∘φ_a; φ_a has coefficients of size |a|^k."""
    r = abs(a)
    if r == 0.:
        return 64
    return max(64, int(math.ceil(40. / -math.log(r))))


def garsia_at(g: TaylorSeries, a: complex) -> float:
    """‖g∘φ_a − g(a)‖_{A²} with φ_a(z) = (a − z)/(1 − āz).

    Raises:
        DomainError: |a| >= 1.
        DegreeOverflowError: the recomposition cap exceeds max_degree.
    """
    a = complex(a)
    if abs(a) >= 1.:
        raise DomainError(f'Garsia point must lie in the disc, got {a}')
    cap = garsia_cap(a)
    composed = compose(g.to_float(), disc_automorphism(a, cap), cap)
    return _a2_norm(composed - complex(g.to_float().evaluate(a)))


def garsia_seminorm(g: TaylorSeries, radii: Sequence[float] = const.garsia_radii,
                    n_angles: int = const.garsia_angles) -> SeminormEstimate:
    """sup over an a-grid of ‖g∘φ_a − g(a)‖_{A²}, refined around the best a."""
    radii = tuple(float(r) for r in radii)
    best, best_a = -1., 0j
    for r in radii:
        angles = [0.] if r == 0. else [2. * math.pi * k / n_angles for k in range(n_angles)]
        for theta in angles:
            a = r * complex(math.cos(theta), math.sin(theta))
            value = garsia_at(g, a)
            if value > best:
                best, best_a = value, a

    # one round over the neighbours at half the grid spacing
    dr = min((b - a for a, b in zip(radii, radii[1:])), default=.1) / 2.
    dtheta = math.pi / n_angles
    r0, theta0 = abs(best_a), math.atan2(best_a.imag, best_a.real)
    for sr in (-dr, 0., dr):
        for st in (-dtheta, 0., dtheta):
            r = r0 + sr
            if (sr, st) == (0., 0.) or not 0. <= r < 1.:
                continue
            a = r * complex(math.cos(theta0 + st), math.sin(theta0 + st))
            value = garsia_at(g, a)
            if value > best:
                best, best_a = value, a
    logger.debug(f'garsia seminorm {best:.8g} at a={best_a}')
    return SeminormEstimate(max(best, 0.), best_a, kind='garsia', cap_values={g.cap: max(best, 0.)})


# C¹(ω★)

class _OmegaStarCache:
    def __init__(self, weight: RadialWeightDescriptor):
        self.weight = weight
        self.values = {}

    def __call__(self, radii: np.ndarray) -> np.ndarray:
        out = np.empty(radii.size)
        for k, r in enumerate(radii):
            key = float(r)
            value = self.values.get(key)
            if value is None:
                value = self.weight.omega_star(key)
                self.values[key] = value
            out[k] = value
        return out


def _level_angles(level: int, n_theta: int) -> int:
    block = 2 ** (level + 6)
    return block * max(1, -(-n_theta // block))


def c1_omega_star_seminorm(g: TaylorSeries, weight: RadialWeightDescriptor,
                           levels: Sequence[int] = const.carleson_levels, n_theta: int = 256,
                           panels: int = 6, order: int = 8, check_weight: bool = True) -> SeminormEstimate:
    """sup over dyadic Carleson squares of ∫_S |g'|²ω★ dA / ω(S).

    The square of level j has radial band [1 − 2^{−j}, 1) and arc length
    2π·2^{−j}; centres sit at 2πm/2^{j+3}. Squares with ω(S) too small to
    evaluate are skipped and the result is flagged inconclusive.

    Raises:
        NotUpperDoublingError: the weight fails the upper doubling test.
    """
    if check_weight:
        verdict = weight.classify_doubling().in_upper_doubling.verdict
        if verdict == Verdict.FAIL:
            raise NotUpperDoublingError(f'C1(omega*) needs an upper doubling weight, {weight.to_json()} fails')

    derivative = g.differentiate().to_complex_array()
    estimate = SeminormEstimate(0., None, kind='c1star', cap_values={})
    if not np.any(derivative):
        estimate.cap_values[g.cap] = 0.
        return estimate

    omega_star = _OmegaStarCache(weight)
    level_sups = {}
    for j in levels:
        h = 2. ** -j
        nodes, node_w = gauss_panels(graded_breakpoints(panels, QuadratureConfig().grading, 1. - h, 1.), order)
        n_a = _level_angles(j, n_theta)
        n_centers = 2 ** (j + const.carleson_extra_centers_exp)
        width = max(1, int(round(h * n_a)))
        dtheta = 2. * np.pi / n_a

        # ω(S) does not depend on the centre
        omega_s = 2. * h * pairwise_sum(nodes * weight.omega(nodes) * node_w)
        if not (math.isfinite(omega_s) and omega_s > 0.):
            logger.warning(f'omega(S) underflows at level {j}')
            estimate.flags.append(const.flag_inconclusive)
            continue

        values = np.abs(circle_values(derivative, nodes, n_a, offset=.5)) ** 2
        radial = nodes * omega_star(nodes) * node_w / np.pi
        ring = np.sum(values * radial[:, None], axis=0) * dtheta
        prefix = np.concatenate([[0.], np.cumsum(np.concatenate([ring, ring]))])
        step = n_a // n_centers
        starts = (np.arange(n_centers) * step - width // 2) % n_a
        if width >= n_a:
            sums = np.full(n_centers, prefix[n_a])
        else:
            sums = prefix[starts + width] - prefix[starts]
        ratios = sums / omega_s
        m = int(np.argmax(ratios))
        level_sups[j] = float(ratios[m])
        if ratios[m] > estimate.value:
            estimate.value = float(ratios[m])
            theta = 2. * np.pi * m / n_centers
            estimate.argmax = complex((1. - h / 2.) * math.cos(theta), (1. - h / 2.) * math.sin(theta))
            estimate.details['level'] = j
    estimate.details['level_sups'] = {str(k): v for k, v in level_sups.items()}
    estimate.cap_values[g.cap] = estimate.value
    return estimate
