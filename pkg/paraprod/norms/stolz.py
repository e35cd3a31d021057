"""
Tent space norms and the non-tangential maximal function.

For ζ = ρe^{iθ} the region Γ(ζ) = {z : |z − ζ| < 2(|ζ| − |z|)} meets the
circle |z| = r < ρ in the arc |arg z − θ| < φ(r, ρ) with

    cos φ = (r² + ρ² − 4(ρ − r)²) / (2rρ)

(the whole circle once the right side drops below −1). Inner integrals and
sups are therefore window sums and window maxima along the angular axis of a
fixed polar grid, computed with wraparound prefix sums and
scipy.ndimage.maximum_filter1d.
"""

import logging
from typing import Optional

import numpy as np
from scipy.ndimage import maximum_filter1d

import paraprod.constants as const
from paraprod.exceptions import DomainError
from paraprod.norms.bergman import bergman_norm
from paraprod.norms.quadrature import (NormEstimate, QuadratureConfig, circle_values, gauss_panels,
                                       graded_breakpoints, pairwise_sum)
from paraprod.series.taylor import TaylorSeries
from paraprod.weights import RadialWeightDescriptor


logger = logging.getLogger(__name__)


def arc_half_width(r, rho):
    """Half-width φ(r, ρ) of Γ(ζ) ∩ {|z| = r} for |ζ| = ρ; 0 when r >= ρ."""
    r = np.asarray(r, dtype=float)
    rho = np.asarray(rho, dtype=float)
    a = np.broadcast_to(const.stolz_aperture, np.broadcast(r, rho).shape)
    with np.errstate(divide='ignore', invalid='ignore'):
        cos_phi = (r * r + rho * rho - a * a * (rho - r) ** 2) / (2. * r * rho)
    phi = np.arccos(np.clip(np.nan_to_num(cos_phi, nan=-1., neginf=-1., posinf=1.), -1., 1.))
    return np.where(r < rho, phi, 0.)


def in_stolz_region(z, zeta) -> np.ndarray:
    """Membership test z ∈ Γ(ζ)."""
    z = np.asarray(z)
    zeta = np.asarray(zeta)
    return np.abs(z - zeta) < const.stolz_aperture * (np.abs(zeta) - np.abs(z))


class StolzGrid:
    """Fixed inner polar grid with the outer ζ-quadrature used by the tent evaluators.

    Inner radii are the midpoints of a uniform partition of [0, 1); inner and
    outer angles coincide (outer angles are every tent_outer_stride-th inner
    angle). Outer radii follow a graded Gauss rule weighted by 2ρω(ρ).
    """

    def __init__(self, cfg: QuadratureConfig, weight: RadialWeightDescriptor):
        self.cfg = cfg
        n_r, n_a = cfg.tent_radii, cfg.tent_angles
        self.radii = (np.arange(n_r) + .5) / n_r
        self.dtheta = 2. * np.pi / n_a
        self.n_angles = n_a
        # normalized area of one inner cell
        self.cell_area = 2. * self.radii / n_r / n_a
        breakpoints = graded_breakpoints(cfg.tent_outer_panels, cfg.grading)
        self.outer_radii, outer_w = gauss_panels(breakpoints, cfg.tent_outer_order)
        self.outer_weights = 2. * self.outer_radii * weight.omega(self.outer_radii) * outer_w
        self.outer_index = np.arange(0, n_a, cfg.tent_outer_stride)

    def window(self, rho: float) -> np.ndarray:
        """Angular half-window (in grid steps) per inner radius; −1 where the arc is empty."""
        phi = arc_half_width(self.radii, rho)
        steps = np.ceil(phi / self.dtheta - 1e-12).astype(int) - 1
        steps = np.where(self.radii < rho, np.maximum(steps, 0), -1)
        return np.minimum(steps, self.n_angles)

    def sample(self, f: TaylorSeries) -> np.ndarray:
        coeffs = f.to_complex_array()[:f.degree + 1]
        return circle_values(coeffs, self.radii, self.n_angles)

    def window_sums(self, values: np.ndarray) -> np.ndarray:
        """Inner integrals ∫_{Γ(ζ)} values dA for every outer node; shape (outer radii, outer angles)."""
        n_r, n_a = values.shape
        tiled = np.concatenate([values, values, values], axis=1)
        prefix = np.concatenate([np.zeros((n_r, 1)), np.cumsum(tiled, axis=1)], axis=1)
        totals = prefix[:, n_a] - prefix[:, 0]
        m = self.outer_index
        result = np.zeros((self.outer_radii.size, m.size))
        for k, rho in enumerate(self.outer_radii):
            w = self.window(rho)
            active = np.nonzero(w >= 0)[0]
            if active.size == 0:
                continue
            wa = w[active][:, None]
            hi = n_a + m[None, :] + wa + 1
            lo = n_a + m[None, :] - wa
            sums = prefix[active[:, None], hi] - prefix[active[:, None], lo]
            full = (2 * wa + 1) >= n_a
            sums = np.where(full, totals[active][:, None], sums)
            result[k] = np.sum(sums * self.cell_area[active][:, None], axis=0)
        return result

    def window_maxima(self, values: np.ndarray) -> np.ndarray:
        """sup over Γ(ζ) ∩ grid for every outer node; shape (outer radii, outer angles)."""
        n_r, n_a = values.shape
        m = self.outer_index
        result = np.zeros((self.outer_radii.size, m.size))
        cache = {}
        for k, rho in enumerate(self.outer_radii):
            w = self.window(rho)
            best = np.zeros(m.size)
            for i in np.nonzero(w >= 0)[0]:
                key = (int(i), int(w[i]))
                filtered = cache.get(key)
                if filtered is None:
                    size = 2 * int(w[i]) + 1
                    if size >= n_a:
                        filtered = np.full(m.size, np.max(values[i]))
                    else:
                        filtered = maximum_filter1d(values[i], size=size, mode='wrap')[m]
                    cache[key] = filtered
                best = np.maximum(best, filtered)
            result[k] = best
        return result

    def outer_integral(self, table: np.ndarray) -> float:
        """∫_𝔻 F(ζ) ω(ζ) dA(ζ) for F tabulated on the outer nodes."""
        return pairwise_sum(self.outer_weights * np.mean(table, axis=1))


def _tent_power_grid(f: TaylorSeries, p: float, weight: RadialWeightDescriptor, cfg: QuadratureConfig) -> float:
    grid = StolzGrid(cfg, weight)
    values = np.abs(grid.sample(f)) ** 2
    inner = grid.window_sums(values)
    return grid.outer_integral(inner ** (p / 2.))


def _maximal_power_grid(f: TaylorSeries, p: float, weight: RadialWeightDescriptor, cfg: QuadratureConfig) -> float:
    grid = StolzGrid(cfg, weight)
    values = np.abs(grid.sample(f))
    maxima = grid.window_maxima(values)
    return grid.outer_integral(maxima ** p)


def _grid_estimate(power_fn, f, p, weight, cfg) -> NormEstimate:
    fine = power_fn(f, p, weight, cfg) ** (1. / p)
    coarse = power_fn(f, p, weight, cfg.coarsened_tent()) ** (1. / p)
    err = abs(fine - coarse)
    flags = []
    if fine > 0 and err > cfg.tent_rel_tol * fine:
        logger.warning(f'tent grid estimate above tolerance: value {fine:.6g}, err_est {err:.3g}')
        flags.append(const.flag_inconclusive)
    return NormEstimate(fine, err, cfg, flags=flags)


def _uniform_disc(rng, n: int) -> np.ndarray:
    r = np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def _tent_montecarlo(f: TaylorSeries, p: float, weight: RadialWeightDescriptor, cfg: QuadratureConfig) -> NormEstimate:
    if p != 2:
        raise DomainError('the Monte-Carlo tent estimator is only available for p = 2')
    rng = np.random.default_rng(cfg.seed)
    coeffs = f.to_complex_array()[:f.degree + 1][::-1]
    total, total_sq, count = 0., 0., 0
    chunk = 250_000
    while count < cfg.mc_samples:
        n = min(chunk, cfg.mc_samples - count)
        zeta = _uniform_disc(rng, n)
        z = _uniform_disc(rng, n)
        sample = (np.abs(np.polyval(coeffs, z)) ** 2 * weight.omega(np.abs(zeta))
                  * in_stolz_region(z, zeta))
        total += float(np.sum(sample))
        total_sq += float(np.sum(sample * sample))
        count += n
    mean = total / count
    var = max(total_sq / count - mean * mean, 0.) / count
    value = np.sqrt(mean)
    # delta method for the square root
    sigma = np.sqrt(var) / (2. * value) if value > 0 else 0.
    return NormEstimate(value, 0., cfg, sigma=float(sigma))


def _local_sup(coeffs: np.ndarray, zeta: complex, n_r: int = 48, n_a: int = 33) -> float:
    rho, theta = abs(zeta), np.angle(zeta)
    r = rho * (1. - np.geomspace(1e-6, 1., n_r))
    phi = arc_half_width(r, rho) * (1. - 1e-9)
    offsets = np.linspace(-1., 1., n_a)
    z = r[:, None] * np.exp(1j * (theta + phi[:, None] * offsets[None, :]))
    return float(np.max(np.abs(np.polyval(coeffs, z))))


def _maximal_montecarlo(f: TaylorSeries, p: float, weight: RadialWeightDescriptor,
                        cfg: QuadratureConfig) -> NormEstimate:
    rng = np.random.default_rng(cfg.seed)
    coeffs = f.to_complex_array()[:f.degree + 1][::-1]
    n = min(cfg.mc_samples, 20_000)
    zeta = _uniform_disc(rng, n)
    samples = np.array([_local_sup(coeffs, z) for z in zeta]) ** p * weight.omega(np.abs(zeta))
    mean = float(np.mean(samples))
    var = float(np.var(samples)) / n
    value = mean ** (1. / p)
    sigma = np.sqrt(var) * value / (p * mean) if mean > 0 else 0.
    return NormEstimate(value, 0., cfg, sigma=float(sigma))


def tent_norm(f: TaylorSeries, p: float, weight: RadialWeightDescriptor,
              cfg: Optional[QuadratureConfig] = None) -> NormEstimate:
    """‖f‖_{AT^p_2(ω)} = (∫_𝔻 (∫_{Γ(ζ)} |f|² dA)^{p/2} ω(ζ) dA(ζ))^{1/p}.

    Grid mode reports err_est as the difference to a half-resolution run;
    Monte-Carlo mode (p = 2 only) reports its standard error in sigma.

    Raises:
        DomainError: p <= 0, or Monte-Carlo mode with p != 2.
    """
    if not p > 0:
        raise DomainError(f'p must be > 0, got {p}')
    cfg = cfg or QuadratureConfig.from_config()
    if f.is_zero():
        return NormEstimate(0., 0., cfg)
    if cfg.mode == 'montecarlo':
        return _tent_montecarlo(f, p, weight, cfg)
    return _grid_estimate(_tent_power_grid, f, p, weight, cfg)


def maximal_function_norm(f: TaylorSeries, p: float, weight: RadialWeightDescriptor,
                          cfg: Optional[QuadratureConfig] = None) -> NormEstimate:
    """‖ℳf‖_{L^p_ω} with ℳf(ζ) = sup_{z ∈ Γ(ζ)} |f(z)|."""
    if not p > 0:
        raise DomainError(f'p must be > 0, got {p}')
    cfg = cfg or QuadratureConfig.from_config()
    if f.is_zero():
        return NormEstimate(0., 0., cfg)
    if cfg.mode == 'montecarlo':
        return _maximal_montecarlo(f, p, weight, cfg)
    return _grid_estimate(_maximal_power_grid, f, p, weight, cfg)


def restricted_norm(f: TaylorSeries, p: float, weight: RadialWeightDescriptor,
                    cfg: Optional[QuadratureConfig] = None) -> float:
    """‖f·1_{Γ(ζ) nonempty on the grid}‖_{L^p_ω} with f sampled at the outer nodes."""
    cfg = cfg or QuadratureConfig.from_config()
    grid = StolzGrid(cfg, weight)
    coeffs = f.to_complex_array()[:f.degree + 1]
    theta = grid.outer_index * grid.dtheta
    z = grid.outer_radii[:, None] * np.exp(1j * theta[None, :])
    values = np.abs(np.polyval(coeffs[::-1], z)) ** p
    nonempty = (grid.outer_radii > grid.radii[0])[:, None]
    return grid.outer_integral(values * nonempty) ** (1. / p)


def calderon_check(f: TaylorSeries, p: float, weight: RadialWeightDescriptor,
                   cfg: Optional[QuadratureConfig] = None) -> dict:
    """Both sides of ‖f‖^p_{A^p_ω} ≃ ‖f'‖^p_{AT^p_2(ω)} + |f(0)|^p and their ratio."""
    cfg = cfg or QuadratureConfig.from_config()
    lhs_est = bergman_norm(f, p, weight, cfg)
    tent_est = tent_norm(f.differentiate(), p, weight, cfg)
    lhs = lhs_est.value ** p
    rhs = tent_est.value ** p + abs(complex(f.value_at_zero())) ** p
    ratio = lhs / rhs if rhs > 0 else None
    flags = sorted(set(lhs_est.flags) | set(tent_est.flags))
    return {'lhs': lhs, 'rhs': rhs, 'ratio': ratio, 'flags': flags,
            'err_est': {'lhs': lhs_est.err_est, 'tent': tent_est.err_est}}


def tent_product_check(h1: TaylorSeries, h2: TaylorSeries, p: float, weight: RadialWeightDescriptor,
                       cfg: Optional[QuadratureConfig] = None) -> float:
    """‖h₁h₂'‖_{AT^{p/2}_2(ω)} / (‖h₁‖_{A^p_ω}‖h₂‖_{A^p_ω})."""
    cfg = cfg or QuadratureConfig.from_config()
    denominator = bergman_norm(h1, p, weight, cfg).value * bergman_norm(h2, p, weight, cfg).value
    if denominator == 0.:
        raise DomainError('tent product check needs nonzero functions')
    numerator = tent_norm(h1 * h2.differentiate(), p / 2., weight, cfg).value
    return numerator / denominator
