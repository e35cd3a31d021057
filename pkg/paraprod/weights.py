"""
Radial weights on the unit disc.

A weight is stored as a function of r in [0, 1). Area integrals use the
normalized area measure dA = dx dy / π, so that for a radial F,
∫_𝔻 F(|z|) dA(z) = 2 ∫_0^1 F(r) r dr.
"""

import json
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, interpolate, special

import paraprod.constants as const
from paraprod.exceptions import (DomainError, InsufficientTabulationError, LiteralError,
                                 NotUpperDoublingError, QuadratureError, UnknownWeightKindError,
                                 WrongWeightKindError)


logger = logging.getLogger(__name__)


class WeightKind(str, Enum):
    STANDARD = 'standard'
    EXPONENTIAL = 'exponential'
    DOUBLE_EXPONENTIAL = 'double_exponential'
    TABULATED = 'tabulated'


class Verdict(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'
    INCONCLUSIVE = 'inconclusive'


QUAD_REL_TOL = 1e-10


def quad(fun, a: float, b: float, rel_tol: float = QUAD_REL_TOL, points=None) -> float:
    """scipy adaptive quadrature that raises instead of warning.

    Raises:
        QuadratureError: if the integrator reports failure.
    """
    if b <= a:
        return 0.
    result = integrate.quad(fun, a, b, epsabs=0., epsrel=rel_tol, limit=400, points=points,
                            full_output=1)
    value, abserr = result[0], result[1]
    if len(result) > 3 and abserr > 1e3 * rel_tol * abs(value):
        raise QuadratureError(f'quadrature on [{a}, {b}] did not converge: {result[3]}')
    return value


@dataclass(frozen=True)
class TestVerdict:
    verdict: Verdict
    witness_r: Optional[float] = None
    sup: float = float('nan')


@dataclass(frozen=True)
class WeightClassReport:
    """Grid evidence for the upper (D̂) and lower (Ď) doubling conditions.

    Verdicts derive only from the recorded witnesses; sups are over the
    recorded grid.
    """
    in_upper_doubling: TestVerdict
    in_lower_doubling: TestVerdict
    doubling_sup: float
    lower_doubling_k: Optional[int]
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            'in_upper_doubling': {'verdict': self.in_upper_doubling.verdict.value,
                                  'witness_r': self.in_upper_doubling.witness_r},
            'in_lower_doubling': {'verdict': self.in_lower_doubling.verdict.value,
                                  'witness_r': self.in_lower_doubling.witness_r,
                                  'K': self.lower_doubling_k,
                                  'sup': _finite_or_none(self.in_lower_doubling.sup)},
            'doubling_sup': _finite_or_none(self.doubling_sup),
            'params': self.params
        }


@dataclass(frozen=True)
class BetaCertificate:
    """β and C with ω̂(r) ≤ C((1−r)/(1−t))^β ω̂(t) for all grid points r ≤ t."""
    beta: float
    C: float
    grid_size: int


def _finite_or_none(x):
    return float(x) if x is not None and math.isfinite(x) else None


def default_doubling_grid() -> np.ndarray:
    """Radii 1 − 10^{−k/8} down to 1 − r = 1e−4."""
    steps = const.doubling_grid_steps_per_decade
    n = int(round(-math.log10(const.doubling_grid_depth) * steps))
    return 1. - 10. ** (-np.arange(n + 1) / steps)


def _check_radius(r, open_left: bool = False):
    arr = np.asarray(r, dtype=float)
    low_ok = np.all(arr > 0.) if open_left else np.all(arr >= 0.)
    if not (low_ok and np.all(arr < 1.)):
        interval = '(0, 1)' if open_left else '[0, 1)'
        raise DomainError(f'radius must lie in {interval}, got {r}')


@dataclass(frozen=True)
class RadialWeightDescriptor:
    """Parametric radial weight ω(r) = normalization · base(r).

    Kinds:
        standard(α > −1): base = (α+1)(1−r²)^α, unit mass.
        exponential(c > 0, α > 0): base = exp(−c/(1−r)^α).
        double_exponential(c > 0): base = exp(exp(−c/(1−r))).
        tabulated: monotone cubic interpolation of (r, ω(r)) samples on [0, 1].
    """
    kind: WeightKind
    alpha: float = 0.
    c: float = 1.
    grid: Optional[Tuple[Tuple[float, float], ...]] = None
    normalization: float = 1.

    def __post_init__(self):
        object.__setattr__(self, 'kind', WeightKind(self.kind))
        if self.normalization <= 0:
            raise DomainError(f'normalization must be > 0, got {self.normalization}')
        if self.kind == WeightKind.STANDARD and self.alpha <= -1:
            raise DomainError(f'standard weight needs alpha > -1, got {self.alpha}')
        if self.kind == WeightKind.EXPONENTIAL and (self.c <= 0 or self.alpha <= 0):
            raise DomainError(f'exponential weight needs c > 0 and alpha > 0, got c={self.c}, alpha={self.alpha}')
        if self.kind == WeightKind.DOUBLE_EXPONENTIAL and self.c <= 0:
            raise DomainError(f'double exponential weight needs c > 0, got c={self.c}')
        if self.kind == WeightKind.TABULATED:
            self._validate_grid()

    # construction

    @classmethod
    def standard(cls, alpha: float = 0.) -> 'RadialWeightDescriptor':
        return cls(WeightKind.STANDARD, alpha=float(alpha))

    @classmethod
    def exponential(cls, c: float = 1., alpha: float = 1.) -> 'RadialWeightDescriptor':
        return cls(WeightKind.EXPONENTIAL, alpha=float(alpha), c=float(c))

    @classmethod
    def double_exponential(cls, c: float = 1.) -> 'RadialWeightDescriptor':
        return cls(WeightKind.DOUBLE_EXPONENTIAL, c=float(c))

    @classmethod
    def tabulated(cls, samples: Sequence[Tuple[float, float]]) -> 'RadialWeightDescriptor':
        return cls(WeightKind.TABULATED, grid=tuple((float(r), float(w)) for r, w in samples))

    @classmethod
    def from_json(cls, obj) -> 'RadialWeightDescriptor':
        """Parses {"kind":"standard","alpha":0.0} and the other kinds.

        Raises:
            LiteralError: malformed JSON.
            UnknownWeightKindError: unsupported kind.
        """
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as e:
                raise LiteralError(f'malformed weight JSON: {e}') from e
        if not isinstance(obj, dict) or 'kind' not in obj:
            raise LiteralError(f'weight must be an object with a "kind" field, got {obj!r}')
        kind = obj['kind']
        try:
            kind = WeightKind(kind)
        except ValueError:
            kinds = ', '.join(k.value for k in WeightKind)
            raise UnknownWeightKindError(f'unknown weight kind "{kind}" (expected one of: {kinds})')
        normalization = float(obj.get('normalization', 1.))
        try:
            if kind == WeightKind.STANDARD:
                return cls(kind, alpha=float(obj.get('alpha', 0.)), normalization=normalization)
            if kind == WeightKind.EXPONENTIAL:
                return cls(kind, alpha=float(obj.get('alpha', 1.)), c=float(obj.get('c', 1.)),
                           normalization=normalization)
            if kind == WeightKind.DOUBLE_EXPONENTIAL:
                return cls(kind, c=float(obj.get('c', 1.)), normalization=normalization)
            samples = obj.get('grid')
            if samples is None:
                raise LiteralError('tabulated weight needs a "grid" of [r, w] pairs')
            return cls(kind, grid=tuple((float(r), float(w)) for r, w in samples),
                       normalization=normalization)
        except (TypeError, ValueError) as e:
            if isinstance(e, LiteralError):
                raise
            raise LiteralError(f'malformed weight parameters: {e}') from e

    def to_json(self) -> dict:
        obj = {'kind': self.kind.value}
        if self.kind in (WeightKind.STANDARD, WeightKind.EXPONENTIAL):
            obj['alpha'] = self.alpha
        if self.kind in (WeightKind.EXPONENTIAL, WeightKind.DOUBLE_EXPONENTIAL):
            obj['c'] = self.c
        if self.kind == WeightKind.TABULATED:
            obj['grid'] = [list(p) for p in self.grid]
        if self.normalization != 1.:
            obj['normalization'] = self.normalization
        return obj

    def normalized(self) -> 'RadialWeightDescriptor':
        """Same weight rescaled to unit mass."""
        return replace(self, normalization=self.normalization / self.mass())

    def _validate_grid(self):
        if not self.grid or len(self.grid) < 2:
            raise InsufficientTabulationError('tabulated weight needs at least two samples')
        r = np.array([p[0] for p in self.grid])
        w = np.array([p[1] for p in self.grid])
        if np.any(np.diff(r) <= 0):
            raise LiteralError('tabulated radii must be strictly increasing')
        if np.any(w < 0):
            raise LiteralError('tabulated weight values must be >= 0')
        if r[0] != 0.:
            raise InsufficientTabulationError(f'tabulation must start at r = 0, starts at {r[0]}')
        if r[-1] != 1.:
            raise InsufficientTabulationError(
                f'tabulation must reach r = 1 for the tail integrals, ends at {r[-1]}')
        if not np.any(w[:-1] > 0):
            raise InsufficientTabulationError('tabulated weight vanishes identically')

    def _pchip(self):
        cached = self.__dict__.get('_pchip_cache')
        if cached is None:
            r = np.array([p[0] for p in self.grid])
            w = np.array([p[1] for p in self.grid])
            interpolant = interpolate.PchipInterpolator(r, w, extrapolate=False)
            cached = (interpolant, interpolant.antiderivative())
            object.__setattr__(self, '_pchip_cache', cached)
        return cached

    # evaluators

    def omega(self, r):
        """ω(r) for r in [0, 1); vectorized."""
        _check_radius(r)
        r = np.asarray(r, dtype=float)
        if self.kind == WeightKind.STANDARD:
            value = (self.alpha + 1.) * (1. - r * r) ** self.alpha
        elif self.kind == WeightKind.EXPONENTIAL:
            value = np.exp(-self.c / (1. - r) ** self.alpha)
        elif self.kind == WeightKind.DOUBLE_EXPONENTIAL:
            value = np.exp(np.exp(-self.c / (1. - r)))
        else:
            value = self._pchip()[0](r)
        value = self.normalization * value
        return float(value) if value.ndim == 0 else value

    def phi(self, r):
        """Exponent φ with ω = normalization·e^{−φ} (rapidly decreasing kinds only)."""
        _check_radius(r)
        r = np.asarray(r, dtype=float)
        if self.kind == WeightKind.EXPONENTIAL:
            value = self.c / (1. - r) ** self.alpha
        elif self.kind == WeightKind.DOUBLE_EXPONENTIAL:
            value = -np.exp(-self.c / (1. - r))
        else:
            raise WrongWeightKindError(f'phi is only defined for exponential kinds, not {self.kind.value}')
        return float(value) if value.ndim == 0 else value

    def phi_prime(self, r):
        """φ'(r): cα/(1−r)^{α+1}, or c·e^{−c/(1−r)}/(1−r)² for the double exponential.

        Raises:
            WrongWeightKindError: for standard and tabulated weights.
        """
        _check_radius(r)
        r = np.asarray(r, dtype=float)
        if self.kind == WeightKind.EXPONENTIAL:
            value = self.c * self.alpha / (1. - r) ** (self.alpha + 1.)
        elif self.kind == WeightKind.DOUBLE_EXPONENTIAL:
            value = np.exp(-self.c / (1. - r)) * self.c / (1. - r) ** 2
        else:
            raise WrongWeightKindError(f'phi_prime is only defined for exponential kinds, not {self.kind.value}')
        return float(value) if value.ndim == 0 else value

    def _omega_hat_scalar(self, r: float, rel_tol: float) -> float:
        if self.kind == WeightKind.STANDARD:
            a = self.alpha + 1.
            return float(self.normalization * a * .5 * special.beta(.5, a) * special.betainc(a, .5, 1. - r * r))
        if self.kind == WeightKind.TABULATED:
            primitive = self._pchip()[1]
            return float(self.normalization * (primitive(1.) - primitive(r)))
        if self.kind == WeightKind.EXPONENTIAL:
            # u = 1 − s
            c, alpha = self.c, self.alpha
            return self.normalization * quad(lambda u: math.exp(-c / u ** alpha) if u > 0 else 0.,
                                             0., 1. - r, rel_tol)
        return self.normalization * quad(lambda s: math.exp(math.exp(-self.c / (1. - s))) if s < 1 else 1.,
                                         r, 1., rel_tol)

    def omega_hat(self, r, rel_tol: float = QUAD_REL_TOL):
        """ω̂(r) = ∫_r^1 ω(s) ds; closed form for standard weights, adaptive quadrature otherwise.

        Raises:
            DomainError: r outside [0, 1).
            QuadratureError: the integrator fails.
        """
        _check_radius(r)
        if np.ndim(r) == 0:
            return self._omega_hat_scalar(float(r), rel_tol)
        return np.array([self._omega_hat_scalar(float(x), rel_tol) for x in np.ravel(r)]).reshape(np.shape(r))

    def omega_between(self, r: float, t: float) -> float:
        """∫_r^t ω(s) ds for 0 <= r <= t < 1."""
        if self.kind in (WeightKind.STANDARD, WeightKind.TABULATED):
            return self.omega_hat(r) - self.omega_hat(t)
        return quad(lambda s: float(self.omega(s)), r, t)

    def moment(self, n: int) -> float:
        """∫_0^1 r^{2n+1} ω(r)·2 dr, the squared A²_ω norm of z^n."""
        if n < 0:
            raise DomainError(f'moment index must be >= 0, got {n}')
        if self.kind == WeightKind.STANDARD:
            a = self.alpha + 1.
            return float(self.normalization * a * math.exp(special.betaln(n + 1., a)))
        if self.kind == WeightKind.TABULATED:
            points = [p[0] for p in self.grid[1:-1]] or None
            return 2. * quad(lambda r: r ** (2 * n + 1) * float(self.omega(r)), 0., 1. - 1e-15,
                             1e-12, points=points)
        return 2. * quad(lambda r: r ** (2 * n + 1) * float(self.omega(r)) if r < 1 else 0., 0., 1., 1e-12)

    def mass(self) -> float:
        """∫_𝔻 ω dA."""
        return self.moment(0)

    def omega_star(self, r: float) -> float:
        """ω★(r) = ∫_r^1 s ω(s) log(s/r) ds.

        Raises:
            DomainError: r outside (0, 1).
        """
        _check_radius(r, open_left=True)
        r = float(r)
        if self.kind == WeightKind.STANDARD and self.alpha == 0.:
            return self.normalization * ((r * r - 1.) / 4. - math.log(r) / 2.)
        return quad(lambda s: s * float(self.omega(s)) * math.log(s / r) if s < 1 else 0., r, 1.)

    # classification

    def classify_doubling(self, grid: Optional[Sequence[float]] = None) -> WeightClassReport:
        """Grid certificates for the upper (D̂) and lower (Ď) doubling conditions.

        Raises:
            DomainError: grid not in [0, 1) or not reaching 0.99.
        """
        grid = default_doubling_grid() if grid is None else np.sort(np.asarray(grid, dtype=float))
        _check_radius(grid)
        if grid[-1] < .99:
            raise DomainError(f'doubling grid must reach r >= 0.99, max is {grid[-1]}')
        depth = math.sqrt(1. - grid[-1])
        deep = (1. - grid) <= depth

        upper = self._upper_doubling(grid, deep)
        lower, best_k = self._lower_doubling(grid, deep)
        params = {
            'grid_min': float(grid[0]),
            'grid_max': float(grid[-1]),
            'grid_size': int(grid.size),
            'deep_threshold': depth,
            'lower_doubling_ks': list(const.lower_doubling_ks)
        }
        report = WeightClassReport(in_upper_doubling=upper, in_lower_doubling=lower,
                                   doubling_sup=upper.sup, lower_doubling_k=best_k, params=params)
        logger.debug(f'{self.to_json()} doubling: upper={upper.verdict.value} lower={lower.verdict.value}')
        return report

    def _safe_omega_hat(self, r: float) -> Optional[float]:
        try:
            value = self.omega_hat(r)
        except QuadratureError as e:
            logger.warning(f'omega_hat({r}) failed: {e}')
            return None
        if not math.isfinite(value) or value <= 0.:
            return None
        return value

    def _upper_doubling(self, grid: np.ndarray, deep: np.ndarray) -> TestVerdict:
        ratios = np.full(grid.size, np.nan)
        failed_at = None
        for i, r in enumerate(grid):
            num = self._safe_omega_hat(r)
            den = self._safe_omega_hat((1. + r) / 2.)
            if num is None or den is None:
                if failed_at is None:
                    failed_at = float(r)
                continue
            ratios[i] = num / den
        finite = np.isfinite(ratios)
        sup = float(np.max(ratios[finite])) if np.any(finite) else float('nan')

        blowup = np.nonzero(finite & (ratios > const.upper_doubling_blowup))[0]
        if blowup.size > 0:
            return TestVerdict(Verdict.FAIL, float(grid[blowup[0]]), sup)
        shallow_sup = np.max(ratios[finite & ~deep]) if np.any(finite & ~deep) else np.nan
        deep_sup = np.max(ratios[finite & deep]) if np.any(finite & deep) else np.nan
        if math.isfinite(shallow_sup) and math.isfinite(deep_sup) and deep_sup > 2. * shallow_sup:
            witness = grid[finite & deep][int(np.argmax(ratios[finite & deep]))]
            return TestVerdict(Verdict.FAIL, float(witness), sup)
        if failed_at is not None or not math.isfinite(deep_sup):
            return TestVerdict(Verdict.INCONCLUSIVE, failed_at, sup)
        witness = grid[finite][int(np.argmax(ratios[finite]))]
        return TestVerdict(Verdict.PASS, float(witness), sup)

    def _lower_doubling(self, grid: np.ndarray, deep: np.ndarray):
        best = None
        inconclusive_at = None
        for k in const.lower_doubling_ks:
            ratios = np.full(grid.size, np.nan)
            for i, r in enumerate(grid):
                t = r + (1. - r) / k
                try:
                    tail = self.omega_hat(r)
                    piece = self.omega_between(r, t)
                except QuadratureError as e:
                    logger.warning(f'lower doubling quadrature failed at r={r}, K={k}: {e}')
                    inconclusive_at = float(r) if inconclusive_at is None else inconclusive_at
                    continue
                if piece > 0. and math.isfinite(tail) and tail > 0.:
                    ratios[i] = tail / piece
                elif inconclusive_at is None:
                    inconclusive_at = float(r)
            finite = np.isfinite(ratios)
            if not np.any(finite & deep) or not np.any(finite & ~deep):
                continue
            shallow_sup = float(np.max(ratios[finite & ~deep]))
            deep_sup = float(np.max(ratios[finite & deep]))
            sup = max(shallow_sup, deep_sup)
            bounded = deep_sup <= 2. * shallow_sup
            witness = float(grid[finite][int(np.argmax(ratios[finite]))])
            if bounded and (best is None or sup < best[1]):
                best = (k, sup, witness)
        if best is not None:
            return TestVerdict(Verdict.PASS, best[2], best[1]), best[0]
        if inconclusive_at is not None:
            return TestVerdict(Verdict.INCONCLUSIVE, inconclusive_at), None
        return TestVerdict(Verdict.FAIL, float(grid[-1])), None

    def beta_exponent(self, grid: Optional[Sequence[float]] = None) -> BetaCertificate:
        """Smallest grid-certified β with ω̂(r) ≤ C((1−r)/(1−t))^β ω̂(t) for r ≤ t.

        β is scanned in steps of 0.05 and accepted once the constant over the
        whole grid stays within 5% of the constant over its shallow part
        (1 − t ≥ 1e−2). This is a certificate on the grid, not a proof.

        Raises:
            NotUpperDoublingError: the weight fails the D̂ test or no β fits.
        """
        grid = default_doubling_grid() if grid is None else np.sort(np.asarray(grid, dtype=float))
        report = self.classify_doubling(grid)
        if report.in_upper_doubling.verdict == Verdict.FAIL:
            raise NotUpperDoublingError(
                f'weight {self.to_json()} fails the upper doubling test '
                f'(ratio {report.doubling_sup:.4g} at r={report.in_upper_doubling.witness_r})')
        values = np.array([self._safe_omega_hat(r) or np.nan for r in grid])
        keep = np.isfinite(values)
        grid, values = grid[keep], values[keep]
        log_w = np.log(values)
        log_d = np.log(1. - grid)
        i, j = np.triu_indices(grid.size)
        log_ratio = log_w[i] - log_w[j]
        log_x = log_d[i] - log_d[j]
        shallow = (1. - grid[j]) >= const.beta_shallow_depth

        n_steps = int(round(const.beta_max / const.beta_step))
        for step in range(1, n_steps + 1):
            beta = round(step * const.beta_step, 10)
            log_c = log_ratio - beta * log_x
            c_full = float(np.exp(np.max(log_c)))
            c_shallow = float(np.exp(np.max(log_c[shallow])))
            if c_full <= 1.05 * c_shallow:
                logger.debug(f'beta exponent {beta} with C={c_full:.6g}')
                return BetaCertificate(beta=beta, C=c_full, grid_size=int(grid.size))
        raise NotUpperDoublingError(f'no beta <= {const.beta_max} fits the grid for {self.to_json()}')

    def is_upper_doubling(self) -> bool:
        return self.classify_doubling().in_upper_doubling.verdict == Verdict.PASS
