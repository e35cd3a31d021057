"""
Lower bounds for operator norms on A^p_ω.

The bound is the best ratio ‖Lf‖/‖f‖ over a test family, optionally improved
by a seeded coordinate perturbation ascent on the coefficients of the best
witness. Nothing here is an upper bound.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

import paraprod.constants as const
from paraprod.algebra.canonical import canonicalize
from paraprod.algebra.expr import GOperatorExpr
from paraprod.exceptions import ShapeError, ZeroNormWitnessError
from paraprod.lab.families import TestFamily
from paraprod.norms.bergman import bergman_norm, moment_norm
from paraprod.norms.quadrature import QuadratureConfig
from paraprod.paraproducts import SymbolLike, apply_operator, as_symbol, evaluate_rank_one
from paraprod.series.literals import series_to_json
from paraprod.series.taylor import TaylorSeries
from paraprod.utils.parallel import parallel_map
from paraprod.weights import RadialWeightDescriptor


logger = logging.getLogger(__name__)

perturbation_scale = 0.25


@dataclass
class Ratio:
    value: float
    flags: List[str] = field(default_factory=list)


@dataclass
class OpNormEstimate:
    lower_bound: float
    best_witness: str
    family: TestFamily
    refine_steps: int
    flags: List[str] = field(default_factory=list)
    certified: str = const.certified_lower_bound
    witness: Optional[TaylorSeries] = None

    @property
    def inconclusive(self) -> bool:
        return bool(self.flags)

    def to_json(self) -> dict:
        obj = {
            'lower_bound': self.lower_bound,
            'best_witness': self.best_witness,
            'family': self.family.to_json(),
            'refine_steps': self.refine_steps,
            'certified': self.certified
        }
        if self.flags:
            obj['flags'] = sorted(set(self.flags))
        if self.witness is not None:
            obj['witness'] = series_to_json(self.witness)
        return obj


def _tail_fraction(h: TaylorSeries, weight: RadialWeightDescriptor) -> float:
    """Share of the A²_ω mass of h carried by its upper half of coefficients."""
    total = moment_norm(h, weight)
    if total == 0.:
        return 0.
    coeffs = h.to_complex_array().copy()
    coeffs[:h.cap // 2 + 1] = 0.
    return moment_norm(TaylorSeries(coeffs), weight) / total


def norm_ratio(op: GOperatorExpr, g: SymbolLike, f: TaylorSeries, p: float, weight: RadialWeightDescriptor,
               cfg: Optional[QuadratureConfig] = None) -> Ratio:
    """‖Lf‖/‖f‖ with the flags of both norm evaluations.

    Raises:
        ZeroNormWitnessError: ‖f‖ = 0.
    """
    denominator = bergman_norm(f, p, weight, cfg)
    if denominator.value == 0.:
        raise ZeroNormWitnessError('test function has zero norm')
    image = apply_operator(op, g, f)
    numerator = bergman_norm(image, p, weight, cfg)
    flags = list(numerator.flags) + list(denominator.flags)
    if not image.is_polynomial and _tail_fraction(image, weight) > const.truncation_rel_change:
        flags.append(const.flag_truncation_limited)
    return Ratio(numerator.value / denominator.value, flags)


def _ascent(op: GOperatorExpr, g, witness: TaylorSeries, best: Ratio, p, weight, cfg, steps: int, seed: int,
            restrict_H0: bool):
    """Coordinate-wise perturbation ascent; accepts strict improvements only."""
    rng = np.random.Generator(np.random.PCG64(seed))
    coeffs = witness.to_float().to_complex_array().copy()
    if coeffs.size == 1 and not restrict_H0:
        coeffs = np.append(coeffs, 0.)
    start = 1 if restrict_H0 else 0
    if coeffs.size <= start:
        return witness, best
    current = TaylorSeries(coeffs)
    for step in range(steps):
        k = int(rng.integers(start, coeffs.size))
        scale = perturbation_scale * max(float(np.max(np.abs(coeffs))), 1e-300)
        delta = scale * complex(rng.standard_normal(), rng.standard_normal())
        trial_coeffs = coeffs.copy()
        trial_coeffs[k] += delta
        trial = TaylorSeries(trial_coeffs)
        if trial.is_zero():
            continue
        ratio = norm_ratio(op, g, trial, p, weight, cfg)
        if ratio.value > best.value:
            logger.debug(f'ascent step {step}: {best.value:.6g} -> {ratio.value:.6g}')
            coeffs, current, best = trial_coeffs, trial, ratio
    return current, best


def opnorm_lower(op: GOperatorExpr, g: SymbolLike, p: float, weight: RadialWeightDescriptor,
                 family: TestFamily, refine: int = 0, seed: int = 0,
                 cfg: Optional[QuadratureConfig] = None) -> OpNormEstimate:
    """Certified lower bound for ‖L_g‖ on A^p_ω (on A^p_ω(0) with family.restrict_H0).

    Members are evaluated in parallel and reduced in family order, ties going
    to the earlier member. With refine > 0 the best witness is then improved
    by refine steps of seeded perturbation ascent.

    Raises:
        DegenerateFamilyError: empty family.
        ZeroNormWitnessError: a member has zero norm.
    """
    symbol = as_symbol(g)
    members = family.members(p, weight)
    ratios = parallel_map(lambda member: norm_ratio(op, symbol, member[1], p, weight, cfg), members)
    best_index = 0
    for i, ratio in enumerate(ratios):
        if ratio.value > ratios[best_index].value:
            best_index = i
    best_id, witness = members[best_index]
    best = ratios[best_index]
    flags = list(best.flags)
    if refine > 0:
        improved, best = _ascent(op, symbol, witness, best, p, weight, cfg, refine, seed, family.restrict_H0)
        if improved is not witness:
            best_id = f'{best_id}+ascent'
            witness = improved
        flags.extend(best.flags)
    if flags:
        logger.warning(f'operator norm bound {best.value:.6g} carries flags {sorted(set(flags))}')
    return OpNormEstimate(best.value, best_id, family, refine, flags, witness=witness)


def delta0_norm(p: float, weight: RadialWeightDescriptor) -> float:
    """‖δ₀‖ on A^p_ω, attained at the constants."""
    return weight.mass() ** (-1. / p)


def trivial_operator_norm(op: GOperatorExpr, g: SymbolLike, p: float, weight: RadialWeightDescriptor,
                          cfg: Optional[QuadratureConfig] = None) -> float:
    """‖P(g₀, g(0))‖_{A^p_ω}·‖δ₀‖ for a trivial operator P(g₀, g(0))δ₀.

    Raises:
        ShapeError: the operator is not trivial.
    """
    form = canonicalize(op)
    if not form.is_trivial():
        raise ShapeError(f'operator {op} is not trivial')
    value = evaluate_rank_one(form.rank_one, g)
    return bergman_norm(value, p, weight, cfg).value * delta0_norm(p, weight)
