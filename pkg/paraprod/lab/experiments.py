"""
Experiment drivers.

An Experiment walks its cases with process_case, closes with on_end and
returns report(). Tabular experiments also expose rows() for CSV output.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np
import progressbar

import paraprod.constants as const
from paraprod.algebra.canonical import canonicalize, st_word
from paraprod.algebra.classify import two_letter_class
from paraprod.algebra.commutators import commutator_iter
from paraprod.algebra.expr import GOperatorExpr
from paraprod.exceptions import DegenerateFamilyError, DomainError
from paraprod.lab.estimator import opnorm_lower
from paraprod.lab.families import TestFamily
from paraprod.lab.identities import case_generator, identity_kinds, run_identity
from paraprod.norms.bergman import bergman_norm
from paraprod.norms.quadrature import QuadratureConfig
from paraprod.paraproducts import apply_M, apply_S, apply_T, apply_word, as_symbol
from paraprod.series.functions import random_exact_polynomial
from paraprod.series.taylor import TaylorSeries
from paraprod.weights import RadialWeightDescriptor


logger = logging.getLogger(__name__)

radicality_max_power = 6
two_letter_words = tuple(a + b for a in const.letters for b in const.letters)


class Experiment:
    columns: Sequence[str] = ()

    def __init__(self, progress: bool = False):
        self.progress = progress

    def cases(self) -> List:
        return []

    def process_case(self, case):
        pass

    def on_end(self):
        pass

    def report(self) -> Dict:
        return {}

    def rows(self) -> List[Dict]:
        return []

    def run(self) -> Dict:
        cases = list(self.cases())
        logger.info(f'{type(self).__name__}: {len(cases)} cases')
        if self.progress:
            with progressbar.ProgressBar(max_value=len(cases)) as bar:
                for i, case in enumerate(cases):
                    self.process_case(case)
                    bar.update(i + 1)
        else:
            for case in cases:
                self.process_case(case)
        self.on_end()
        return self.report()


class _NormExperiment(Experiment):
    def __init__(self, g, p: float, weight: RadialWeightDescriptor, family: TestFamily, refine: int = 0,
                 seed: int = 0, cfg: Optional[QuadratureConfig] = None, progress: bool = False):
        super().__init__(progress=progress)
        self.symbol = as_symbol(g)
        self.p = p
        self.weight = weight
        self.family = family
        self.refine = refine
        self.seed = seed
        self.cfg = cfg
        self.flags = []

    def lower_bound(self, op: GOperatorExpr, g=None):
        estimate = opnorm_lower(op, self.symbol if g is None else g, self.p, self.weight, self.family,
                                refine=self.refine, seed=self.seed, cfg=self.cfg)
        self.flags.extend(estimate.flags)
        return estimate


class RadicalityExperiment(_NormExperiment):
    """Lower bounds L_m of ‖(1/m)T_{g^m}‖ and their m-th roots, m = 1..n_max.

    The fitted constant max_{m<n} L_m^{1/m}/L_n^{1/n} only illustrates
    consistency: both sides are lower bounds.
    """
    columns = ('m', 'lower_bound', 'root', 'best_witness')

    def __init__(self, g, p, weight, n_max: int, family: TestFamily, **kwargs):
        if not 1 <= n_max <= radicality_max_power:
            raise DomainError(f'n_max must lie in 1..{radicality_max_power}, got {n_max}')
        super().__init__(g, p, weight, family, **kwargs)
        self.n_max = n_max
        self.table = []
        self.constant = None

    def cases(self):
        return range(1, self.n_max + 1)

    def process_case(self, m):
        op = GOperatorExpr.word(const.letter_t, Fraction(1, m))
        estimate = self.lower_bound(op, self.symbol.g ** m)
        root = estimate.lower_bound ** (1. / m)
        logger.debug(f'radicality m={m}: L={estimate.lower_bound:.6g} root={root:.6g}')
        self.table.append({'m': m, 'lower_bound': estimate.lower_bound, 'root': root,
                           'best_witness': estimate.best_witness})

    def on_end(self):
        roots = [row['root'] for row in self.table]
        ratios = [roots[m] / roots[n] for n in range(len(roots)) for m in range(n) if roots[n] > 0.]
        self.constant = max(ratios) if ratios else None

    def rows(self):
        return self.table

    def report(self):
        obj = {'rows': self.table, 'constant': self.constant, 'certified': const.certified_lower_bound,
               'label': 'illustration'}
        if self.flags:
            obj['flags'] = sorted(set(self.flags))
        return obj


class PowerLemmaCheck(Experiment):
    """Constants C_f = ‖Tⁿf‖²/(‖T^{n+1}f‖·‖T^{n−1}f‖) over a family.

    Members with T^{n+1}f = 0 or T^{n−1}f = 0 are set aside as degenerate.
    """
    columns = ('witness', 'constant')

    def __init__(self, g, p: float, weight: RadialWeightDescriptor, n: int, family: TestFamily,
                 cfg: Optional[QuadratureConfig] = None, progress: bool = False):
        super().__init__(progress=progress)
        if n < 1:
            raise DomainError(f'power must be >= 1, got {n}')
        self.symbol = as_symbol(g)
        self.p = p
        self.weight = weight
        self.n = n
        self.family = family
        self.cfg = cfg
        self.constants = []
        self.degenerate = []

    def cases(self):
        return self.family.members(self.p, self.weight)

    def _norm(self, f: TaylorSeries) -> float:
        return bergman_norm(f, self.p, self.weight, self.cfg).value

    def process_case(self, case):
        member_id, f = case
        lower = apply_word(const.letter_t * (self.n - 1), self.symbol, f)
        middle = apply_word(const.letter_t, self.symbol, lower)
        upper = apply_word(const.letter_t, self.symbol, middle)
        if lower.is_zero() or upper.is_zero():
            self.degenerate.append(member_id)
            return
        denominator = self._norm(upper) * self._norm(lower)
        if denominator == 0.:
            self.degenerate.append(member_id)
            return
        self.constants.append({'witness': member_id, 'constant': self._norm(middle) ** 2 / denominator})

    def on_end(self):
        if not self.constants:
            raise DegenerateFamilyError(f'every member of {self.family.to_json()} is degenerate for n = {self.n}')
        if self.degenerate:
            logger.info(f'{len(self.degenerate)} degenerate witnesses set aside')

    def rows(self):
        return self.constants

    def report(self):
        values = np.array([row['constant'] for row in self.constants])
        return {
            'n': self.n,
            'constants': self.constants,
            'degenerate': self.degenerate,
            'max': float(values.max()),
            'median': float(np.median(values))
        }


class TwoLetterSurvey(_NormExperiment):
    """Lower bounds for the nine two-letter words and the exact identities

        M_g² = M_{g²},  S_g² = S_{g²},  S_gT_g = T_gM_g = ½T_{g²}.
    """
    columns = ('word', 'lower_bound', 'best_witness', 'condition')

    def __init__(self, g, p, weight, family: TestFamily, **kwargs):
        super().__init__(g, p, weight, family, **kwargs)
        self.table = []
        self.identities = {}

    def cases(self):
        return two_letter_words

    def process_case(self, word):
        estimate = self.lower_bound(GOperatorExpr.word(word))
        self.table.append({'word': word, 'lower_bound': estimate.lower_bound,
                           'best_witness': estimate.best_witness,
                           'condition': two_letter_class(word).value})

    def _same(self, a: TaylorSeries, b: TaylorSeries) -> bool:
        if a.is_exact and b.is_exact:
            return a == b
        return a.allclose(b, rtol=1e-10, atol=1e-12)

    def on_end(self):
        rng = np.random.default_rng(self.seed)
        g = self.symbol.g
        g2 = g * g
        checks = {'MM=M_(g^2)': [], 'SS=S_(g^2)': [], 'ST=TM=T_(g^2)/2': []}
        for _ in range(5):
            f = random_exact_polynomial(rng, int(rng.integers(0, 5)))
            half = apply_T(g2, f).scale(Fraction(1, 2))
            checks['MM=M_(g^2)'].append(self._same(apply_word('MM', self.symbol, f), apply_M(g2, f)))
            checks['SS=S_(g^2)'].append(self._same(apply_word('SS', self.symbol, f), apply_S(g2, f)))
            checks['ST=TM=T_(g^2)/2'].append(self._same(apply_word('ST', self.symbol, f), half)
                                             and self._same(apply_word('TM', self.symbol, f), half))
        self.identities = {name: all(results) for name, results in checks.items()}

    def rows(self):
        return self.table

    def report(self):
        obj = {'rows': self.table, 'identities': self.identities, 'certified': const.certified_lower_bound}
        if self.flags:
            obj['flags'] = sorted(set(self.flags))
        return obj


class IdentitySuite(Experiment):
    """Round-robin over the exact identity kinds; case i uses its own generator from (seed, i)."""

    def __init__(self, seed: int, cases: int = 200, progress: bool = False):
        super().__init__(progress=progress)
        self.seed = seed
        self.n_cases = cases
        self.by_kind = {kind: {'passed': 0, 'failed': 0} for kind in identity_kinds}
        self.failures = []

    def cases(self):
        return range(self.n_cases)

    def process_case(self, index):
        case = run_identity(index, case_generator(self.seed, index))
        self.by_kind[case.kind]['passed' if case.passed else 'failed'] += 1
        if not case.passed:
            logger.warning(f'identity {case.kind} failed in case {index}')
            self.failures.append({'case': index, **case.to_json()})

    def report(self):
        passed = sum(counts['passed'] for counts in self.by_kind.values())
        obj = {'passed': passed, 'failed': self.n_cases - passed, 'by_kind': self.by_kind}
        if self.failures:
            obj['failures'] = self.failures
        return obj


class CommutatorCheck(Experiment):
    """[S^mT^n, T]_m against m!·T^{2m+n}: exactly on H₀ and, given a weight, through lower bounds."""
    columns = ('m', 'n', 'exact', 'lb_commutator', 'lb_power')

    def __init__(self, m_max: int, n_max: int, g=None, p: float = 2., weight: Optional[RadialWeightDescriptor] = None,
                 family: Optional[TestFamily] = None, refine: int = 0, seed: int = 0,
                 cfg: Optional[QuadratureConfig] = None, progress: bool = False):
        super().__init__(progress=progress)
        self.m_max = m_max
        self.n_max = n_max
        self.numeric = g is not None and weight is not None
        if self.numeric:
            self.symbol = as_symbol(g)
            self.family = family or TestFamily.monomials(20, restrict_H0=True)
        self.p = p
        self.weight = weight
        self.refine = refine
        self.seed = seed
        self.cfg = cfg
        self.table = []

    def cases(self):
        return [(m, n) for m in range(self.m_max + 1) for n in range(self.n_max + 1) if m + n > 0]

    def process_case(self, case):
        m, n = case
        bracket = commutator_iter(GOperatorExpr.word(st_word(m, n)), m)
        power = GOperatorExpr.word(const.letter_t * (2 * m + n), math.factorial(m))
        row = {'m': m, 'n': n, 'exact': canonicalize(bracket).equal_on_h0(canonicalize(power))}
        if self.numeric:
            kwargs = {'refine': self.refine, 'seed': self.seed, 'cfg': self.cfg}
            row['lb_commutator'] = opnorm_lower(bracket, self.symbol, self.p, self.weight, self.family,
                                                **kwargs).lower_bound
            row['lb_power'] = opnorm_lower(power, self.symbol, self.p, self.weight, self.family,
                                           **kwargs).lower_bound
        self.table.append(row)

    def rows(self):
        return self.table

    def report(self):
        return {'rows': self.table, 'all_exact': all(row['exact'] for row in self.table)}
