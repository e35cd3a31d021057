"""
Test families for operator-norm lower bounds.

A family is described by its kind and parameters and produces a list of
(member id, series) pairs. With restrict_H0 every member vanishes at 0.
"""

import json
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

import paraprod.constants as const
from paraprod.config import get_config
from paraprod.exceptions import DegenerateFamilyError, DomainError, LiteralError, NotUpperDoublingError
from paraprod.series.functions import doubling_kernel, random_float_polynomial
from paraprod.series.literals import parse_series
from paraprod.series.taylor import TaylorSeries
from paraprod.weights import RadialWeightDescriptor


Member = Tuple[str, TaylorSeries]

family_kinds = ('monomials', 'random_polys', 'doubling_kernels', 'custom')


@dataclass
class TestFamily:
    """Parametric test family.

    Kinds and their parameters:
        monomials: maxdeg.
        random_polys: count, maxdeg, seed.
        doubling_kernels: eta (defaults to β + 1), radii, angles, cap.
        custom: series (a list of TaylorSeries).
    """
    __test__ = False

    kind: str
    maxdeg: int = 30
    count: int = 50
    seed: int = 0
    eta: Optional[float] = None
    radii: Sequence[float] = const.kernel_radii
    angles: int = const.kernel_angles
    cap: Optional[int] = None
    series: List[TaylorSeries] = field(default_factory=list)
    restrict_H0: bool = False

    def __post_init__(self):
        if self.kind not in family_kinds:
            raise LiteralError(f'unknown family kind "{self.kind}" (expected {", ".join(family_kinds)})')

    @classmethod
    def monomials(cls, maxdeg: int, restrict_H0: bool = False) -> 'TestFamily':
        return cls('monomials', maxdeg=maxdeg, restrict_H0=restrict_H0)

    @classmethod
    def random_polys(cls, count: int, maxdeg: int, seed: int, restrict_H0: bool = False) -> 'TestFamily':
        return cls('random_polys', count=count, maxdeg=maxdeg, seed=seed, restrict_H0=restrict_H0)

    @classmethod
    def doubling_kernels(cls, eta: Optional[float] = None, radii: Sequence[float] = const.kernel_radii,
                         angles: int = const.kernel_angles, cap: Optional[int] = None,
                         restrict_H0: bool = False) -> 'TestFamily':
        return cls('doubling_kernels', eta=eta, radii=tuple(radii), angles=angles, cap=cap,
                   restrict_H0=restrict_H0)

    @classmethod
    def custom(cls, series: Sequence[TaylorSeries], restrict_H0: bool = False) -> 'TestFamily':
        return cls('custom', series=list(series), restrict_H0=restrict_H0)

    @classmethod
    def from_spec(cls, spec, restrict_H0: bool = False) -> 'TestFamily':
        """Parses "monomials:30", "random_polys:50:20:7", "doubling_kernels[:eta]" or a JSON object.

        Raises:
            LiteralError: malformed spec.
        """
        if isinstance(spec, str) and spec.strip().startswith('{'):
            try:
                spec = json.loads(spec)
            except json.JSONDecodeError as e:
                raise LiteralError(f'malformed family JSON: {e}') from e
        if isinstance(spec, dict):
            obj = dict(spec)
            kind = obj.pop('kind', None)
            if kind == 'custom':
                obj['series'] = [parse_series(s) for s in obj.get('series', [])]
            obj.setdefault('restrict_H0', restrict_H0)
            try:
                return cls(kind, **obj)
            except TypeError as e:
                raise LiteralError(f'malformed family object: {e}') from e
        parts = str(spec).split(':')
        kind, args = parts[0], parts[1:]
        try:
            if kind == 'monomials':
                return cls.monomials(int(args[0]) if args else 30, restrict_H0)
            if kind == 'random_polys':
                count, maxdeg, seed = (int(a) for a in (args + ['50', '20', '0'][len(args):])[:3])
                return cls.random_polys(count, maxdeg, seed, restrict_H0)
            if kind == 'doubling_kernels':
                return cls.doubling_kernels(float(args[0]) if args else None, restrict_H0=restrict_H0)
        except ValueError as e:
            raise LiteralError(f'malformed family spec "{spec}": {e}') from e
        raise LiteralError(f'unknown family spec "{spec}"')

    def to_json(self) -> dict:
        obj = {'kind': self.kind, 'restrict_H0': self.restrict_H0}
        if self.kind == 'monomials':
            obj['maxdeg'] = self.maxdeg
        elif self.kind == 'random_polys':
            obj.update({'count': self.count, 'maxdeg': self.maxdeg, 'seed': self.seed})
        elif self.kind == 'doubling_kernels':
            obj.update({'eta': self.eta, 'radii': list(self.radii), 'angles': self.angles, 'cap': self.cap})
        else:
            obj['size'] = len(self.series)
        return obj

    def _monomials(self) -> List[Member]:
        start = 1 if self.restrict_H0 else 0
        return [(f'z^{k}', TaylorSeries.monomial(k)) for k in range(start, self.maxdeg + 1)]

    def _random(self) -> List[Member]:
        rng = np.random.default_rng(self.seed)
        members = []
        for i in range(self.count):
            degree = int(rng.integers(1, self.maxdeg + 1))
            members.append((f'random[{i}]', random_float_polynomial(rng, degree, vanish_at_zero=self.restrict_H0)))
        return members

    def _kernels(self, p: float, weight: RadialWeightDescriptor) -> List[Member]:
        try:
            beta = weight.beta_exponent().beta
        except NotUpperDoublingError as e:
            raise DomainError(f'doubling kernels need an upper doubling weight: {e}') from e
        eta = self.eta if self.eta is not None else beta + 1.
        if eta <= beta:
            raise DomainError(f'doubling kernels need eta > beta = {beta:g}, got {eta}')
        cap = self.cap or get_config().default_cap
        members = []
        for r in self.radii:
            for k in range(self.angles):
                theta = 2. * math.pi * k / self.angles
                xi = r * complex(math.cos(theta), math.sin(theta))
                h = doubling_kernel(xi, eta, p, weight, cap)
                if self.restrict_H0:
                    h = h.pi0()
                members.append((f'kernel[{r:g},{k}/{self.angles}]', h))
        return members

    def members(self, p: float = 2., weight: Optional[RadialWeightDescriptor] = None) -> List[Member]:
        """(id, series) pairs; kernels need p and the weight.

        Raises:
            DegenerateFamilyError: the family is empty.
            DomainError: kernels requested for a weight outside D̂ or with eta <= β.
        """
        if self.kind == 'monomials':
            members = self._monomials()
        elif self.kind == 'random_polys':
            members = self._random()
        elif self.kind == 'doubling_kernels':
            if weight is None:
                raise LiteralError('doubling kernel families need a weight')
            members = self._kernels(p, weight)
        else:
            members = [(f'custom[{i}]', s.pi0() if self.restrict_H0 else s) for i, s in enumerate(self.series)]
        if not members:
            raise DegenerateFamilyError(f'family {self.to_json()} is empty')
        return members
