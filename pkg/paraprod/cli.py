import argparse
import csv
import json
import logging
import sys

from pydantic import ValidationError
from termcolor import colored

import paraprod.constants as const
from paraprod.algebra.canonical import canonicalize
from paraprod.algebra.commutators import commutator_iter
from paraprod.algebra.decompose import quotient_decompose, rebase
from paraprod.algebra.expr import parse_expr
from paraprod.colored import colored_expr, colored_form
from paraprod.config import get_config
from paraprod.exceptions import (DomainError, GuardError, LiteralError, NotUpperDoublingError, ParaprodError,
                                 UnknownWeightKindError)
from paraprod.lab.estimator import opnorm_lower
from paraprod.lab.experiments import (CommutatorCheck, IdentitySuite, PowerLemmaCheck, RadicalityExperiment,
                                      TwoLetterSurvey)
from paraprod.lab.families import TestFamily
from paraprod.manifest import RunManifest
from paraprod.norms.bergman import bergman_norm
from paraprod.norms.kernels import kernel_integral_check
from paraprod.norms.quadrature import QuadratureConfig
from paraprod.norms.seminorms import (b_phi_seminorm, bloch_seminorm, c1_omega_star_seminorm, garsia_seminorm,
                                      lip_seminorm)
from paraprod.norms.stolz import calderon_check, maximal_function_norm, restricted_norm, tent_norm
from paraprod.series.literals import parse_complex, parse_series
from paraprod.weights import RadialWeightDescriptor


logger = logging.getLogger(__name__)

commands = ('norm', 'tent-norm', 'seminorm', 'calderon', 'kernel-check', 'weight-class', 'canonicalize',
            'commutator', 'decompose', 'identities', 'opnorm', 'radicality', 'power-lemma', 'two-letter')

default_weight = '{"kind":"standard","alpha":0}'


class UsageError(ParaprodError):
    """Raised when the command line misses a required argument."""
    pass


def error_msg(msg):
    print('{} {}'.format(colored('error:', 'red'), msg), file=sys.stderr)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(',', ':'), ensure_ascii=False)


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f'command "{args.command}" needs --{name.replace("_", "-")}')


def _require_seed(args):
    if args.seed is None:
        raise UsageError(f'command "{args.command}" is randomized and needs an explicit --seed')


def _weight(args) -> RadialWeightDescriptor:
    return RadialWeightDescriptor.from_json(args.weight)


def _cfg(args) -> QuadratureConfig:
    overrides = {'mode': args.mode}
    if args.seed is not None:
        overrides['seed'] = args.seed
    return QuadratureConfig.from_config(**overrides)


def _family(args) -> TestFamily:
    return TestFamily.from_spec(args.family, restrict_H0=args.h0)


def _collect_flags(obj) -> set:
    flags = set()
    if isinstance(obj, dict):
        for key, value in obj.items():
            if key == 'flags' and isinstance(value, list):
                flags |= set(value)
            else:
                flags |= _collect_flags(value)
    elif isinstance(obj, list):
        for item in obj:
            flags |= _collect_flags(item)
    return flags


def _experiment_kwargs(args) -> dict:
    return {'refine': args.refine, 'seed': args.seed or 0, 'progress': args.progress}


def _randomized_family(args) -> bool:
    return args.family.startswith('random_polys') or '"random_polys"' in args.family


def _run_command(args):
    """Result object of the command and, for tabular commands, its experiment."""
    if args.command == 'norm':
        _require(args, 'series')
        f = parse_series(args.series)
        cfg = _cfg(args)
        return bergman_norm(f, args.p, _weight(args), cfg, exact_moments=not args.quadrature).to_json(), None
    elif args.command == 'tent-norm':
        _require(args, 'series')
        f = parse_series(args.series)
        if args.mode == 'montecarlo':
            _require_seed(args)
        cfg = _cfg(args)
        weight = _weight(args)
        if args.kind in (None, 'tent'):
            return tent_norm(f, args.p, weight, cfg).to_json(), None
        elif args.kind == 'maximal':
            return maximal_function_norm(f, args.p, weight, cfg).to_json(), None
        elif args.kind == 'restricted':
            value = restricted_norm(f, args.p, weight, cfg)
            return {'value': value, 'err_est': None, 'config': cfg.model_dump()}, None
        raise UsageError(f'tent-norm kind must be tent, maximal or restricted, got "{args.kind}"')
    elif args.command == 'seminorm':
        _require(args, 'symbol', 'kind')
        g = parse_series(args.symbol)
        if args.kind == 'bloch':
            result = bloch_seminorm(g)
        elif args.kind == 'lip':
            _require(args, 's')
            result = lip_seminorm(g, args.s)
        elif args.kind in ('bphi', 'b_phi'):
            result = b_phi_seminorm(g, _weight(args))
        elif args.kind == 'garsia':
            result = garsia_seminorm(g)
        elif args.kind in ('c1star', 'c1_omega_star'):
            result = c1_omega_star_seminorm(g, _weight(args))
        else:
            raise UsageError(f'seminorm kind must be bloch, garsia, lip, c1star or bphi, got "{args.kind}"')
        return result.to_json(), None
    elif args.command == 'calderon':
        _require(args, 'series')
        cfg = _cfg(args)
        result = calderon_check(parse_series(args.series), args.p, _weight(args), cfg)
        result['config'] = cfg.model_dump()
        return result, None
    elif args.command == 'kernel-check':
        _require(args, 'xi', 'eta')
        return kernel_integral_check(complex(parse_complex(args.xi)), args.eta, _weight(args), beta=args.beta), None
    elif args.command == 'weight-class':
        weight = _weight(args)
        report = weight.classify_doubling().to_json()
        try:
            beta = weight.beta_exponent()
            report['beta'] = {'beta': beta.beta, 'C': beta.C, 'grid_size': beta.grid_size}
        except NotUpperDoublingError:
            report['beta'] = None
        report['mass'] = weight.mass()
        report['weight'] = weight.to_json()
        return report, None
    elif args.command == 'canonicalize':
        _require(args, 'expr')
        form = canonicalize(parse_expr(args.expr))
        if args.pretty:
            print(colored_form(form), file=sys.stderr)
        return form.to_json(), None
    elif args.command == 'commutator':
        if args.expr is None:
            _require(args, 'm', 'n')
            experiment = CommutatorCheck(args.m, args.n, progress=args.progress)
            return experiment.run(), experiment
        _require(args, 'k')
        result = commutator_iter(parse_expr(args.expr), args.k)
        if args.pretty:
            print(colored_expr(result), file=sys.stderr)
        return {'expr': result.to_json(), 'canonical': canonicalize(result).to_json()}, None
    elif args.command == 'decompose':
        if args.expr is not None:
            coeffs = rebase(parse_expr(args.expr), m=args.m, n=args.n)
            return {'coeffs': [c.to_json() for c in coeffs]}, None
        _require(args, 'm', 'n', 'j')
        return quotient_decompose(args.m, args.n, args.j).to_json(), None
    elif args.command == 'identities':
        _require_seed(args)
        return IdentitySuite(args.seed, args.cases, progress=args.progress).run(), None
    elif args.command == 'opnorm':
        _require(args, 'expr', 'symbol')
        if args.refine > 0 or _randomized_family(args):
            _require_seed(args)
        estimate = opnorm_lower(parse_expr(args.expr), parse_series(args.symbol), args.p, _weight(args),
                                _family(args), refine=args.refine, seed=args.seed or 0, cfg=_cfg(args))
        return estimate.to_json(), None
    elif args.command == 'radicality':
        _require(args, 'symbol')
        if args.refine > 0 or _randomized_family(args):
            _require_seed(args)
        experiment = RadicalityExperiment(parse_series(args.symbol), args.p, _weight(args), args.n_max,
                                          _family(args), cfg=_cfg(args), **_experiment_kwargs(args))
        return experiment.run(), experiment
    elif args.command == 'power-lemma':
        _require(args, 'symbol')
        if _randomized_family(args):
            _require_seed(args)
        experiment = PowerLemmaCheck(parse_series(args.symbol), args.p, _weight(args), args.power, _family(args),
                                     cfg=_cfg(args), progress=args.progress)
        return experiment.run(), experiment
    elif args.command == 'two-letter':
        _require(args, 'symbol')
        if args.refine > 0 or _randomized_family(args):
            _require_seed(args)
        experiment = TwoLetterSurvey(parse_series(args.symbol), args.p, _weight(args), _family(args),
                                     cfg=_cfg(args), **_experiment_kwargs(args))
        return experiment.run(), experiment
    raise UsageError(f'unknown command "{args.command}" (expected one of: {", ".join(commands)})')


def _write_outputs(args, result, experiment):
    outputs = []
    if args.out:
        with open(args.out, 'w', newline='') as f:
            if experiment is not None and experiment.columns:
                writer = csv.DictWriter(f, fieldnames=list(experiment.columns), extrasaction='ignore')
                writer.writeheader()
                writer.writerows(experiment.rows())
            else:
                f.write(_dumps(result))
                f.write('\n')
        outputs.append(args.out)
    manifest_path = args.manifest or (args.out + '.manifest.json' if args.out else None)
    if manifest_path:
        inputs = {key: value for key, value in sorted(vars(args).items())
                  if value is not None and key not in ('out', 'manifest', 'progress')}
        RunManifest.create(args.command, inputs, seed=args.seed, outputs=outputs).write(manifest_path)


def cli(argv=None) -> int:
    parser = argparse.ArgumentParser(prog='paraprod')

    parser.add_argument('command', type=str, help='command to execute', choices=commands)
    parser.add_argument('--beta', type=float, help='β exponent of the weight', default=None)
    parser.add_argument('--cases', type=int, help='number of identity cases', default=200)
    parser.add_argument('--eta', type=float, help='kernel exponent', default=None)
    parser.add_argument('--family', type=str, help='test family spec', default='monomials:30')
    parser.add_argument('--h0', help='restrict test families to f(0) = 0', action='store_true')
    parser.add_argument('--j', type=int, help='decomposition index', default=None)
    parser.add_argument('--k', type=int, help='commutator order', default=None)
    parser.add_argument('--kind', type=str, help='seminorm or tent-norm kind', default=None)
    parser.add_argument('--log-level', type=str, help='logging level', default=None)
    parser.add_argument('--m', type=int, help='number of S letters', default=None)
    parser.add_argument('--manifest', type=str, help='manifest file', default=None)
    parser.add_argument('--mode', type=str, help='tent quadrature mode (grid or montecarlo)', default='grid')
    parser.add_argument('--n', type=int, help='number of T letters', default=None)
    parser.add_argument('--n-max', type=int, help='largest power in the radicality table', default=4)
    parser.add_argument('--expr', '--op', type=str, help='g-operator expression (sum or JSON literal)', default=None)
    parser.add_argument('--out', type=str, help='output file', default=None)
    parser.add_argument('--p', type=float, help='exponent p', default=2.)
    parser.add_argument('--power', type=int, help='power n of the power lemma', default=2)
    parser.add_argument('--pretty', help='print a colored form to stderr', action='store_true')
    parser.add_argument('--progress', help='show a progress bar', action='store_true')
    parser.add_argument('--quadrature', help='use the polar quadrature even for p = 2', action='store_true')
    parser.add_argument('--refine', type=int, help='ascent steps after the family scan', default=0)
    parser.add_argument('--s', type=float, help='Lipschitz exponent', default=None)
    parser.add_argument('--seed', type=int, help='random seed', default=None)
    parser.add_argument('--series', type=str, help='series literal', default=None)
    parser.add_argument('--strict', help='nonzero exit on inconclusive results', action='store_true')
    parser.add_argument('--symbol', type=str, help='symbol g as a series literal', default=None)
    parser.add_argument('--weight', type=str, help='weight descriptor', default=default_weight)
    parser.add_argument('--xi', type=str, help='kernel point as [re, im]', default=None)

    args = parser.parse_args(argv)

    # init logging
    level = args.log_level or get_config().log_level
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level.upper(), logging.INFO))

    try:
        result, experiment = _run_command(args)
        _write_outputs(args, result, experiment)
    except (UsageError, LiteralError, DomainError, UnknownWeightKindError, ValidationError) as e:
        error_msg(e)
        return const.exit_usage
    except GuardError as e:
        error_msg(e)
        return const.exit_guard
    except ParaprodError as e:
        error_msg(e)
        return const.exit_error

    print(_dumps(result))

    flags = _collect_flags(result) & {const.flag_inconclusive, const.flag_truncation_limited}
    if args.strict and flags:
        error_msg(f'inconclusive result ({", ".join(sorted(flags))})')
        return const.exit_inconclusive
    return const.exit_ok


def main():
    sys.exit(cli())
