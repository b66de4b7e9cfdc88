'''
Command-line front end: python -m lieclass.cli <subcommand> [options].

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for parse, catalog, genericity and budget errors.
'''
import io
import sys
import copy
import json
import argparse

import pandas as pd

from .lieclass import LieClass, DEFAULTS, load_config
from .graded import GradedLieAlgebra
from .utils import checkups
from .utils.errors import (ParseError, CatalogError, UnknownVariableError, GenericityError, BudgetExceededError,
                           StructureError, ChartMismatchError, DivisionByZeroError, ConsistencyError)
from .utils.family import list_models
from .utils.prepare_model import load_json, load_generating_functions, load_fields, validate_report


SUBCOMMANDS = ['flags', 'cauchy', 'reduce', 'symbol', 'tanaka', 'check-symmetry', 'commutators', 'grading',
               'nondeg', 'solve-sym', 'lbt', 'catalog', 'validate']

USAGE_ERRORS = (ParseError, CatalogError, UnknownVariableError, GenericityError, BudgetExceededError)


def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    source = parser.add_argument_group('model')
    source.add_argument('--model', help='catalog name, see the catalog subcommand')
    source.add_argument('--file', help='model file; tanaka also accepts a Lie algebra file')
    source.add_argument('--k', type=int)
    source.add_argument('--m', type=int)
    source.add_argument('--m-list', dest='m_list', help='comma separated exponents, e.g. 0,1,2')
    source.add_argument('--variant', type=int)
    options = parser.add_argument_group('options')
    options.add_argument('--json', action='store_true', help='machine-readable output')
    options.add_argument('--seed', type=int)
    options.add_argument('--max-steps', dest='max_steps', type=int)
    options.add_argument('--degree', type=int)
    options.add_argument('--weights', help="solver weights: 'auto', 'none' or a JSON file; grading weights file")
    options.add_argument('--config', help='YAML configuration file')
    options.add_argument('--output', help='also save the JSON report to this path')
    options.add_argument('--verbose', action='store_true')
    return parser


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='lieclass', description='Exact symmetry and reduction toolkit for '
                                     'overdetermined PDE systems of Lie class one.')
    sub = parser.add_subparsers(dest='command')
    flags = sub.add_parser('flags', parents=[common], help='weak and strong derived flags')
    flags.add_argument('--strong', action='store_true')
    flags.add_argument('--weak', action='store_true')
    flags.add_argument('--equation', action='store_true', help='flags of C_E instead of the reduction')
    sub.add_parser('cauchy', parents=[common], help='Cauchy characteristics')
    sub.add_parser('reduce', parents=[common], help='reduction by Cauchy characteristics')
    sub.add_parser('symbol', parents=[common], help='symbol algebra at a generic point')
    tanaka = sub.add_parser('tanaka', parents=[common], help='Tanaka prolongation')
    tanaka.add_argument('--builtin', choices=['nk'])
    tanaka.add_argument('--max-degree', dest='max_degree', type=int)
    check = sub.add_parser('check-symmetry', parents=[common], help='verify listed or given symmetries')
    check.add_argument('--generating-functions', dest='generating_functions')
    check.add_argument('--fields')
    commutators = sub.add_parser('commutators', parents=[common], help='commutator table')
    commutators.add_argument('--fields')
    grading = sub.add_parser('grading', parents=[common], help='grading and bi-grading checks')
    grading.add_argument('--fields')
    grading.add_argument('--biweights')
    sub.add_parser('nondeg', parents=[common], help='non-degeneracy conditions')
    sub.add_parser('solve-sym', parents=[common], help='polynomial symmetries up to a degree')
    lbt = sub.add_parser('lbt', parents=[common], help='restriction of external symmetries')
    lbt.add_argument('--generating-functions', dest='generating_functions')
    sub.add_parser('catalog', parents=[common], help='list the catalog models')
    validate = sub.add_parser('validate', parents=[common], help='re-check a JSON report')
    validate.add_argument('report')
    return parser


def _config(args):
    if args.config:
        config = checkups(DEFAULTS, load_config(args.config))
    else:
        config = copy.deepcopy(DEFAULTS)
    if args.seed is not None:
        config['seed'] = args.seed
    if args.max_steps is not None:
        config['max_steps'] = args.max_steps
    if args.degree is not None:
        config['solver']['degree'] = args.degree
    if getattr(args, 'max_degree', None) is not None:
        config['max_degree'] = args.max_degree
    if args.verbose:
        config['verbose'] = True
    return config


def _session(args, config, needs_model=True):
    if args.model and args.file:
        raise StructureError('give either --model or --file, not both')
    params = {'k': args.k, 'm': args.m, 'm_list': args.m_list, 'variant': args.variant}
    if args.model:
        return LieClass(config=config, model=args.model, params=params)
    if args.file:
        return LieClass(config=config, model_file=args.file)
    if needs_model:
        raise StructureError('a model source is needed: --model NAME or --file PATH')
    return LieClass(config=config)


def _weights(value):
    if value is None or value == 'auto':
        return 'auto'
    if value == 'none':
        return None
    data = load_json(value)
    return dict((name, tuple(w) if isinstance(w, list) else w) for name, w in data.items())


def _catalog_report():
    models = list_models()
    frame = pd.DataFrame([[', '.join(p), d] for _, p, d in models], index=[n for n, _, _ in models],
                         columns=['parameters', 'description'])
    data = {'kind': 'catalog', 'models': [{'name': n, 'parameters': p, 'description': d} for n, p, d in models]}
    return data, frame.to_string()


def dispatch(args):
    """
    Runs one subcommand.

    Returns
    -------
        report : object with to_dict() and to_text(), or a (dictionary, text) pair
    """
    config = _config(args)
    command = args.command
    if command == 'catalog':
        return _catalog_report()
    if command == 'validate':
        return validate_report(load_json(args.report))
    if command == 'tanaka':
        if args.builtin == 'nk':
            if args.k is None:
                raise StructureError('--builtin nk needs --k')
            return LieClass(config=config).tanaka(builtin_k=args.k)
        if args.file and not args.model:
            data = load_json(args.file)
            if isinstance(data, dict) and (data.get('kind') == 'lie_algebra' or 'layers' in data):
                return LieClass(config=config).tanaka(algebra=GradedLieAlgebra.from_dict(data))
        return _session(args, config).tanaka()
    session = _session(args, config)
    if command == 'flags':
        weak, strong = args.weak, args.strong
        if not weak and not strong:
            weak = strong = True
        return session.flags(weak, strong, args.equation)
    if command == 'cauchy':
        return session.cauchy()
    if command == 'reduce':
        return session.reduce()
    if command == 'symbol':
        return session.symbol()
    if command == 'check-symmetry':
        if args.fields:
            return session.check_symmetry(fields=load_fields(args.fields, session.distribution.chart))
        functions = load_generating_functions(args.generating_functions) if args.generating_functions else None
        return session.check_symmetry(functions=functions)
    if command == 'commutators':
        fields = load_fields(args.fields, session.distribution.chart) if args.fields else None
        return session.commutators(fields)
    if command == 'grading':
        fields = load_fields(args.fields, session.distribution.chart) if args.fields else None
        weights = _weights(args.weights)
        weights = None if weights == 'auto' else weights
        biweights = _weights(args.biweights) if args.biweights else None
        return session.grading(weights, biweights, fields)
    if command == 'nondeg':
        return session.nondeg()
    if command == 'solve-sym':
        return session.solve_sym(config['solver']['degree'], _weights(args.weights))
    if command == 'lbt':
        functions = load_generating_functions(args.generating_functions) if args.generating_functions else None
        return session.lbt(functions)
    raise StructureError('unknown subcommand %s' % command)


def _emit(report, as_json, stream):
    if isinstance(report, tuple):
        data, text = report
        passed = True
    else:
        data, text = report.to_dict(), report.to_text()
        passed = getattr(report, 'passed', True)
    if as_json:
        stream.write(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n')
    else:
        stream.write(text + '\n')
    return data, passed


def run(argv=None, stdout=None, stderr=None):
    """
    Parses argv, runs the subcommand and writes its report.

    Returns
    -------
        code : int
            0 success, 1 failed check, 2 parse/catalog/genericity/budget error or bad invocation.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    if args.command is None:
        parser.print_help(stderr)
        return 2
    try:
        report = dispatch(args)
        data, passed = _emit(report, args.json, stdout)
        if getattr(args, 'output', None):
            with io.open(args.output, 'w', encoding='utf-8') as f:
                f.write(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n')
    except USAGE_ERRORS as e:
        stderr.write('error: %s\n' % (e,))
        return 2
    except (StructureError, ChartMismatchError, DivisionByZeroError, ConsistencyError, IOError) as e:
        stderr.write('error: %s\n' % (e,))
        return 2
    return 0 if passed else 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
