"""
Command line front end.

    hyperball gen --family normal --dim 8 --count 10 --out corpus/
    hyperball classify corpus/normal-0000.gel.json
    hyperball dist x.json y.json
    hyperball compose a.gel.json b.gel.json --invert 2 --out ab.gel.json
    hyperball verify --seed 7

Exit codes: 0 success, 1 verification failures, 2 usage or parse errors,
3 undetermined classification, 4 a mathematical precondition does not hold.
"""
import argparse
import logging
import sys
import typing as t
from pathlib import Path

import numpy as np

from hyperball import api, classify, families, group, models, verify
from hyperball.ball import caratheodory_distance
from hyperball.config import resolve_config
from hyperball.exceptions import FormViolation, MathError, ParseError, UsageError
from hyperball.models import RunConfig
from hyperball.utils import dumps, element_filename, format_distance

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_UNDETERMINED = 3
EXIT_MATH = 4


def cmd_gen(config: RunConfig) -> t.List[Path]:
    """
    Write `count` elements of the configured family to `out`. Every element
    is checked against the form and the family predicate before it is written.
    Raises:
        FormViolation: a generated element fails either check
    """
    family = families.normalize_family(config.family)
    rng = np.random.default_rng(config.seed)
    out = Path(config.out)
    paths = []
    for i in range(config.count):
        T = families.generate(family, config.dim, rng)
        if not group.preserves_form(T, config.tol):
            raise FormViolation('generated %s element %d violates the form' % (family.value, i))
        if not families.family_predicate(family, T, config.tol):
            raise FormViolation('generated element %d is not %s' % (i, family.value))
        paths.append(api.save_element(T, out / element_filename(family.value, i)))
    logger.info('Generated %d %s elements in %s', len(paths), family.value, out)
    return paths


def cmd_classify(path: str, config: RunConfig) -> classify.Classification:
    T = api.load_element(path, config.tol)
    return classify.dynamical_type(T, config.tol, seed=config.seed)


def cmd_dist(x_path: str, y_path: str) -> float:
    return caratheodory_distance(api.load_point(x_path), api.load_point(y_path))


def cmd_compose(paths: t.Sequence[str], invert: t.Sequence[int], config: RunConfig) -> group.GElement:
    """
    Product of the elements in `paths`, left to right. Elements whose
    1-based position is listed in `invert` enter as their inverses.
    """
    if not paths:
        raise UsageError('compose needs at least one element file')
    for index in invert:
        if not 1 <= index <= len(paths):
            raise UsageError('--invert %d is outside 1..%d' % (index, len(paths)))

    product = None
    for position, path in enumerate(paths, start=1):
        T = api.load_element(path, config.tol)
        if position in invert:
            T = group.inverse(T)
        product = T if product is None else group.compose(product, T, config.tol)
    return product


def cmd_verify(config: RunConfig, cases: t.Optional[int] = None) -> models.VerifyReport:
    return verify.run_catalog(seed=config.seed, tol=config.tol, cases=cases or verify.DEFAULT_CASES)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, help='tolerance (default 1e-10, or HYPERBALL_TOL)')
    common.add_argument('--seed', type=int, help='random seed (default 42)')

    parser = argparse.ArgumentParser(prog='hyperball', description=__doc__.split('\n\n')[0].strip())
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    gen = commands.add_parser('gen', parents=[common], help='write a seeded corpus of elements')
    gen.add_argument('--family', help='one of: %s' % ', '.join(f.value for f in families.Family))
    gen.add_argument('--dim', type=int)
    gen.add_argument('--count', type=int)
    gen.add_argument('--out', help='output directory')

    cls = commands.add_parser('classify', parents=[common], help='classify an element file')
    cls.add_argument('file')

    dist = commands.add_parser('dist', parents=[common], help='Caratheodory distance of two point files')
    dist.add_argument('x')
    dist.add_argument('y')

    comp = commands.add_parser('compose', parents=[common], help='multiply element files left to right')
    comp.add_argument('files', nargs='+')
    comp.add_argument('--invert', type=int, action='append', default=[], metavar='K',
                      help='use the inverse of the K-th file (1-based, repeatable)')
    comp.add_argument('--out', help='output file (default: standard output)')

    ver = commands.add_parser('verify', parents=[common], help='run the property catalog')
    ver.add_argument('--count', type=int, help='cases per dimension and suite')
    ver.add_argument('--out', help='write the JSON report to this file')
    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    names = ('dim', 'seed', 'tol', 'count', 'family')
    settings = {name: getattr(args, name, None) for name in names}
    if args.command == 'gen':
        settings['out'] = args.out
    return resolve_config(**settings)


def _dispatch(args: argparse.Namespace) -> int:
    config = _config_from(args)

    if args.command == 'gen':
        for path in cmd_gen(config):
            print(path)
        return EXIT_OK

    if args.command == 'classify':
        result = cmd_classify(args.file, config)
        sys.stdout.write(dumps(models.encode_classification(result)))
        return EXIT_UNDETERMINED if result.kind is classify.Kind.undetermined else EXIT_OK

    if args.command == 'dist':
        print(format_distance(cmd_dist(args.x, args.y)))
        return EXIT_OK

    if args.command == 'compose':
        product = cmd_compose(args.files, args.invert, config)
        if args.out:
            api.save_element(product, args.out)
        else:
            sys.stdout.write(dumps(models.encode_element(product)))
        return EXIT_OK

    report = cmd_verify(config, args.count)
    report.pretty_print()
    if args.out:
        api.write_document(report.to_primitive(), args.out)
    print('wall time %.2fs' % report.wall_time, file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILURES


def main(argv: t.Optional[t.Sequence[str]] = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        return _dispatch(args)
    except (UsageError, ParseError) as exc:
        logger.error('%s', exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error('%s', exc)
        return EXIT_USAGE
    except MathError as exc:
        logger.error('%s: %s', type(exc).__name__, exc)
        return EXIT_MATH


def run():
    sys.exit(main())


if __name__ == '__main__':
    run()
