"""Command-line entry point: grid, ranks, critvals, test, simulate, table1.

Machine-readable payloads (JSON, CSV) go to stdout or ``--out``; logs go
to stderr. Exit codes: 0 success, 1 usage or validation, 2 IO, 3 internal.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from .critical_values import CriticalValueCache, atomic_write_text
from .dataset import Dataset
from .empirical_map import empirical_map, write_assignment_csv
from .errors import InvalidArgumentError, UnsupportedError
from .factorization_search import best_factorization, factorization_costs
from .grid import Grid
from .grids import build_grid
from .power_curve import DEFAULT_SHIFTS, power_curve, write_power_curve_csv
from .rank_sign import extract_rank_sign, write_rank_sign_csv
from .reference_kind import ReferenceKind
from .scenario import PRESETS, Scenario, ScenarioKind
from .score_kind import ScoreKind
from .scores import scored_sample, write_scored_csv
from .settings import Settings
from .two_sample_procedure import Procedure, TwoSampleConfig, prepare_rank_test

logger = logging.getLogger('otrank')

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INTERNAL = 0, 1, 2, 3


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{self.prog}: error: {message}\n')


def parse_seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f'seed must be an unsigned 64-bit integer, got {text}')
    return value


def parse_int_list(text: str) -> list[int]:
    return [int(item) for item in text.split(',') if item.strip()]


def parse_shifts(text: str) -> list[float]:
    """'start:stop:step' (inclusive) or a comma-separated list."""
    if ':' in text:
        try:
            start, stop, step = (float(part) for part in text.split(':'))
        except ValueError:
            raise argparse.ArgumentTypeError(f'shift range must be start:stop:step, got {text}')
        if step <= 0 or stop < start:
            raise argparse.ArgumentTypeError(f'shift range {text} is empty')
        count = int(round((stop - start) / step)) + 1
        return [round(start + k * step, 10) for k in range(count)]
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'shifts must be numbers, got {text}')


def parse_choices(enum_type):
    def parse(text: str) -> list:
        try:
            return [enum_type(item.strip()) for item in text.split(',') if item.strip()]
        except ValueError:
            names = ', '.join(member.value for member in enum_type)
            raise argparse.ArgumentTypeError(f'expected a comma-separated list of {names}, got {text}')
    return parse


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        atomic_write_text(Path(out), text)


def cmd_grid(args, settings: Settings) -> int:
    grid = build_grid(args.dim, args.n, args.reference, discretization=args.discretization,
                      threads=settings.threads)
    emit(grid.to_json() + '\n', args.out)
    return EXIT_OK


def cmd_ranks(args, settings: Settings) -> int:
    grid = Grid.from_json(Path(args.grid).read_text(encoding='utf-8'))
    data = Dataset.from_csv(args.data)
    emap = empirical_map(data, grid)
    if args.assignment_out:
        write_assignment_csv(emap, args.assignment_out)
    if args.scores_out:
        write_scored_csv(scored_sample(emap, args.score), args.scores_out)
    buffer = io.StringIO(newline='')
    # cubic vector ranks have no rank/sign split; their payload is the scored sample
    if grid.kind.is_spherical:
        write_rank_sign_csv(extract_rank_sign(emap), buffer)
    else:
        write_scored_csv(scored_sample(emap, args.score), buffer)
    emit(buffer.getvalue(), args.ranks_out or args.out)
    return EXIT_OK


def cmd_critvals(args, settings: Settings) -> int:
    grid = Grid.from_json(Path(args.grid).read_text(encoding='utf-8'))
    cache = CriticalValueCache(settings.cache_dir)
    table = cache.get_or_compute(grid, args.score, args.n1, args.alpha, settings.replications(args.reps),
                                 args.seed, settings.threads)
    emit(json.dumps(table.summary(), sort_keys=True) + '\n', args.out)
    return EXIT_OK


def cmd_test(args, settings: Settings) -> int:
    grid = Grid.from_json(Path(args.grid).read_text(encoding='utf-8'))
    data1 = Dataset.from_csv(args.data1)
    data2 = Dataset.from_csv(args.data2)
    if data1.n + data2.n != grid.n:
        raise InvalidArgumentError(
            f'samples hold {data1.n} + {data2.n} = {data1.n + data2.n} observations, grid expects n={grid.n}'
        )
    cfg = TwoSampleConfig(n1=data1.n, n2=data2.n, alpha=args.alpha, grid_kind=grid.kind,
                          score_kind=args.score, mc_reps=settings.replications(args.reps), seed=args.seed)
    prepared = prepare_rank_test(cfg, grid=grid, cache=CriticalValueCache(settings.cache_dir),
                                 threads=settings.threads)
    result = prepared.run(data1, data2)
    emit(result.to_json() + '\n', args.out)
    return EXIT_OK


def resolve_scenario(args) -> Scenario:
    if args.scenario_file:
        return Scenario.from_json(Path(args.scenario_file).read_text(encoding='utf-8'))
    if args.scenario in PRESETS:
        return PRESETS[args.scenario]
    if args.dim is None:
        raise InvalidArgumentError(f'scenario {args.scenario} is not a preset; pass --dim')
    try:
        kind = ScenarioKind(args.scenario)
    except ValueError:
        names = ', '.join([*PRESETS, *(member.value for member in ScenarioKind)])
        raise InvalidArgumentError(f'unknown scenario {args.scenario}, expected one of {names}')
    return Scenario(kind, args.dim, df=args.df)


def cmd_simulate(args, settings: Settings) -> int:
    scenario = resolve_scenario(args)
    curve = power_curve(scenario, args.n, args.tests, shifts=args.shifts, reps=args.reps, seed=args.seed,
                        alpha=args.alpha, mc_reps=settings.replications(args.mc_reps),
                        cache=CriticalValueCache(settings.cache_dir),
                        threads=settings.threads)
    buffer = io.StringIO(newline='')
    write_power_curve_csv(curve, buffer)
    emit(buffer.getvalue(), args.out)
    return EXIT_OK


def cmd_table1(args, settings: Settings) -> int:
    buffer = io.StringIO(newline='')
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['d', 'n', 'reference', 'n_r', 'n_s', 'n_0', 'w2'])
    for dim in args.dims:
        for reference in args.references:
            for n in args.ns:
                costs = factorization_costs(n, dim, reference, args.discretization, settings.threads)
                best, best_cost = best_factorization(costs)
                logger.info('d=%d n=%d %s: n_r=%d', dim, n, reference.value, best.n_r)
                writer.writerow([dim, n, reference.value, best.n_r, best.n_s, best.n_0, repr(best_cost)])
    emit(buffer.getvalue(), args.out)
    return EXIT_OK


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument('--cache-dir', default=None, help='critical-value cache (default $OTRANK_CACHE or ./.otrank-cache)')
    common.add_argument('--threads', type=int, default=None, help='worker pool size')
    common.add_argument('--out', default=None, help='write the payload here instead of stdout')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', action='store_true')
    verbosity.add_argument('--quiet', action='store_true')

    parser = ArgumentParser(prog='otrank', description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    grid = commands.add_parser('grid', parents=[common], help='build a reference grid')
    grid.add_argument('--dim', type=int, required=True)
    grid.add_argument('--n', type=int, required=True)
    grid.add_argument('--reference', type=ReferenceKind, required=True,
                      choices=list(ReferenceKind), metavar='|'.join(kind.value for kind in ReferenceKind))
    grid.add_argument('--discretization', type=int, default=None, help='W2 oracle size M')
    grid.set_defaults(handler=cmd_grid)

    ranks = commands.add_parser('ranks', parents=[common], help='ranks, signs, and scores of a sample')
    ranks.add_argument('--data', required=True)
    ranks.add_argument('--grid', required=True)
    ranks.add_argument('--score', type=ScoreKind, default=ScoreKind.WILCOXON, choices=list(ScoreKind),
                       metavar='|'.join(kind.value for kind in ScoreKind))
    ranks.add_argument('--ranks-out', default=None)
    ranks.add_argument('--scores-out', default=None)
    ranks.add_argument('--assignment-out', default=None)
    ranks.set_defaults(handler=cmd_ranks)

    critvals = commands.add_parser('critvals', parents=[common], help='Monte-Carlo critical values')
    critvals.add_argument('--grid', required=True)
    critvals.add_argument('--score', type=ScoreKind, default=ScoreKind.WILCOXON, choices=list(ScoreKind),
                          metavar='|'.join(kind.value for kind in ScoreKind))
    critvals.add_argument('--n1', type=int, required=True)
    critvals.add_argument('--alpha', type=float, default=0.05)
    critvals.add_argument('--reps', type=int, default=None, help='Monte-Carlo replications (default 40000)')
    critvals.add_argument('--seed', type=parse_seed, default=0)
    critvals.set_defaults(handler=cmd_critvals)

    test = commands.add_parser('test', parents=[common], help='two-sample rank test')
    test.add_argument('--data1', required=True)
    test.add_argument('--data2', required=True)
    test.add_argument('--grid', required=True)
    test.add_argument('--score', type=ScoreKind, default=ScoreKind.WILCOXON, choices=list(ScoreKind),
                      metavar='|'.join(kind.value for kind in ScoreKind))
    test.add_argument('--alpha', type=float, default=0.05)
    test.add_argument('--reps', type=int, default=None, help='Monte-Carlo replications (default 40000)')
    test.add_argument('--seed', type=parse_seed, default=0)
    test.set_defaults(handler=cmd_test)

    simulate = commands.add_parser('simulate', parents=[common], help='power curve over location shifts')
    source = simulate.add_mutually_exclusive_group(required=True)
    source.add_argument('--scenario', help=f'preset ({", ".join(PRESETS)}) or scenario kind with --dim')
    source.add_argument('--scenario-file', help='JSON scenario configuration')
    simulate.add_argument('--dim', type=int, default=None)
    simulate.add_argument('--df', type=float, default=None)
    simulate.add_argument('--tests', type=parse_choices(Procedure), required=True)
    simulate.add_argument('--n', type=int, required=True)
    simulate.add_argument('--reps', type=int, default=500)
    simulate.add_argument('--shifts', type=parse_shifts, default=list(DEFAULT_SHIFTS))
    simulate.add_argument('--seed', type=parse_seed, default=0)
    simulate.add_argument('--alpha', type=float, default=0.05)
    simulate.add_argument('--mc-reps', type=int, default=None, help='Monte-Carlo replications (default 40000)')
    simulate.set_defaults(handler=cmd_simulate)

    table1 = commands.add_parser('table1', parents=[common], help='W2-optimal factorizations')
    table1.add_argument('--dims', type=parse_int_list, default=[2, 5])
    table1.add_argument('--ns', type=parse_int_list, default=[50, 100, 200, 300, 400])
    table1.add_argument('--references', type=parse_choices(ReferenceKind),
                        default=[ReferenceKind.SPHERICAL_UNIFORM, ReferenceKind.GAUSSIAN_SPHERICAL])
    table1.add_argument('--discretization', type=int, default=None)
    table1.set_defaults(handler=cmd_table1)
    return parser


def configure_logging(args) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s', force=True)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args)
    try:
        settings = Settings.from_env(cache_dir=args.cache_dir, threads=args.threads)
        return args.handler(args, settings)
    except (InvalidArgumentError, UnsupportedError) as exc:
        logger.error('%s', exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error('%s', exc)
        return EXIT_IO
    except Exception:
        logger.exception('internal error')
        return EXIT_INTERNAL


if __name__ == '__main__':
    sys.exit(main())
