# Copyright (c) 2024 pyconlmc developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""
Command line interface.
"""
from __future__ import annotations
import argparse
import logging
from pathlib import Path
import sys
from typing import Any, Callable, Dict, List, Optional

from .const import Algorithm, Metric
from .definitions import PRESET_DEFINITIONS
from .exceptions import ConfigError, ConLMCError, DomainError
from .harness import (
    RunConfig, load_config, override_config, preset_config, run_experiment,
    write_outputs,
)
from .harness.runner import ExperimentReport, RunResult
from .metrics import validate_rates
from .schedules import ScheduleRequest, select_parameters

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--config', type=Path,
                        help='YAML or JSON run configuration')
    source.add_argument(
        '--preset', choices=[p.name for p in PRESET_DEFINITIONS],
        help='Built-in experiment preset'
    )
    parser.add_argument('--out', type=Path,
                        help='Output directory, overrides the configuration')
    parser.add_argument('--seed', type=int, nargs='+',
                        help='Seeds, override the configuration')
    parser.add_argument('--svg', action='store_true',
                        help='Emit scatter plots')
    parser.add_argument('--workers', type=int,
                        help='Number of worker threads')
    parser.add_argument('--n', type=int,
                        help='Number of steps per chain')
    parser.add_argument('--N', type=int,
                        help='Number of chains, samples per job')


def build_parser() -> argparse.ArgumentParser:
    """
    Builds the argument parser.
    """
    parser = argparse.ArgumentParser(
        prog='pyconlmc',
        description='Constrained Langevin Monte Carlo sampling experiments',
    )
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Increase verbosity, repeat for debug output')
    commands = parser.add_subparsers(dest='command', required=True)

    _add_run_arguments(commands.add_parser(
        'sample', help='Run one configuration'
    ))
    _add_run_arguments(commands.add_parser(
        'compare', help='Run and compare algorithms, with wall times'
    ))
    commands.add_parser(
        'validate-rates', help='Check the decay of the surrogate bias'
    )

    schedule = commands.add_parser(
        'schedule', help='Print the parameters reaching a target accuracy'
    )
    schedule.add_argument('--algo', required=True,
                          choices=[a.name for a in Algorithm])
    schedule.add_argument('--metric', required=True,
                          choices=[m.name for m in Metric])
    schedule.add_argument('--epsilon', type=float, required=True)
    schedule.add_argument('--dim', type=int, required=True)
    schedule.add_argument('--m', type=float, required=True,
                          help='Strong convexity of the potential')
    schedule.add_argument('--M', type=float, required=True,
                          help='Smoothness of the potential')
    schedule.add_argument('--M0', type=float, required=True,
                          help='Smoothness of the penalty term')
    schedule.add_argument('--outer-radius', type=float)
    schedule.add_argument('--constant', type=float, default=1.0)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    cfg = (
        load_config(args.config) if args.config is not None
        else preset_config(args.preset)
    )
    overrides: Dict[str, Any] = {}
    if args.out is not None:
        overrides['outputs'] = str(args.out)
    if args.seed:
        overrides['seeds'] = list(args.seed)
    if args.svg:
        overrides['emit_svg'] = True
    for name in ('workers', 'n', 'N'):
        if getattr(args, name) is not None:
            overrides[name] = getattr(args, name)
    if args.command == 'compare':
        overrides['record_timing'] = True
    return override_config(cfg, overrides) if overrides else cfg


def _job_done(result: RunResult) -> None:
    _LOGGER.info('Finished %s (seed %s)', result.algo.name, result.seed)


def _print_table(report: ExperimentReport) -> None:
    print(f'{"algo":<8} {"median_w1":>12} {"median_w2":>12}'
          f' {"median_wall_ms":>15}')
    for algo in report.config.algorithms:
        w1 = report.median(algo, 'w1')
        w2 = report.median(algo, 'w2')
        wall = report.median(algo, 'wall_ms')
        if w1 is None or w2 is None or wall is None:
            continue
        print(f'{algo.name:<8} {w1:>12.6g} {w2:>12.6g} {wall:>15.1f}')


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _run_config(args)
    report = run_experiment(cfg, on_job_done=_job_done)
    write_outputs(report, cfg)
    if args.command == 'compare':
        _print_table(report)
    else:
        print(f'Wrote results to {cfg.outputs}')
    return EXIT_OK


def _cmd_validate_rates(_args: argparse.Namespace) -> int:
    report = validate_rates()
    for case in report.cases:
        status = 'ok' if case.passed else 'FAILED'
        expected = (
            'not asserted' if case.expected is None
            else f'[{case.expected[0]:.3f}, {case.expected[1]:.3f}]'
        )
        print(f'p={case.p} q={case.q:g}: slope {case.slope:.4f}'
              f' (expected {expected}) {status}')
    status = 'ok' if report.lower_bound_passed else 'FAILED'
    print(f'lower bound ratio {report.lower_bound_ratio:.4f} {status}')
    return EXIT_OK if report.passed else EXIT_RUNTIME


def _cmd_schedule(args: argparse.Namespace) -> int:
    try:
        request = ScheduleRequest(
            algo=Algorithm[args.algo], metric=Metric[args.metric],
            epsilon=args.epsilon, p=args.dim, m=args.m, M=args.M,
            M0=args.M0, user_constant=args.constant,
            outer_radius=args.outer_radius,
        )
    except DomainError as exc:
        _LOGGER.error('%s', exc)
        return EXIT_CONFIG
    plan = select_parameters(request)
    for key, value in plan._asdict().items():
        if value is not None:
            print(f'{key} = {value}')
    return EXIT_OK


_COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    'sample': _cmd_run,
    'compare': _cmd_run,
    'validate-rates': _cmd_validate_rates,
    'schedule': _cmd_schedule,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the `pyconlmc` command.

    :return: 0 on success, 1 on configuration errors, 2 on runtime errors
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(
            logging.WARNING, logging.INFO, logging.DEBUG
        )[min(args.verbose, 2)],
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        _LOGGER.error('%s', exc)
        return EXIT_CONFIG
    except (ConLMCError, OSError) as exc:
        _LOGGER.error('%s', exc)
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
