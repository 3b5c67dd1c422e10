import argparse
import json
import logging
import sys
from typing import List, Optional

from ergodic_rl import __version__
from ergodic_rl.cli.commands import cmd_analyze_chain, cmd_run, cmd_sweep, \
    cmd_plot, cmd_list, PLOT_SCHEMAS
from ergodic_rl.exceptions import ConfigError, SpecParseError, \
    UnknownComponent, SchemaError
from ergodic_rl.utils.log_utils import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNKNOWN_COMPONENT = 3
EXIT_SCHEMA = 4


def build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(
        prog='ergodic-rl',
        description='Ergodicity analysis and ergodicity-aware learners.'
    )
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for info, -vv for debug logging')
    parser.add_argument('--version', action='version', version=__version__)
    subparsers = parser.add_subparsers(dest='command', required=True)

    analyze = subparsers.add_parser(
        'analyze-chain', help='classify the chain a policy induces'
    )
    analyze.add_argument('mdp', help='MDP spec YAML file')
    analyze.add_argument('--policy', help='policy spec YAML file')
    analyze.add_argument('--dot', help='write the condensation graph here')

    run = subparsers.add_parser('run', help='run an experiment config')
    run.add_argument('config', help='experiment config YAML file')

    sweep = subparsers.add_parser('sweep', help='run a config over its grid')
    sweep.add_argument('config', help='experiment config YAML file')

    plot = subparsers.add_parser('plot', help='plot experiment CSVs')
    plot.add_argument('kind', choices=sorted(PLOT_SCHEMAS))
    plot.add_argument('inputs', nargs='+', help='input CSV files')
    plot.add_argument('-o', '--output', required=True,
                      help='output file, svg unless the suffix says other')
    plot.add_argument('--options', default='{}',
                      help='JSON object of keyword options for the plot')

    subparsers.add_parser('list', help='list registered components')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line and return the exit code: 0 on success, 2 for
    config or spec errors, 3 for unknown components, 4 for CSV schema
    errors.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.command == 'analyze-chain':
            print(cmd_analyze_chain(args.mdp, args.policy, args.dot))
        elif args.command == 'run':
            print(cmd_run(args.config))
        elif args.command == 'sweep':
            print(cmd_sweep(args.config))
        elif args.command == 'plot':
            try:
                options = json.loads(args.options)
            except json.JSONDecodeError as error:
                raise ConfigError(f'--options is not valid JSON: {error}')
            print(cmd_plot(args.kind, args.inputs, args.output, **options))
        elif args.command == 'list':
            print(cmd_list())
    except (ConfigError, SpecParseError) as error:
        print(f'error: {error}', file=sys.stderr)
        return EXIT_CONFIG
    except UnknownComponent as error:
        print(f'error: {error}', file=sys.stderr)
        return EXIT_UNKNOWN_COMPONENT
    except SchemaError as error:
        print(f'error: {error}', file=sys.stderr)
        return EXIT_SCHEMA
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
