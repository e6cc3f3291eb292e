"""
File: parser.py
Description: CLI command parser

@author Derek Garcia
"""

from argparse import ArgumentParser, ArgumentTypeError, Namespace
from typing import Dict

from loggy import Level, DEFAULT_LOG_LEVEL

PROG_NAME = "dbdtc"

INIT_METHODS = ["cyclic", "lpm", "systematic"]
DESIGN_NAMES = ["srs", "systematic", "lpm", "circular", "dbdtc"]


#
# Custom types
#

def _key_values(value: str) -> Dict[str, str]:
    """
    Parse 'a=1,b=2' into a dict

    :param value: Raw cli value
    :raises ArgumentTypeError: If an entry is not of the form key=value
    :return: Dict of keys to raw values, in given order
    """
    pairs = {}
    for entry in value.split(','):
        key, sep, raw = entry.partition('=')
        if not sep or not key.strip() or not raw.strip():
            raise ArgumentTypeError(f"Expected key=value, got '{entry}'")
        pairs[key.strip()] = raw.strip()
    return pairs


def synthetic_type(value: str) -> Dict[str, int]:
    """
    Parse 'N=1000,p=5'

    :param value: Raw cli value
    :raises ArgumentTypeError: If N or p is missing or not a positive integer
    :return: Dict with keys N and p
    """
    pairs = _key_values(value)
    if set(pairs) != {'N', 'p'}:
        raise ArgumentTypeError(f"Expected N=<size>,p=<dimension>, got '{value}'")
    try:
        parsed = {k: int(v) for k, v in pairs.items()}
    except ValueError:
        raise ArgumentTypeError(f"N and p must be integers, got '{value}'")
    if parsed['N'] < 1 or parsed['p'] < 1:
        raise ArgumentTypeError(f"N and p must be positive, got '{value}'")
    return parsed


def allocation_type(value: str) -> Dict[str, int]:
    """
    Parse 'north=5,south=3'

    :param value: Raw cli value
    :raises ArgumentTypeError: If a sample size is not an integer
    :return: Dict of stratum label to sample size
    """
    try:
        return {k: int(v) for k, v in _key_values(value).items()}
    except ValueError:
        raise ArgumentTypeError(f"Stratum sample sizes must be integers, got '{value}'")


def column_list_type(value: str) -> list[str]:
    """
    Parse 'a,b,c'

    :param value: Raw cli value
    :return: List of column names
    """
    return [c.strip() for c in value.split(',') if c.strip()]


#
# Generic Flags
#

def _add_population_args(command, required: bool = True) -> None:
    """
    Add population source args to the command

    :param command: Command to add arg to
    :param required: A population source must be given (Default: True)
    """
    population = command.add_argument_group("Population")
    source = population.add_mutually_exclusive_group(required=required)
    source.add_argument('--synthetic',
                        metavar="<N=size,p=dimension>",
                        type=synthetic_type,
                        help="Synthetic population with auxiliary values uniform on [0,1], i.e. N=1000,p=5")
    source.add_argument('-i', '--input',
                        metavar="<csv-file-path>",
                        type=str,
                        help="Path to population csv file")

    population.add_argument('--aux',
                            metavar="<columns>",
                            type=column_list_type,
                            help="Comma separated auxiliary columns of the input file, i.e. x,y,elev")
    population.add_argument('--id-column',
                            metavar="<column>",
                            type=str,
                            help="Column of unit ids (Default: 1..N in file order)")
    population.add_argument('--stratum-column',
                            metavar="<column>",
                            type=str,
                            help="Column of stratum labels")
    population.add_argument('--standardize',
                            action="store_true",
                            help="Scale auxiliary variables to mean 0 and standard deviation 1")


def _add_targets_arg(command) -> None:
    """
    Add study variables arg to the command

    :param command: Command to add arg to
    """
    command.add_argument('--targets',
                         metavar="<columns>",
                         type=column_list_type,
                         help="Comma separated study variables to estimate totals of, i.e. zinc,copper")


def _add_anneal_args(command) -> None:
    """
    Add initialization and annealing args to the command

    :param command: Command to add arg to
    """
    anneal = command.add_argument_group("Annealing")
    anneal.add_argument('--iters',
                        metavar="<iterations>",
                        type=int,
                        help="Number of annealing iterations (Default: config anneal.iterations)")
    anneal.add_argument('--init',
                        choices=INIT_METHODS,
                        default="cyclic",
                        help="Initial configuration, cyclic construction or sampling based with a "
                             "fixed size sampler (Default: cyclic)")
    anneal.add_argument('--t0',
                        metavar="<temperature>",
                        type=float,
                        help="Initial temperature (Default: probed from random swaps)")
    anneal.add_argument('--alpha',
                        metavar="<rate>",
                        type=float,
                        help="Geometric cooling rate (Default: reach 1e-8 * T0 by the last iteration)")
    anneal.add_argument('--metropolis',
                        action="store_true",
                        help="Accept equal energy moves")


def _add_compression_args(command) -> None:
    """
    Add compression args to the command

    :param command: Command to add arg to
    """
    compression = command.add_argument_group("Compression")
    compression.add_argument('--compress',
                             action="store_true",
                             help="Compress the population with the local pivotal method before optimizing")
    size = compression.add_mutually_exclusive_group()
    size.add_argument('--compress-size',
                      metavar="<M*>",
                      type=int,
                      help="Configuration size after compression (Default: floor(N / n))")
    size.add_argument('--compress-ratio',
                      metavar="<ratio>",
                      type=float,
                      help="Fraction of floor(N / n) to keep after compression, trading accuracy for speed")


def _add_plan_args(command) -> None:
    """
    Add compression plan and strata args to the command

    :param command: Command to add arg to
    """
    plan_group = command.add_mutually_exclusive_group()
    plan_group.add_argument('--plan',
                            metavar="<json-file-path>",
                            type=str,
                            help="Compression plan written by optimize --compress")
    plan_group.add_argument('--strata',
                            metavar="<json-file-path>",
                            type=str,
                            help="Strata file written by optimize --stratum-n")


#
# Custom validation
#

def _validate_population_args(parser: ArgumentParser, args: Namespace) -> None:
    """
    Validate the usage of the population args

    :param parser: Parser used to parse cli args
    :param args: Args to verify
    """
    if 'input' not in args:
        return
    if args.input and not args.aux:
        parser.error("The argument --input (-i) requires --aux")
    if args.synthetic and (args.aux or args.id_column or args.stratum_column):
        parser.error("The arguments --aux, --id-column and --stratum-column can only be used with --input (-i)")


def _validate_optimize_args(parser: ArgumentParser, args: Namespace) -> None:
    """
    Validate the usage of the optimize args

    :param parser: Parser used to parse cli args
    :param args: Args to verify
    """
    if args.command != 'optimize':
        return
    if (args.n is None) == (args.stratum_n is None):
        parser.error("Exactly one of --n and --stratum-n is required")
    if args.stratum_n and not args.stratum_column:
        parser.error("The argument --stratum-n requires --stratum-column")
    if args.stratum_n and args.compress:
        parser.error("The argument --compress cannot be used with --stratum-n")
    if (args.compress_size or args.compress_ratio) and not args.compress:
        parser.error("The arguments --compress-size and --compress-ratio require --compress")


#
# Commands
#

def _add_generate_command(root_command) -> None:
    """
    Add the generate command

    :param root_command: Command to add arg to
    """
    desc = "Generate a synthetic population with auxiliary values uniform on [0,1] and save it as csv"
    generate = root_command.add_parser('generate', description=desc, help=desc)
    generate.add_argument('--size',
                          metavar="<N>",
                          type=int,
                          required=True,
                          help="Number of units")
    generate.add_argument('--dims',
                          metavar="<p>",
                          type=int,
                          required=True,
                          help="Number of auxiliary variables")


def _add_optimize_command(root_command) -> None:
    """
    Add the optimize command

    :param root_command: Command to add arg to
    """
    desc = "Build a minimum tactical configuration and optimize its expected energy by simulated annealing"
    optimize = root_command.add_parser('optimize', description=desc, help=desc)
    _add_population_args(optimize)
    _add_anneal_args(optimize)
    _add_compression_args(optimize)

    size = optimize.add_argument_group("Sample size")
    size.add_argument('--n',
                      metavar="<n>",
                      type=int,
                      help="Sample size")
    size.add_argument('--stratum-n',
                      metavar="<label=n,...>",
                      type=allocation_type,
                      help="Sample size of every stratum, runs every stratum independently, i.e. north=5,south=3")


def _add_draw_command(root_command) -> None:
    """
    Add the draw command

    :param root_command: Command to add arg to
    """
    desc = "Draw one sample from an optimized configuration and print its unit ids"
    draw = root_command.add_parser('draw', description=desc, help=desc)
    draw.add_argument('configuration',
                      metavar="<configuration-file>",
                      type=str,
                      nargs='?',
                      help="Configuration file written by optimize, not needed with --strata")
    _add_plan_args(draw)
    _add_population_args(draw, required=False)


def _add_evaluate_command(root_command) -> None:
    """
    Add the evaluate command

    :param root_command: Command to add arg to
    """
    desc = "Evaluate every sample of a configuration on its population"
    evaluate = root_command.add_parser('evaluate', description=desc, help=desc)
    evaluate.add_argument('configuration',
                          metavar="<configuration-file>",
                          type=str,
                          nargs='?',
                          help="Configuration file written by optimize, not needed with --strata")
    _add_plan_args(evaluate)
    _add_population_args(evaluate)
    _add_targets_arg(evaluate)


def _add_benchmark_command(root_command) -> None:
    """
    Add the benchmark command

    :param root_command: Command to add arg to
    """
    desc = "Compare designs by their energy, spatial balance, local balance and balance deviation"
    benchmark = root_command.add_parser('benchmark', description=desc, help=desc)
    _add_population_args(benchmark)
    _add_anneal_args(benchmark)
    _add_targets_arg(benchmark)

    benchmark.add_argument('--designs',
                           metavar="<design>",
                           choices=DESIGN_NAMES,
                           nargs='+',
                           default=DESIGN_NAMES,
                           help=f"Designs to compare (Default: all) ({DESIGN_NAMES})")
    benchmark.add_argument('--n',
                           metavar="<n>",
                           type=int,
                           nargs='+',
                           required=True,
                           help="One or more sample sizes to sweep, i.e. 100 200")
    benchmark.add_argument('--dims',
                           metavar="<p>",
                           type=int,
                           nargs='+',
                           help="One or more dimensions to sweep, only with --synthetic, i.e. 2 5 10 20")
    benchmark.add_argument('--replicates',
                           metavar="<count>",
                           type=int,
                           help="Monte Carlo replicates of the random designs (Default: config evaluation.replicates)")
    benchmark.add_argument('--order-key',
                           metavar="<column>",
                           type=str,
                           help="Auxiliary column to order units by for systematic sampling (Default: file order)")


def parse_arguments(argv: list[str] = None) -> Namespace:
    """
    Create the Arg parser

    :param argv: Args to parse (Default: sys.argv)
    :return: Arg parser
    """
    parser = ArgumentParser(
        description="DBD-TC: Distributionally balanced sampling designs from minimum tactical configurations",
        prog=PROG_NAME
    )

    # add optional config file arg
    config = parser.add_argument_group("Configuration")
    config.add_argument('-c', '--config',
                        metavar="<path to config file>",
                        help="Path to config file to use")

    # run flags
    run = parser.add_argument_group("Run")
    run.add_argument('--seed',
                     metavar="<seed>",
                     type=int,
                     default=0,
                     help="Master seed every random stream is derived from (Default: 0)")
    run.add_argument('--threads',
                     metavar="<threads>",
                     type=int,
                     default=1,
                     help="Worker threads for replicates, strata and parallel annealing sweeps (Default: 1)")
    run.add_argument('--out',
                     metavar="<directory>",
                     type=str,
                     help="Directory to write results to (Default: config output.directory)")

    # logging flags
    logging = parser.add_argument_group("Logging")
    level_choices = [level.name for level in Level]
    logging.add_argument(
        "-l", "--log-level",
        metavar="<log level>",
        choices=level_choices,
        help=f"Set log level (Default: {DEFAULT_LOG_LEVEL.name}) ({level_choices})",
        default=DEFAULT_LOG_LEVEL.name
    )
    logging.add_argument("-s", "--silent",
                         action="store_true",
                         help="Run in silent mode")

    # Create subparsers for different commands
    commands = parser.add_subparsers(dest='command', required=True)
    _add_generate_command(commands)
    _add_optimize_command(commands)
    _add_draw_command(commands)
    _add_evaluate_command(commands)
    _add_benchmark_command(commands)

    args = parser.parse_args(argv)
    _validate_population_args(parser, args)
    _validate_optimize_args(parser, args)
    if args.command in ('draw', 'evaluate') and not args.configuration and not args.strata:
        parser.error(f"The {args.command} command needs a configuration file or --strata")
    if args.command == 'benchmark' and args.dims and not args.synthetic:
        parser.error("The argument --dims can only be used with --synthetic")
    return args
