"""
File: __main__.py

Description: Entry for building, drawing from and evaluating balanced sampling designs

@author Derek Garcia
"""

from argparse import Namespace
from dataclasses import asdict
from os.path import exists

import loggy
from dotenv import load_dotenv

from cli.cmd.benchmark import run_benchmark
from cli.cmd.draw import run_draw
from cli.cmd.evaluate import run_evaluate
from cli.cmd.generate import run_generate
from cli.cmd.optimize import run_optimize
from cli.design_factory import DesignFactory
from cli.parser import parse_arguments
from config.parser import Config, DEFAULT_CONFIG_PATH
from dto.run_config_dto import RunConfigDTO


def _execute(config: Config, args: Namespace) -> None:
    """
    Execute a given cli command

    :param config: Config details
    :param args: args to get command details from
    """
    args.out = args.out or config.output.directory
    # settings that change results are part of the provenance
    settings = {'anneal': asdict(config.anneal), 'evaluation': asdict(config.evaluation),
                'scale': asdict(config.scale)}
    run_config = RunConfigDTO.from_args(args, settings)
    factory = DesignFactory(config, run_config.seed, run_config.threads)

    match args.command:
        case 'generate':
            run_generate(run_config, args.size, args.dims)

        case 'optimize':
            run_optimize(run_config, config, factory, args)

        case 'draw':
            run_draw(run_config, factory, args)

        case 'evaluate':
            run_evaluate(run_config, config, factory, args)

        case 'benchmark':
            run_benchmark(run_config, config, factory, args)


def main(argv: list[str] = None) -> None:
    """
    Parse initial arguments and execute commands

    :param argv: Args to parse (Default: sys.argv)
    """
    args = parse_arguments(argv)
    # set logging level
    if args.silent:
        # silent override all
        loggy.set_log_level(None)
    elif args.log_level is not None:
        # else update if option
        loggy.set_log_level(args.log_level)

    # load config details
    config = Config(args.config or (DEFAULT_CONFIG_PATH if exists(DEFAULT_CONFIG_PATH) else None))
    try:
        _execute(config, args)
    except Exception as e:
        loggy.fatal(e)


if __name__ == "__main__":
    load_dotenv()
    main()
