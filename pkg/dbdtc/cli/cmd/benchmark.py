"""
File: benchmark.py

Description: Compare designs over a sweep of dimensions and sample sizes on the same populations

@author Derek Garcia
"""
from argparse import Namespace
from typing import Dict

import loggy
from loggy import Timer

from cli.design_factory import DesignFactory
from config.parser import Config
from dto.run_config_dto import RunConfigDTO
from util.output import write_reports, print_summary, write_trajectory, output_path


def run_benchmark(run_config: RunConfigDTO, config: Config, factory: DesignFactory, args: Namespace) -> Dict[str, str]:
    """
    Evaluate every design for every (p, n) setting. Designs with a known support are evaluated exactly, the
    random baselines over Monte Carlo replicates. Annealed designs also write their trajectory

    :param run_config: Config of the run
    :param config: Config details
    :param factory: Factory to build the populations and designs
    :param args: Parsed benchmark args
    :return: Dict of output name to path
    """
    timer = Timer()
    reports = []
    trajectories = {}
    for p in args.dims or [None]:
        pop, targets = factory.create_population(args, dimension=p, targets=args.targets)
        geometry = factory.create_geometry(pop)
        for n in args.n:
            for name in args.designs:
                loggy.info(f"Benchmarking '{name}' | N={pop.size}, p={pop.dimension}, n={n}")
                candidate = factory.create_candidate(name, pop, geometry, n, args)
                report = factory.evaluate(candidate, pop, geometry, targets, args.replicates)
                reports.append({'N': pop.size, 'p': pop.dimension, 'n': n, 'report': report})
                if candidate.trajectory is not None:
                    key = f"trajectory-{name}-p{pop.dimension}-n{n}"
                    trajectories[key] = write_trajectory(output_path(run_config.out, f"{key}.csv"),
                                                         candidate.trajectory, run_config)

    paths = write_reports(run_config.out, reports, run_config, config.output.include_rows)
    paths.update(trajectories)
    loggy.info(f"Benchmarked {len(reports)} designs in {timer.format_time()}s")
    print_summary(reports)
    return paths
