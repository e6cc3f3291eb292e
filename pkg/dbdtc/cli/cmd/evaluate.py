"""
File: evaluate.py

Description: Evaluate a saved design on its population and write the metrics report

@author Derek Garcia
"""
import os
from argparse import Namespace
from typing import Dict

from cli.design_factory import DesignFactory, CandidateDesign
from config.parser import Config
from dto.run_config_dto import RunConfigDTO
from tactical.io import read_configuration
from util.output import read_json, write_reports, print_summary


def run_evaluate(run_config: RunConfigDTO, config: Config, factory: DesignFactory, args: Namespace) -> Dict[str, str]:
    """
    Evaluate every sample of a configuration weighted by its probability. Stratified designs are evaluated per
    stratum over their supports and pooled over Monte Carlo replicates

    :param run_config: Config of the run
    :param config: Config details
    :param factory: Factory to build the population and evaluate
    :param args: Parsed evaluate args
    :raises ValueError: If the design does not match the population
    :return: Dict of output name to path
    """
    pop, targets = factory.create_population(args, targets=args.targets)
    reports = []

    if args.strata:
        design = factory.load_strata(read_json(args.strata), os.path.dirname(args.strata), pop)
        for stratum in design.strata:
            candidate = factory.configuration_candidate(stratum.label, stratum.configuration)
            sub_targets = {name: y[stratum.units] for name, y in targets.items()}
            report = factory.evaluate(candidate, stratum.population, factory.create_geometry(stratum.population),
                                      sub_targets)
            reports.append({'stratum': stratum.label, 'report': report})
        pooled = CandidateDesign('stratified', design.inclusion_probabilities(pop.size), draw=design.draw)
        reports.append({'stratum': 'pooled',
                        'report': factory.evaluate(pooled, pop, factory.create_geometry(pop), targets)})
    else:
        D = read_configuration(args.configuration)
        if args.plan:
            plan = read_json(args.plan)
            if plan['N_star'] != D.N:
                raise ValueError(f"Plan keeps {plan['N_star']} units but the configuration has {D.N}")
            candidate = factory.configuration_candidate('dbdtc', D, factory.plan_units(plan, pop), pop.size,
                                                        conditional=True)
        else:
            if pop.size != D.N:
                raise ValueError(f"Configuration has {D.N} units but the population has {pop.size}")
            candidate = factory.configuration_candidate('dbdtc', D)
        reports.append({'report': factory.evaluate(candidate, pop, factory.create_geometry(pop), targets)})

    paths = write_reports(run_config.out, reports, run_config, config.output.include_rows)
    print_summary(reports)
    return paths
