"""
File: optimize.py

Description: Build and optimize a design, whole population, compressed or per stratum, and save it

@author Derek Garcia
"""
import os
from argparse import Namespace
from dataclasses import asdict
from typing import Dict

import loggy

from cli.design_factory import DesignFactory
from config.parser import Config
from dto.run_config_dto import RunConfigDTO
from energy.energy import expected_energy
from scale.stratified import stratified_run
from tactical.io import write_configuration, digest
from util.output import output_path, write_json, write_trajectory


def run_optimize(run_config: RunConfigDTO, config: Config, factory: DesignFactory, args: Namespace) -> Dict[str, str]:
    """
    Optimize a design and write the configuration, trajectory and summary

    :param run_config: Config of the run
    :param config: Config details
    :param factory: Factory to build the population and pipeline
    :param args: Parsed optimize args
    :return: Dict of output name to path
    """
    pop, _ = factory.create_population(args)
    if args.stratum_n:
        return _run_stratified(run_config, factory, args, pop)

    optimized = factory.optimize_design(pop, args.n, args)
    result = optimized.result
    out = run_config.out
    paths = {
        'configuration': write_configuration(result.best, output_path(out, "configuration.tc")),
        'trajectory': write_trajectory(output_path(out, "trajectory.csv"), result.trajectory, run_config)
    }
    summary = {
        'N': result.best.N,
        'n': result.best.n,
        'M': result.best.M,
        'c': result.best.c,
        'init': args.init,
        'initial_energy': result.initial_energy,
        'best_energy': result.best_energy,
        'last_energy': result.final_energy,
        'schedule': asdict(result.schedule),
        'workers': result.workers,
        'counters': {**asdict(result.counters), 'acceptance_rate': result.counters.acceptance_rate},
        'wall_time': result.wall_time,
        'seed': run_config.seed,
        'initial_digest': digest(optimized.initial),
        'digest': digest(result.best),
        'configuration': os.path.basename(paths['configuration']),
        'conditional': optimized.plan is not None
    }
    if optimized.plan:
        plan = optimized.plan.to_dict(pop.ids, config.scale.plan_id_limit)
        paths['plan'] = write_json(output_path(out, "plan.json"), plan, run_config)
        summary['plan'] = os.path.basename(paths['plan'])
    paths['summary'] = write_json(output_path(out, "summary.json"), summary, run_config)

    if result.best_energy >= result.initial_energy and result.schedule.iterations:
        loggy.warn("Annealing did not improve on the initial configuration")
    loggy.info(f"Wrote optimized configuration to '{paths['configuration']}'")
    return paths


def _run_stratified(run_config: RunConfigDTO, factory: DesignFactory, args: Namespace, pop) -> Dict[str, str]:
    """
    Optimize every stratum independently and write one configuration per stratum plus the strata file

    :param run_config: Config of the run
    :param factory: Factory to build the pipeline
    :param args: Parsed optimize args
    :param pop: Population with strata
    :return: Dict of output name to path
    """
    design = stratified_run(pop, args.stratum_n, factory.create_pipeline(args), run_config.seed,
                            run_config.threads)
    out = run_config.out
    paths = {}
    entries = []
    for k, stratum in enumerate(design.strata, start=1):
        path = write_configuration(stratum.configuration, output_path(out, f"stratum-{k}.tc"))
        paths[f"stratum-{k}"] = path
        geometry = factory.create_geometry(stratum.population)
        entries.append({
            'label': stratum.label,
            'N': stratum.population.size,
            'n': stratum.n,
            'M': stratum.configuration.M,
            'inclusion_probability': str(stratum.inclusion_probability),
            'expected_energy': expected_energy(stratum.configuration, geometry).expected,
            'digest': digest(stratum.configuration),
            'configuration': os.path.basename(path),
            'units': [pop.ids[i] for i in stratum.units.tolist()]
        })
    paths['strata'] = write_json(output_path(out, "strata.json"),
                                 {'N': pop.size, 'n': design.n, 'strata': entries}, run_config)
    loggy.info(f"Wrote {len(entries)} stratum configurations to '{out}'")
    return paths
