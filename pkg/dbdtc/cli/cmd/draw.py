"""
File: draw.py

Description: Draw one sample from a saved design and print its unit ids to stdout

@author Derek Garcia
"""
import os
from argparse import Namespace
from typing import List

import loggy

from cli.design_factory import DesignFactory
from dto.run_config_dto import RunConfigDTO
from tactical.configuration import draw
from tactical.io import read_configuration
from util.output import read_json
from util.rng import stream_rng


def run_draw(run_config: RunConfigDTO, factory: DesignFactory, args: Namespace) -> List[str]:
    """
    Draw one sample on the 'draw' stream and print the ids one per line. Stratified designs draw once per stratum
    in file order

    :param run_config: Config of the run
    :param factory: Factory to build the population if given
    :param args: Parsed draw args
    :raises ValueError: If the design does not match the population
    :return: Drawn unit ids
    """
    rng = stream_rng(run_config.seed, "draw")
    has_population = bool(args.synthetic or args.input)
    pop = factory.create_population(args)[0] if has_population else None

    if args.strata:
        strata = read_json(args.strata)
        directory = os.path.dirname(args.strata)
        ids = []
        for entry in strata['strata']:
            D = read_configuration(os.path.join(directory, entry['configuration']))
            ids.extend(entry['units'][i] for i in draw(D, rng))
    else:
        D = read_configuration(args.configuration)
        sample = draw(D, rng)
        if args.plan:
            plan = read_json(args.plan)
            if plan['N_star'] != D.N:
                raise ValueError(f"Plan keeps {plan['N_star']} units but the configuration has {D.N}")
            if 'units' in plan:
                ids = [plan['units'][i] for i in sample]
            elif pop is None:
                raise ValueError("Plan has no unit list, the population is needed to redo the compression")
            else:
                units = factory.plan_units(plan, pop)
                ids = [pop.ids[units[i]] for i in sample]
        elif pop is not None:
            if pop.size != D.N:
                raise ValueError(f"Configuration has {D.N} units but the population has {pop.size}")
            ids = [pop.ids[i] for i in sample]
        else:
            ids = [str(i + 1) for i in sample]

    loggy.debug_info(f"Drew {len(ids)} units")
    for uid in ids:
        print(uid)
    return ids
