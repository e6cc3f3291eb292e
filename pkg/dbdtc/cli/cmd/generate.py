"""
File: generate.py

Description: Synthesize a uniform population and save it as csv

@author Derek Garcia
"""
import loggy

from dto.run_config_dto import RunConfigDTO
from population.population import synth_uniform, write_csv
from util.output import output_path


def run_generate(run_config: RunConfigDTO, size: int, dimension: int) -> str:
    """
    Write a synthetic population to the output directory

    :param run_config: Config of the run
    :param size: Number of units N
    :param dimension: Number of auxiliary variables p
    :return: Path to the population csv
    """
    pop = synth_uniform(size, dimension, run_config.seed)
    path = write_csv(pop, output_path(run_config.out, "population.csv"))
    loggy.info(f"Wrote population of {pop.size} units with {pop.dimension} auxiliary variables to '{path}'")
    return path
