"""
File: stratified.py

Description: Run the design pipeline independently within every stratum and combine the draws

@author Derek Garcia
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

import loggy
import numpy as np

from population.population import Population, partition_by_strata
from scale.config import STRATUM_STREAM_PREFIX
from scale.exception import StratumAllocationError
from tactical.configuration import TacticalConfiguration, draw
from util.rng import stream_rng

# (sub-population, n_h, rng) -> optimized configuration of the stratum
Pipeline = Callable[[Population, int, np.random.Generator], TacticalConfiguration]


@dataclass(frozen=True, eq=False)
class StratumDesign:
    """
    Design of a single stratum
    """
    label: str
    units: np.ndarray
    population: Population
    n: int
    configuration: TacticalConfiguration

    @property
    def inclusion_probability(self) -> Fraction:
        """
        :return: n_h / N_h
        """
        return Fraction(self.n, self.population.size)


@dataclass(frozen=True)
class StratifiedDesign:
    """
    Independent designs for every stratum
    """
    strata: List[StratumDesign]

    @property
    def n(self) -> int:
        """
        :return: Combined sample size
        """
        return sum(s.n for s in self.strata)

    def inclusion_probabilities(self, N: int) -> np.ndarray:
        """
        :param N: Population size
        :return: Inclusion probability of every unit in the population
        """
        pi = np.zeros(N)
        for s in self.strata:
            pi[s.units] = s.n / s.population.size
        return pi

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        """
        Draw one sample in every stratum, strata in order

        :param rng: Random generator
        :return: Sorted unit indices in the full population
        """
        return np.sort(np.concatenate([s.units[draw(s.configuration, rng)] for s in self.strata]))


def stratified_run(pop: Population,
                   allocation: Dict[str, int],
                   pipeline: Pipeline,
                   seed: int,
                   threads: int = 1) -> StratifiedDesign:
    """
    Build a design in every stratum. Stratum h runs on the 'stratum-h' stream of the master seed, so strata
    can run in any order or concurrently with the same result

    :param pop: Population with strata
    :param allocation: Sample size of every stratum
    :param pipeline: Builds the configuration of one stratum
    :param seed: Master seed
    :param threads: Strata processed concurrently (Default: 1)
    :raises MissingStrataError: If the population has no strata
    :raises StratumAllocationError: If a stratum has no sample size, too large a sample size, or is unknown
    :return: Stratified design, strata in order of first appearance
    """
    parts = partition_by_strata(pop)
    for label in allocation:
        if label not in parts:
            raise StratumAllocationError(label, "no such stratum in the population")
    for label, (units, sub) in parts.items():
        if label not in allocation:
            raise StratumAllocationError(label, "no sample size given")
        if not 1 <= allocation[label] <= sub.size:
            raise StratumAllocationError(label, f"sample size {allocation[label]} not in 1..{sub.size}")

    def _run(label: str) -> StratumDesign:
        units, sub = parts[label]
        D = pipeline(sub, allocation[label], stream_rng(seed, f"{STRATUM_STREAM_PREFIX}{label}"))
        loggy.info(f"Stratum '{label}' done | N_h={sub.size}, n_h={allocation[label]}, M_h={D.M}")
        return StratumDesign(label, units, sub, allocation[label], D)

    labels = list(parts)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            strata = list(pool.map(_run, labels))
    else:
        strata = [_run(label) for label in labels]
    return StratifiedDesign(strata)
