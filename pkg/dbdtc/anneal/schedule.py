"""
File: schedule.py

Description: Cooling schedule of the annealer and the default recipe that scales it to the problem

@author Derek Garcia
"""

import math
from dataclasses import dataclass
from typing import List

import loggy
import numpy as np

from anneal.config import DEFAULT_PROBE_SWAPS, PROBE_ATTEMPT_FACTOR, DEFAULT_FINAL_TEMPERATURE_RATIO, \
    FALLBACK_TEMPERATURE
from energy.energy import delta_swap
from geometry.distance import DistanceProvider
from tactical.configuration import TacticalConfiguration


@dataclass(frozen=True)
class AnnealSchedule:
    """
    Iteration count, initial temperature and geometric cooling rate per cooling step
    """
    iterations: int
    t0: float
    alpha: float
    metropolis: bool = False

    def __post_init__(self):
        """
        Validate the schedule

        :raises ValueError: If any value is out of range
        """
        if self.iterations < 0:
            raise ValueError(f"Iterations must be non-negative, got {self.iterations}")
        if not self.t0 > 0:
            raise ValueError(f"Initial temperature must be positive, got {self.t0}")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"Cooling rate must be in (0, 1], got {self.alpha}")


def cooling_rate(steps: int, final_ratio: float = DEFAULT_FINAL_TEMPERATURE_RATIO) -> float:
    """
    Geometric rate that reaches final_ratio * T0 after the given number of cooling steps

    :param steps: Number of cooling steps
    :param final_ratio: Final over initial temperature (Default: 1e-8)
    :return: Cooling rate, 1 when there are no steps
    """
    return final_ratio ** (1.0 / steps) if steps > 0 else 1.0


def probe_temperature(D: TacticalConfiguration,
                      geometry: DistanceProvider,
                      rng: np.random.Generator,
                      probes: int = DEFAULT_PROBE_SWAPS) -> float:
    """
    Median absolute change of the expected energy over random admissible swaps, divided by ln 2, so a median
    uphill move starts out accepted half the time

    :param D: Starting configuration
    :param geometry: Distances over the population
    :param rng: Random generator
    :param probes: Number of admissible swaps to probe (Default: 1000)
    :return: Initial temperature
    """
    changes = []
    if D.M >= 2:
        for _ in range(probes * PROBE_ATTEMPT_FACTOR):
            a, b = rng.choice(D.M, size=2, replace=False)
            u = D.unit_at(a, rng.integers(D.column_length(a)))
            v = D.unit_at(b, rng.integers(D.column_length(b)))
            if not D.is_admissible(a, b, u, v):
                continue
            changes.append(abs(delta_swap(D, a, b, u, v, geometry)) / D.M)
            if len(changes) == probes:
                break
    return temperature_from_changes(changes)


def temperature_from_changes(changes: List[float]) -> float:
    """
    Temperature at which the median probed uphill move is accepted half the time

    :param changes: Absolute expected energy changes of the probed moves
    :return: Median change divided by ln 2, the fallback temperature if it is not positive
    """
    t0 = float(np.median(changes)) / math.log(2) if changes else 0.0
    if not t0 > 0:
        loggy.warn(f"No energy change found while probing, using initial temperature {FALLBACK_TEMPERATURE:g}")
        return FALLBACK_TEMPERATURE
    loggy.debug_info(f"Probed {len(changes)} moves, initial temperature {t0:.6g}")
    return t0


def default_schedule(D: TacticalConfiguration,
                     geometry: DistanceProvider,
                     iterations: int,
                     rng: np.random.Generator,
                     workers: int = 1,
                     t0: float = None,
                     alpha: float = None,
                     metropolis: bool = False,
                     probes: int = DEFAULT_PROBE_SWAPS,
                     final_ratio: float = DEFAULT_FINAL_TEMPERATURE_RATIO) -> AnnealSchedule:
    """
    Build a schedule scaled to the problem, any given value overrides the recipe

    :param D: Starting configuration
    :param geometry: Distances over the population
    :param iterations: Number of iterations R
    :param rng: Random generator used for probing
    :param workers: Parallel workers, cooling happens once per sweep of this many swaps (Default: 1)
    :param t0: Initial temperature override
    :param alpha: Cooling rate override
    :param metropolis: Use the classical Metropolis rule (Default: False)
    :param probes: Number of probe swaps (Default: 1000)
    :param final_ratio: Final over initial temperature (Default: 1e-8)
    :return: Schedule
    """
    if t0 is None:
        t0 = probe_temperature(D, geometry, rng, probes)
    if alpha is None:
        alpha = cooling_rate(math.ceil(iterations / max(1, workers)), final_ratio)
    return AnnealSchedule(iterations, t0, alpha, metropolis)
