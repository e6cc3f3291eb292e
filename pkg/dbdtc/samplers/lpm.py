"""
File: lpm.py

Description: Local pivotal method, a fixed size sampler that spreads the sample over the auxiliary space

@author Derek Garcia
"""

from typing import Sequence

import numpy as np

from geometry.distance import DistanceProvider
from samplers.config import DECIDED_EPSILON
from samplers.exception import SampleSizeError
from samplers.sampler import Generator, check_probabilities


def lpm(probs: Sequence[float], geometry: DistanceProvider, seed: int | np.random.Generator = None) -> np.ndarray:
    """
    Draw a sample with the local pivotal method. Repeatedly picks a random undecided unit and its nearest
    undecided neighbour and moves probability mass between them until every unit is 0 or 1

    :param probs: Inclusion probabilities with an integral sum
    :param geometry: Distances over the same units as probs
    :param seed: Seed or generator
    :raises InvalidProbabilitiesError: If the probabilities are invalid
    :raises SampleSizeError: If the result does not have the implied size
    :return: Sorted unit indices
    """
    rng = np.random.default_rng(seed)
    p, n = check_probabilities(probs)
    p = p.copy()
    p[p <= DECIDED_EPSILON] = 0.0
    p[p >= 1 - DECIDED_EPSILON] = 1.0

    pool = np.flatnonzero((p > 0.0) & (p < 1.0))
    where = np.full(p.size, -1, dtype=np.intp)
    where[pool] = np.arange(pool.size)
    size = pool.size

    def _remove(unit: int) -> None:
        nonlocal size
        pos = where[unit]
        last = pool[size - 1]
        pool[pos] = last
        where[last] = pos
        where[unit] = -1
        size -= 1

    while size >= 2:
        i = int(pool[rng.integers(size)])
        j = geometry.nearest_neighbor(i, pool[:size])
        pi, pj = p[i], p[j]
        total = pi + pj
        if total < 1:
            if rng.random() < pj / total:
                pi, pj = 0.0, total
            else:
                pi, pj = total, 0.0
        else:
            if rng.random() < (1 - pj) / (2 - total):
                pi, pj = 1.0, total - 1
            else:
                pi, pj = total - 1, 1.0
        for unit, value in ((i, pi), (j, pj)):
            if value <= DECIDED_EPSILON:
                p[unit] = 0.0
                _remove(unit)
            elif value >= 1 - DECIDED_EPSILON:
                p[unit] = 1.0
                _remove(unit)
            else:
                p[unit] = value

    # a leftover unit only happens through rounding
    if size == 1:
        last = pool[0]
        p[last] = 1.0 if rng.random() < p[last] else 0.0

    sample = np.flatnonzero(p == 1.0)
    if sample.size != n:
        raise SampleSizeError(n, int(sample.size))
    return sample


def lpm_generator(geometry: DistanceProvider) -> Generator:
    """
    Bind a distance provider to the local pivotal method

    :param geometry: Distances over the population
    :return: Generator taking (probs, rng)
    """
    return lambda probs, rng: lpm(probs, geometry, rng)
