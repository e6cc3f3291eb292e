"""
File: initialization.py

Description: Build a minimum tactical configuration one sample at a time from a fixed size generator,
steering each draw with the budget of appearances every unit has left

@author Derek Garcia
"""

import loggy
import numpy as np

from samplers.exception import SampleSizeError, InvalidSampleError, BudgetError
from samplers.sampler import Generator
from tactical.configuration import TacticalConfiguration, min_params


def init_by_sampling(N: int, n: int, generator: Generator, seed: int | np.random.Generator = None) -> TacticalConfiguration:
    """
    Sampling based initialization. At step k every unit has budget b, the number of samples it still has to
    appear in, and is drawn with probability b / (M - k + 1). Steps where every probability is 0 or 1 skip
    the generator and take the forced sample

    :param N: Population size
    :param n: Sample size
    :param generator: Fixed size sampler taking (probs, rng)
    :param seed: Seed or generator
    :raises SampleSizeError: If the generator returns the wrong number of units
    :raises InvalidSampleError: If the generator ignores a probability of 0 or 1
    :raises BudgetError: If the budget stops matching the samples left
    :return: Minimum tactical configuration
    """
    rng = np.random.default_rng(seed)
    params = min_params(N, n)
    budget = np.full(N, params.c, dtype=np.int64)
    columns = []
    progress = loggy.manual_data_queue(params.M, "Initializing configuration", "sample") if params.M > 1 else None
    for k in range(params.M):
        remaining = params.M - k
        total = int(budget.sum())
        if total != n * remaining:
            raise BudgetError(k + 1, n * remaining, total)

        if np.all((budget == 0) | (budget == remaining)):
            sample = np.flatnonzero(budget == remaining)
        else:
            sample = np.unique(np.asarray(generator(budget / remaining, rng), dtype=np.intp))
            if sample.size != n:
                raise SampleSizeError(n, int(sample.size), k + 1)
            if np.any(budget[sample] == 0):
                raise InvalidSampleError(k + 1, "selected a unit with no budget left")
            skipped = np.ones(N, dtype=bool)
            skipped[sample] = False
            if np.any(budget[skipped] == remaining):
                raise InvalidSampleError(k + 1, "skipped a unit with inclusion probability 1")

        budget[sample] -= 1
        columns.append(sample.tolist())
        if progress:
            progress.update(1)

    return TacticalConfiguration(N, n, columns)
