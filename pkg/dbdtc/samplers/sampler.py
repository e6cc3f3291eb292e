"""
File: sampler.py

Description: Fixed size equal and unequal probability sample generators

@author Derek Garcia
"""

import math
from typing import Callable, Sequence

import numpy as np

from population.population import Population
from samplers.config import DECIDED_EPSILON, SIZE_TOLERANCE
from samplers.exception import InvalidProbabilitiesError, SampleSizeError

# (inclusion probabilities, rng) -> sorted unit indices
Generator = Callable[[np.ndarray, np.random.Generator], np.ndarray]


def check_probabilities(probs: Sequence[float]) -> tuple[np.ndarray, int]:
    """
    Validate an inclusion probability vector

    :param probs: Probabilities of every unit
    :raises InvalidProbabilitiesError: If an entry is outside [0,1] or the sum is not integral
    :return: Probabilities clipped to [0,1] and the implied sample size
    """
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or not p.size:
        raise InvalidProbabilitiesError("expected a non-empty vector")
    if not np.all(np.isfinite(p)):
        raise InvalidProbabilitiesError("entries must be finite")
    if p.min() < -DECIDED_EPSILON:
        raise InvalidProbabilitiesError(f"negative entry {p.min()}")
    if p.max() > 1 + DECIDED_EPSILON:
        raise InvalidProbabilitiesError(f"entry {p.max()} exceeds 1")
    # exactly rounded sum, so the tolerance can stay absolute for large N
    total = math.fsum(p.tolist())
    n = int(round(total))
    if abs(total - n) > SIZE_TOLERANCE:
        raise InvalidProbabilitiesError(f"sum {total} is not an integer")
    return np.clip(p, 0.0, 1.0), n


def srs(N: int, n: int, seed: int | np.random.Generator = None) -> np.ndarray:
    """
    Simple random sample without replacement

    :param N: Population size
    :param n: Sample size
    :param seed: Seed or generator
    :raises ValueError: If n is not in 1..N
    :return: Sorted unit indices
    """
    if not 1 <= n <= N:
        raise ValueError(f"Sample size must satisfy 1 <= n <= N, got n={n}, N={N}")
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(N, size=n, replace=False))


def systematic_positions(N: int, n: int, u: float) -> np.ndarray:
    """
    1-based sorted positions picked by fractional interval systematic sampling

    :param N: Population size
    :param n: Sample size
    :param u: Random start in (0,1]
    :return: Positions ceil((u + t) * N / n) for t = 0..n-1
    """
    t = np.arange(n)
    return np.clip(np.ceil((u + t) * N / n).astype(np.intp), 1, N)


def systematic(pop: Population, order_key: str | None, n: int, seed: int | np.random.Generator = None) -> np.ndarray:
    """
    Ordered systematic sample with a fractional sampling interval, so any n <= N works

    :param pop: Population to sample
    :param order_key: Auxiliary column to sort by, None keeps unit order
    :param n: Sample size
    :param seed: Seed or generator
    :raises ValueError: If n is not in 1..N
    :return: Sorted unit indices
    """
    if not 1 <= n <= pop.size:
        raise ValueError(f"Sample size must satisfy 1 <= n <= N, got n={n}, N={pop.size}")
    rng = np.random.default_rng(seed)
    order = np.arange(pop.size) if order_key is None else np.argsort(pop.column(order_key), kind='stable')
    # start in (0,1] so the first position is never 0
    u = 1.0 - rng.random()
    return np.sort(order[systematic_positions(pop.size, n, u) - 1])


def systematic_pps(probs: Sequence[float], rng: np.random.Generator) -> np.ndarray:
    """
    Systematic sampling with unequal probabilities in the given unit order. Units with probability 1 are
    always taken

    :param probs: Inclusion probabilities with an integral sum
    :param rng: Random generator
    :raises InvalidProbabilitiesError: If the probabilities are invalid
    :raises SampleSizeError: If the sample does not have the implied size
    :return: Sorted unit indices
    """
    p, n = check_probabilities(probs)
    certain = np.flatnonzero(p >= 1 - DECIDED_EPSILON)
    rest = np.flatnonzero((p > DECIDED_EPSILON) & (p < 1 - DECIDED_EPSILON))
    remaining = n - certain.size
    chosen = np.empty(0, dtype=np.intp)
    if remaining > 0:
        cum = np.concatenate([[0.0], np.cumsum(p[rest])])
        cum *= remaining / cum[-1]
        cum[-1] = remaining
        points = rng.random() + np.arange(remaining)
        chosen = rest[np.clip(np.searchsorted(cum, points, side='right') - 1, 0, rest.size - 1)]
    sample = np.sort(np.concatenate([certain, chosen]))
    if np.unique(sample).size != n:
        raise SampleSizeError(n, int(np.unique(sample).size))
    return sample
