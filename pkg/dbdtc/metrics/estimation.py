"""
File: estimation.py

Description: Horvitz-Thompson totals, the local mean variance estimator and normal confidence intervals

@author Derek Garcia
"""

from typing import Sequence

import numpy as np
from scipy.stats import norm

from geometry.distance import DistanceProvider
from geometry.exception import NeighborCountError
from metrics.balance import as_probabilities
from metrics.exception import ZeroInclusionError


def ht_total(sample: Sequence[int], y: Sequence[float], pi: float | Sequence[float]) -> float:
    """
    Horvitz-Thompson estimate of the total of y

    :param sample: Unit indices
    :param y: Study variable of every unit
    :param pi: Inclusion probabilities
    :raises ZeroInclusionError: If a sampled unit has probability 0
    :return: Sum over the sample of y_i / pi_i
    """
    s = np.asarray(sample, dtype=np.intp)
    values = np.asarray(y, dtype=float)
    p = as_probabilities(pi, values.size)[s]
    if np.any(p <= 0):
        raise ZeroInclusionError(int(s[np.flatnonzero(p <= 0)[0]]))
    return float((values[s] / p).sum())


def local_mean_variance(sample: Sequence[int], y: Sequence[float], pi: float | Sequence[float], k: int,
                        geometry: DistanceProvider) -> float:
    """
    Local mean variance estimator. Each sampled unit is grouped with its k - 1 nearest sampled neighbours,
    ties by smallest index, and contributes k / (k - 1) times the squared deviation of y_i / pi_i from the
    group mean

    :param sample: Unit indices
    :param y: Study variable of every unit
    :param pi: Inclusion probabilities
    :param k: Group size, at least 2
    :param geometry: Distances over the population
    :raises ValueError: If k < 2
    :raises NeighborCountError: If the sample has fewer than k units
    :raises ZeroInclusionError: If a sampled unit has probability 0
    :return: Variance estimate of the Horvitz-Thompson total
    """
    if k < 2:
        raise ValueError(f"Neighbour group size must be at least 2, got {k}")
    s = np.unique(np.asarray(sample, dtype=np.intp))
    if s.size < k:
        raise NeighborCountError(k, s.size)
    values = np.asarray(y, dtype=float)
    p = as_probabilities(pi, values.size)[s]
    if np.any(p <= 0):
        raise ZeroInclusionError(int(s[np.flatnonzero(p <= 0)[0]]))
    a = values[s] / p
    d = geometry.block(s, s).copy()
    # unit first in its own group, then neighbours by distance with ties to the smaller index
    np.fill_diagonal(d, -1.0)
    groups = np.argsort(d, axis=1, kind='stable')[:, :k]
    means = a[groups].mean(axis=1)
    return float(k / (k - 1) * ((a - means) ** 2).sum())


def normal_quantile(level: float) -> float:
    """
    :param level: Confidence level in (0,1)
    :raises ValueError: If the level is outside (0,1)
    :return: Two sided standard normal quantile, 1.959964 for 0.95
    """
    if not 0 < level < 1:
        raise ValueError(f"Confidence level must be in (0, 1), got {level}")
    return float(norm.ppf((1 + level) / 2))
