"""
File: balance.py

Description: How well a sample balances the population, spatially and in its auxiliary totals

@author Derek Garcia
"""

from typing import Sequence

import numpy as np

from geometry.distance import DistanceProvider
from population.population import Population


def as_probabilities(pi: float | Sequence[float], N: int) -> np.ndarray:
    """
    :param pi: Common inclusion probability or one per unit
    :param N: Population size
    :return: Length N vector of inclusion probabilities
    """
    return np.broadcast_to(np.asarray(pi, dtype=float), (N,))


def balance_deviation(sample: Sequence[int], pop: Population, pi: float | Sequence[float]) -> float:
    """
    Euclidean distance between the Horvitz-Thompson estimate of the auxiliary totals and the true totals

    :param sample: Unit indices
    :param pop: Population
    :param pi: Inclusion probabilities
    :return: Balance deviation
    """
    s = np.asarray(sample, dtype=np.intp)
    p = as_probabilities(pi, pop.size)
    estimate = (pop.aux[s] / p[s][:, None]).sum(axis=0)
    return float(np.linalg.norm(estimate - pop.aux.sum(axis=0)))


def _voronoi_weights(s: np.ndarray, p: np.ndarray, geometry: DistanceProvider) -> tuple[np.ndarray, np.ndarray]:
    """
    :return: Unit assignment and the summed inclusion probability of every unit's region
    """
    assignment = geometry.voronoi_assign(s)
    return assignment, np.bincount(assignment, weights=p, minlength=geometry.size)


def spatial_balance(sample: Sequence[int], pi: float | Sequence[float], geometry: DistanceProvider) -> float:
    """
    Mean squared deviation from 1 of the inclusion probabilities summed over each sampled unit's region

    :param sample: Unit indices
    :param pi: Inclusion probabilities
    :param geometry: Distances over the population
    :return: Spatial balance, 0 is perfect
    """
    s = np.unique(np.asarray(sample, dtype=np.intp))
    _, v = _voronoi_weights(s, as_probabilities(pi, geometry.size), geometry)
    return float(np.mean((v[s] - 1.0) ** 2))


def local_balance(sample: Sequence[int], pop: Population, pi: float | Sequence[float],
                  geometry: DistanceProvider) -> float:
    """
    Local balance variant. Every sampled unit i stands in for its region R_i with weight v_i, the residual
    r_i = sum over R_i of pi_j * x_j - v_i * x_i measures how far that stand-in is from the region, and the
    mean residual norm is scaled by 1 + mean phi

    :param sample: Unit indices
    :param pop: Population
    :param pi: Inclusion probabilities
    :param geometry: Distances over the population
    :return: Local balance, 0 is perfect
    """
    s = np.unique(np.asarray(sample, dtype=np.intp))
    p = as_probabilities(pi, pop.size)
    assignment, v = _voronoi_weights(s, p, geometry)
    weighted = np.zeros_like(pop.aux)
    np.add.at(weighted, assignment, p[:, None] * pop.aux)
    residual = weighted[s] - v[s][:, None] * pop.aux[s]
    return float(np.linalg.norm(residual, axis=1).mean() / (1.0 + geometry.phi_mean))
