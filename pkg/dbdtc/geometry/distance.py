"""
File: distance.py

Description: Euclidean distance provider over a population, with per-unit mean distances,
nearest neighbour search and Voronoi assignment

@author Derek Garcia
"""

from typing import Sequence

import loggy
import numpy as np
from scipy.spatial.distance import cdist

from geometry.config import DEFAULT_CACHE_THRESHOLD, STREAM_BLOCK_ROWS
from geometry.exception import UnitIndexError, NeighborCountError
from population.population import Population


class DistanceProvider:
    """
    Distances between population units. Small populations get a full distance matrix, larger ones
    are computed on demand. Read only after construction except for the evaluation counter.
    """

    def __init__(self, pop: Population, cache_threshold: int = DEFAULT_CACHE_THRESHOLD):
        """
        Create new distance provider

        :param pop: Population to measure
        :param cache_threshold: Largest population size that gets a full distance matrix (Default: 4000)
        """
        if cache_threshold < 0:
            raise ValueError(f"Cache threshold must be non-negative, got {cache_threshold}")
        self._aux = pop.aux
        self._size = pop.size
        self._matrix = None
        if self._size <= cache_threshold:
            self._matrix = cdist(self._aux, self._aux)
            self._matrix.setflags(write=False)
            loggy.debug_info(f"Cached {self._size}x{self._size} distance matrix")
        self._phi = None
        self._evaluations = 0

    def _check(self, idx) -> np.ndarray:
        """
        Validate unit indices

        :param idx: Index or array of indices
        :raises UnitIndexError: If any index is out of range
        :return: Indices as an integer array
        """
        arr = np.asarray(idx, dtype=np.intp)
        if arr.size:
            lo, hi = int(arr.min()), int(arr.max())
            if lo < 0:
                raise UnitIndexError(lo, self._size)
            if hi >= self._size:
                raise UnitIndexError(hi, self._size)
        return arr

    def _column(self, idx: np.ndarray, j: int) -> np.ndarray:
        """
        Distances from every unit in idx to unit j, no checks or counting
        """
        if self._matrix is not None:
            return self._matrix[idx, j]
        return np.linalg.norm(self._aux[idx] - self._aux[j], axis=-1)

    @property
    def cached(self) -> bool:
        """
        :return: True if the full distance matrix is held in memory
        """
        return self._matrix is not None

    @property
    def size(self) -> int:
        """
        :return: Number of units N
        """
        return self._size

    @property
    def evaluations(self) -> int:
        """
        :return: Number of distance entries served by distances_to and distance_difference
        """
        return self._evaluations

    def reset_evaluations(self) -> None:
        """
        Reset the instrumentation counter
        """
        self._evaluations = 0

    def distance(self, i: int, j: int) -> float:
        """
        Euclidean distance between two units

        :param i: First unit index
        :param j: Second unit index
        :raises UnitIndexError: If either index is out of range
        :return: Distance d(i,j)
        """
        self._check([i, j])
        if self._matrix is not None:
            return float(self._matrix[i, j])
        return float(np.linalg.norm(self._aux[i] - self._aux[j]))

    def distances_to(self, idx, j: int) -> np.ndarray:
        """
        Distances from a set of units to unit j

        :param idx: Index array of any shape
        :param j: Target unit index
        :raises UnitIndexError: If any index is out of range
        :return: Array shaped like idx of d(i,j)
        """
        arr = self._check(idx)
        self._check(j)
        self._evaluations += arr.size
        return self._column(arr, j)

    def distance_difference(self, idx, u: int, v: int) -> np.ndarray:
        """
        Difference of distances to two units, d(i,u) - d(i,v), counted once per unit in idx

        :param idx: Index array of any shape
        :param u: First unit index
        :param v: Second unit index
        :raises UnitIndexError: If any index is out of range
        :return: Array shaped like idx of d(i,u) - d(i,v)
        """
        arr = self._check(idx)
        self._check([u, v])
        self._evaluations += arr.size
        return self._column(arr, u) - self._column(arr, v)

    def block(self, a: Sequence[int], b: Sequence[int]) -> np.ndarray:
        """
        Distance matrix between two sets of units

        :param a: Row unit indices
        :param b: Column unit indices
        :raises UnitIndexError: If any index is out of range
        :return: len(a) x len(b) matrix of distances
        """
        a = self._check(a)
        b = self._check(b)
        if self._matrix is not None:
            return self._matrix[np.ix_(a, b)]
        return cdist(self._aux[a], self._aux[b])

    @property
    def phi(self) -> np.ndarray:
        """
        Mean distance from every unit to all N units, itself included. Computed once, in row blocks when
        there is no cached matrix.

        :return: Length N vector
        """
        if self._phi is None:
            if self._matrix is not None:
                phi = self._matrix.mean(axis=1)
            else:
                phi = np.empty(self._size)
                for start in range(0, self._size, STREAM_BLOCK_ROWS):
                    stop = min(start + STREAM_BLOCK_ROWS, self._size)
                    phi[start:stop] = cdist(self._aux[start:stop], self._aux).mean(axis=1)
            phi.setflags(write=False)
            self._phi = phi
        return self._phi

    @property
    def phi_mean(self) -> float:
        """
        :return: Mean of phi over the population
        """
        return float(self.phi.mean())

    def nearest_neighbor(self, i: int, candidates: Sequence[int]) -> int:
        """
        Nearest candidate to unit i, excluding i itself. Ties go to the smallest index

        :param i: Unit index
        :param candidates: Candidate unit indices
        :raises ValueError: If no candidate other than i is given
        :return: Index of the nearest candidate
        """
        cand = self._check(candidates)
        self._check(i)
        cand = cand[cand != i]
        if not cand.size:
            raise ValueError(f"No candidate neighbours for unit {i}")
        d = self._column(cand, i)
        return int(cand[d == d.min()].min())

    def voronoi_assign(self, sample: Sequence[int]) -> np.ndarray:
        """
        Assign every population unit to its nearest sampled unit. A sampled unit is assigned to itself,
        other ties go to the smallest index

        :param sample: Sampled unit indices
        :raises ValueError: If the sample is empty
        :return: Length N array of assigned sample unit indices
        """
        s = np.unique(self._check(sample))
        if not s.size:
            raise ValueError("Cannot assign units to an empty sample")
        assignment = np.empty(self._size, dtype=np.intp)
        for start in range(0, self._size, STREAM_BLOCK_ROWS):
            stop = min(start + STREAM_BLOCK_ROWS, self._size)
            # argmin keeps the first minimum and s is sorted
            assignment[start:stop] = s[np.argmin(self.block(np.arange(start, stop), s), axis=1)]
        assignment[s] = s
        return assignment

    def nearest_sampled_neighbors(self, sample: Sequence[int], i: int, k: int) -> np.ndarray:
        """
        The k-1 sampled units nearest to sampled unit i, ties by smallest index

        :param sample: Sampled unit indices
        :param i: Sampled unit to find neighbours for
        :param k: Neighbour group size, i included
        :raises NeighborCountError: If k exceeds the sample size
        :raises ValueError: If k < 1 or i is not sampled
        :return: Neighbour indices, nearest first
        """
        s = np.unique(self._check(sample))
        if k < 1:
            raise ValueError(f"Neighbour group size must be at least 1, got {k}")
        if k > s.size:
            raise NeighborCountError(k, s.size)
        if i not in s:
            raise ValueError(f"Unit {i} is not in the sample")
        others = s[s != i]
        d = self._column(others, i)
        order = np.lexsort((others, d))
        return others[order[:k - 1]]
