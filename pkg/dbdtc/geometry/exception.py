"""
File: exception.py

Description: Exceptions for distance queries

@author Derek Garcia
"""


class UnitIndexError(IndexError):
    """
    Unit index outside the population
    """

    def __init__(self, index: int, size: int):
        """
        Index is out of range

        :param index: Offending unit index
        :param size: Population size N
        """
        super().__init__(f"Unit index {index} is out of range for a population of {size} units")
        self._index = index
        self._size = size

    @property
    def index(self) -> int:
        """
        :return: Offending index
        """
        return self._index

    @property
    def size(self) -> int:
        """
        :return: Population size
        """
        return self._size


class NeighborCountError(Exception):
    """
    More neighbours requested than sampled units available
    """

    def __init__(self, k: int, sample_size: int):
        """
        Neighbour group larger than the sample

        :param k: Requested group size
        :param sample_size: Number of sampled units
        """
        super().__init__(f"Cannot form neighbour groups of {k} units from a sample of {sample_size}")
        self._k = k
        self._sample_size = sample_size

    @property
    def k(self) -> int:
        """
        :return: Requested group size
        """
        return self._k

    @property
    def sample_size(self) -> int:
        """
        :return: Sample size
        """
        return self._sample_size
