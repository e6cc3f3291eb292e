"""
File: exception.py

Description: Exceptions for simulated annealing

@author Derek Garcia
"""


class WorkerBudgetError(ValueError):
    """
    More parallel workers than disjoint column pairs
    """

    def __init__(self, workers: int, M: int):
        """
        Too many workers for the configuration

        :param workers: Requested worker count
        :param M: Number of samples in the configuration
        """
        super().__init__(f"{workers} workers need {2 * workers} distinct samples, configuration has {M} "
                         f"(at most {M // 2} workers)")
        self._workers = workers
        self._M = M

    @property
    def workers(self) -> int:
        """
        :return: Requested worker count
        """
        return self._workers

    @property
    def M(self) -> int:
        """
        :return: Number of samples
        """
        return self._M
