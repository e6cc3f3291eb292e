"""
File: exception.py

Description: Exceptions for energy computations

@author Derek Garcia
"""


class SampleSizeMismatchError(ValueError):
    """
    Sample does not have the size the energy is normalized for
    """

    def __init__(self, expected: int, found: int):
        """
        Wrong sample size

        :param expected: Expected sample size n
        :param found: Size of the given sample
        """
        super().__init__(f"Sample has {found} units, expected {expected}")
        self._expected = expected
        self._found = found

    @property
    def expected(self) -> int:
        """
        :return: Expected sample size
        """
        return self._expected

    @property
    def found(self) -> int:
        """
        :return: Given sample size
        """
        return self._found


class EnergyDriftError(Exception):
    """
    Incrementally patched energies drifted away from a full recompute
    """

    def __init__(self, patched: float, recomputed: float, tolerance: float):
        """
        Ledger total no longer matches

        :param patched: Total kept by incremental updates
        :param recomputed: Total from a full recompute
        :param tolerance: Allowed relative difference
        """
        super().__init__(f"Energy drift above {tolerance:g} relative: patched total {patched!r}, "
                         f"recomputed total {recomputed!r}")
        self._patched = patched
        self._recomputed = recomputed

    @property
    def patched(self) -> float:
        """
        :return: Incrementally kept total
        """
        return self._patched

    @property
    def recomputed(self) -> float:
        """
        :return: Recomputed total
        """
        return self._recomputed
