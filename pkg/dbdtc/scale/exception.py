"""
File: exception.py

Description: Exceptions for compression and stratification

@author Derek Garcia
"""


class CompressionRangeError(ValueError):
    """
    Compressed configuration size is out of range
    """

    def __init__(self, m_star: int, limit: int):
        """
        M* must be in 1..floor(N/n)

        :param m_star: Requested configuration size
        :param limit: Largest allowed size floor(N/n)
        """
        super().__init__(f"Compressed configuration size must be in 1..{limit}, got {m_star}")
        self._m_star = m_star
        self._limit = limit

    @property
    def m_star(self) -> int:
        """
        :return: Requested configuration size
        """
        return self._m_star

    @property
    def limit(self) -> int:
        """
        :return: Largest allowed size
        """
        return self._limit


class StratumAllocationError(ValueError):
    """
    Per stratum sample sizes do not fit the strata
    """

    def __init__(self, label: str, reason: str):
        """
        Allocation for a stratum is unusable

        :param label: Stratum label
        :param reason: What is wrong
        """
        super().__init__(f"Stratum '{label}': {reason}")
        self._label = label
        self._reason = reason

    @property
    def label(self) -> str:
        """
        :return: Stratum label
        """
        return self._label

    @property
    def reason(self) -> str:
        """
        :return: What is wrong
        """
        return self._reason
