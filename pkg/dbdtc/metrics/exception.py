"""
File: exception.py

Description: Exceptions for design evaluation

@author Derek Garcia
"""


class ZeroInclusionError(ValueError):
    """
    Sampled unit has inclusion probability 0
    """

    def __init__(self, unit: int):
        """
        Horvitz-Thompson weight is undefined

        :param unit: Offending unit index
        """
        super().__init__(f"Sampled unit {unit} has inclusion probability 0")
        self._unit = unit

    @property
    def unit(self) -> int:
        """
        :return: Offending unit index
        """
        return self._unit


class EmptyDesignError(ValueError):
    """
    Nothing to evaluate
    """

    def __init__(self, design: str):
        """
        Design has no samples

        :param design: Name of the design
        """
        super().__init__(f"Design '{design}' has no samples to evaluate")
        self._design = design

    @property
    def design(self) -> str:
        """
        :return: Name of the design
        """
        return self._design
