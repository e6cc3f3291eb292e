"""
File: exception.py

Description: Exceptions for loading populations

@author Derek Garcia
"""

from typing import List


class UnknownColumnError(Exception):
    """
    Requested column is not in the file header
    """

    def __init__(self, column: str, available: List[str]):
        """
        Column is missing from the file

        :param column: Name of the requested column
        :param available: Columns present in the header
        """
        super().__init__(f"Unknown column '{column}' | available: {', '.join(available)}")
        self._column = column
        self._available = available

    @property
    def column(self) -> str:
        """
        :return: Requested column
        """
        return self._column

    @property
    def available(self) -> List[str]:
        """
        :return: Columns present in the header
        """
        return self._available


class NonNumericValueError(Exception):
    """
    Auxiliary cell could not be parsed as a finite real
    """

    def __init__(self, row: int, column: str, value: str):
        """
        Cell is not a finite number

        :param row: Line number of the cell in the file (header is line 1)
        :param column: Column of the cell
        :param value: Raw cell text
        """
        super().__init__(f"Non-numeric value '{value}' at row {row}, column '{column}'")
        self._row = row
        self._column = column
        self._value = value

    @property
    def row(self) -> int:
        """
        :return: Line number in the file
        """
        return self._row

    @property
    def column(self) -> str:
        """
        :return: Column name
        """
        return self._column

    @property
    def value(self) -> str:
        """
        :return: Raw cell text
        """
        return self._value


class EmptyPopulationError(Exception):
    """
    No units left after dropping rows with missing values
    """

    def __init__(self, source: str, dropped: int):
        """
        Population has no units

        :param source: File the population was read from
        :param dropped: Number of rows dropped for missing values
        """
        super().__init__(f"No units left in '{source}' after dropping {dropped} rows with missing values")
        self._source = source
        self._dropped = dropped

    @property
    def source(self) -> str:
        """
        :return: Source file
        """
        return self._source

    @property
    def dropped(self) -> int:
        """
        :return: Dropped row count
        """
        return self._dropped


class InvalidPopulationError(Exception):
    """
    Population data violates a structural requirement
    """

    def __init__(self, reason: str):
        """
        Population is malformed

        :param reason: What is wrong with the population
        """
        super().__init__(f"Invalid population | {reason}")
        self._reason = reason

    @property
    def reason(self) -> str:
        """
        :return: Description of the problem
        """
        return self._reason


class MissingStrataError(Exception):
    """
    Stratified operation requested on a population without strata
    """

    def __init__(self):
        super().__init__("Population has no stratum labels")
