"""
File: exception.py

Description: Exceptions for building and reading tactical configurations

@author Derek Garcia
"""


class InvalidPatternError(ValueError):
    """
    Cyclic pattern vector does not fit the configuration
    """

    def __init__(self, length: int, ones: int, size: int, multiplicity: int):
        """
        Pattern has the wrong length or number of ones

        :param length: Length of the given pattern
        :param ones: Number of ones in the given pattern
        :param size: Expected length M
        :param multiplicity: Expected number of ones c
        """
        super().__init__(f"Pattern must have length {size} with {multiplicity} ones, "
                         f"got length {length} with {ones} ones")
        self._length = length
        self._ones = ones
        self._size = size
        self._multiplicity = multiplicity

    @property
    def length(self) -> int:
        """
        :return: Length of the given pattern
        """
        return self._length

    @property
    def ones(self) -> int:
        """
        :return: Number of ones in the given pattern
        """
        return self._ones


class InvalidPermutationError(ValueError):
    """
    Row permutation is not a bijection
    """

    def __init__(self, size: int, reason: str):
        """
        Permutation cannot be applied

        :param size: Population size N
        :param reason: What is wrong with the permutation
        """
        super().__init__(f"Not a permutation of {size} units: {reason}")
        self._size = size
        self._reason = reason

    @property
    def reason(self) -> str:
        """
        :return: What is wrong with the permutation
        """
        return self._reason


class InadmissibleSwapError(Exception):
    """
    Interchange would put a unit into a column that already holds it
    """

    def __init__(self, a: int, b: int, u: int, v: int):
        """
        Swap of u out of column a and v out of column b is not allowed

        :param a: Column holding u
        :param b: Column holding v
        :param u: Unit leaving a
        :param v: Unit leaving b
        """
        super().__init__(f"Swap of unit {u} (column {a}) with unit {v} (column {b}) is not admissible")
        self._a = a
        self._b = b
        self._u = u
        self._v = v

    @property
    def columns(self) -> tuple[int, int]:
        """
        :return: Column pair (a, b)
        """
        return self._a, self._b

    @property
    def units(self) -> tuple[int, int]:
        """
        :return: Unit pair (u, v)
        """
        return self._u, self._v


class MalformedConfigurationError(Exception):
    """
    Configuration file cannot be parsed into a valid configuration
    """

    def __init__(self, path: str, line: int, reason: str):
        """
        File is malformed

        :param path: Path to the configuration file
        :param line: 1-based line number of the problem
        :param reason: Description of the problem
        """
        super().__init__(f"Malformed configuration '{path}' at line {line}: {reason}")
        self._path = path
        self._line = line
        self._reason = reason

    @property
    def path(self) -> str:
        """
        :return: Path to the configuration file
        """
        return self._path

    @property
    def line(self) -> int:
        """
        :return: Line number of the problem
        """
        return self._line

    @property
    def reason(self) -> str:
        """
        :return: Description of the problem
        """
        return self._reason
