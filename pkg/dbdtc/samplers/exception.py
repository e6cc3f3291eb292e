"""
File: exception.py

Description: Exceptions for sample generators

@author Derek Garcia
"""


class InvalidProbabilitiesError(ValueError):
    """
    Inclusion probabilities cannot produce a fixed size sample
    """

    def __init__(self, reason: str):
        """
        Probability vector is unusable

        :param reason: What is wrong with the vector
        """
        super().__init__(f"Invalid inclusion probabilities: {reason}")
        self._reason = reason

    @property
    def reason(self) -> str:
        """
        :return: What is wrong with the vector
        """
        return self._reason


class SampleSizeError(Exception):
    """
    Generator returned a sample that breaks its contract
    """

    def __init__(self, expected: int, found: int, step: int = None):
        """
        Sample has the wrong size

        :param expected: Prescribed sample size
        :param found: Size of the returned sample
        :param step: Initialization step the sample was drawn for, if any
        """
        at = f" at step {step}" if step is not None else ""
        super().__init__(f"Generator returned {found} units{at}, expected {expected}")
        self._expected = expected
        self._found = found
        self._step = step

    @property
    def expected(self) -> int:
        """
        :return: Prescribed sample size
        """
        return self._expected

    @property
    def found(self) -> int:
        """
        :return: Returned sample size
        """
        return self._found

    @property
    def step(self) -> int | None:
        """
        :return: Initialization step, if any
        """
        return self._step


class InvalidSampleError(Exception):
    """
    Generator selected units that its probabilities forbid
    """

    def __init__(self, step: int, reason: str):
        """
        Sample disagrees with the prescribed probabilities

        :param step: Initialization step
        :param reason: What is wrong with the sample
        """
        super().__init__(f"Invalid sample at step {step}: {reason}")
        self._step = step
        self._reason = reason

    @property
    def step(self) -> int:
        """
        :return: Initialization step
        """
        return self._step

    @property
    def reason(self) -> str:
        """
        :return: What is wrong with the sample
        """
        return self._reason


class BudgetError(Exception):
    """
    Remaining unit budget no longer matches the samples left to draw
    """

    def __init__(self, step: int, expected: int, found: int):
        """
        Budget sum is off

        :param step: Initialization step
        :param expected: n times the number of samples left
        :param found: Actual budget sum
        """
        super().__init__(f"Budget sums to {found} at step {step}, expected {expected}")
        self._step = step
        self._expected = expected
        self._found = found

    @property
    def step(self) -> int:
        """
        :return: Initialization step
        """
        return self._step
