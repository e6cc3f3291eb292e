"""
File: trajectory_dto.py
Description: DTOs for optimization progress

@author Derek Garcia
"""

from dataclasses import dataclass, astuple
from typing import List


@dataclass(frozen=True)
class TrajectoryPoint:
    """
    Energies and temperature after an iteration
    """
    iteration: int
    expected_energy: float
    best_energy: float
    temperature: float

    def to_row(self) -> List[float | int]:
        """
        :return: Row in the trajectory csv column order
        """
        return list(astuple(self))


@dataclass
class AnnealCounters:
    """
    Tally of what happened to the proposals of a run
    """
    proposed: int = 0
    admissible: int = 0
    accepted: int = 0
    new_best: int = 0

    @property
    def acceptance_rate(self) -> float:
        """
        :return: Accepted over admissible proposals, 0 if nothing was admissible
        """
        return self.accepted / self.admissible if self.admissible else 0.0
