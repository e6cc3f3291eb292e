"""
File: trajectory.py

Description: Thinned recording of energy decay over an optimization run

@author Derek Garcia
"""

import math
from typing import List

from anneal.config import DEFAULT_TRAJECTORY_ROWS
from dto.trajectory_dto import TrajectoryPoint


class TrajectoryRecorder:
    """
    Keeps the first point, every point that crosses a multiple of the stride and the final point, so a run of
    R iterations keeps at most the requested number of rows
    """

    def __init__(self, iterations: int, rows: int = DEFAULT_TRAJECTORY_ROWS):
        """
        Create new recorder

        :param iterations: Total iterations R of the run
        :param rows: Most rows to keep, at least 3 (Default: 10^4)
        """
        if rows < 3:
            raise ValueError(f"Trajectory needs room for at least 3 rows, got {rows}")
        self._iterations = iterations
        self._stride = max(1, math.ceil(iterations / (rows - 2)))
        self._next = self._stride
        self._points: List[TrajectoryPoint] = []

    @property
    def points(self) -> List[TrajectoryPoint]:
        """
        :return: Recorded points in iteration order
        """
        return self._points

    def due(self, iteration: int) -> bool:
        """
        :param iteration: Iterations completed
        :return: True if a point at this iteration would be recorded
        """
        if not self._points:
            return True
        if self._points[-1].iteration == iteration:
            return False
        return iteration >= self._next or iteration == self._iterations

    def offer(self, point: TrajectoryPoint) -> None:
        """
        Record the point if it is due

        :param point: State after point.iteration iterations
        """
        if not self.due(point.iteration):
            return
        self._points.append(point)
        self._next = (point.iteration // self._stride + 1) * self._stride
