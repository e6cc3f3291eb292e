"""
File: default.py

Description: Hardcoded defaults to fallback on

@author Derek Garcia
"""

from dataclasses import dataclass

from anneal.config import DEFAULT_PROBE_SWAPS, DEFAULT_FINAL_TEMPERATURE_RATIO, DEFAULT_DRIFT_CHECK_INTERVAL, \
    DEFAULT_DRIFT_TOLERANCE, DEFAULT_TRAJECTORY_ROWS
from geometry.config import DEFAULT_CACHE_THRESHOLD
from metrics.config import DEFAULT_NEIGHBORS, DEFAULT_CONFIDENCE_LEVEL, DEFAULT_REPLICATES
from scale.config import DEFAULT_MAX_CONFIGURATION_SIZE, PLAN_ID_LIMIT


@dataclass(frozen=True)
class GeometryDefaults:
    """
    Defaults for distance computation
    """
    CACHE_THRESHOLD = DEFAULT_CACHE_THRESHOLD


@dataclass(frozen=True)
class AnnealDefaults:
    """
    Defaults for simulated annealing
    """
    ITERATIONS = 10 ** 6
    PROBE_SWAPS = DEFAULT_PROBE_SWAPS
    FINAL_TEMPERATURE_RATIO = DEFAULT_FINAL_TEMPERATURE_RATIO
    DRIFT_CHECK_INTERVAL = DEFAULT_DRIFT_CHECK_INTERVAL
    DRIFT_TOLERANCE = DEFAULT_DRIFT_TOLERANCE
    TRAJECTORY_ROWS = DEFAULT_TRAJECTORY_ROWS


@dataclass(frozen=True)
class EvaluationDefaults:
    """
    Defaults for design evaluation
    """
    REPLICATES = DEFAULT_REPLICATES
    NEIGHBORS = DEFAULT_NEIGHBORS
    CONFIDENCE_LEVEL = DEFAULT_CONFIDENCE_LEVEL


@dataclass(frozen=True)
class ScaleDefaults:
    """
    Defaults for large populations
    """
    MAX_CONFIGURATION_SIZE = DEFAULT_MAX_CONFIGURATION_SIZE
    PLAN_ID_LIMIT = PLAN_ID_LIMIT


@dataclass(frozen=True)
class OutputDefaults:
    """
    Defaults for written results
    """
    DIRECTORY = "out"
    INCLUDE_ROWS = True
