"""
File: parser.py

Description: Load config yaml file into series of DTOs

@author Derek Garcia
"""

import os
from dataclasses import dataclass
from typing import Dict, Any, List

import loggy
import yaml

from config.default import GeometryDefaults, AnnealDefaults, EvaluationDefaults, ScaleDefaults, OutputDefaults

DEFAULT_CONFIG_PATH = "config.yaml"


@dataclass
class GeometryConfigDTO:
    """
    Config for distance computation
    """
    cache_threshold: int = None

    def __post_init__(self):
        """
        Assign env or defaults to values if not set in config and validate config

        :raises ValueError: If config is invalid
        """
        if self.cache_threshold is None:
            self.cache_threshold = os.getenv('DBD_CACHE_THRESHOLD', GeometryDefaults.CACHE_THRESHOLD)
        self.cache_threshold = int(self.cache_threshold)
        if self.cache_threshold < 0:
            raise ValueError(f"Cache threshold cannot be negative, got {self.cache_threshold}")


@dataclass
class AnnealConfigDTO:
    """
    Config for simulated annealing
    """
    iterations: int = AnnealDefaults.ITERATIONS
    probe_swaps: int = AnnealDefaults.PROBE_SWAPS
    final_temperature_ratio: float = AnnealDefaults.FINAL_TEMPERATURE_RATIO
    drift_check_interval: int = AnnealDefaults.DRIFT_CHECK_INTERVAL
    drift_tolerance: float = AnnealDefaults.DRIFT_TOLERANCE
    trajectory_rows: int = AnnealDefaults.TRAJECTORY_ROWS

    def __post_init__(self):
        """
        Validate config

        :raises ValueError: If config is invalid
        """
        if self.iterations < 0:
            raise ValueError("Iterations cannot be negative")

        if self.probe_swaps < 1:
            raise ValueError("Need at least one probe swap to set the initial temperature")

        if not 0 < self.final_temperature_ratio < 1:
            raise ValueError("Final temperature ratio must be in (0, 1)")

        if self.drift_check_interval < 1:
            raise ValueError("Drift check interval must be at least 1")

        if self.drift_tolerance <= 0:
            raise ValueError("Drift tolerance must be positive")

        if self.trajectory_rows < 3:
            raise ValueError("Trajectory must keep at least 3 rows")


@dataclass
class EvaluationConfigDTO:
    """
    Config for design evaluation
    """
    replicates: int = None
    neighbors: int = EvaluationDefaults.NEIGHBORS
    confidence_level: float = EvaluationDefaults.CONFIDENCE_LEVEL

    def __post_init__(self):
        """
        Assign env or defaults to values if not set in config and validate config

        :raises ValueError: If config is invalid
        """
        if self.replicates is None:
            self.replicates = os.getenv('DBD_REPLICATES', EvaluationDefaults.REPLICATES)
        self.replicates = int(self.replicates)

        if self.replicates < 1:
            raise ValueError("Need at least one Monte Carlo replicate")

        if self.neighbors < 2:
            raise ValueError("Local mean variance needs groups of at least 2 units")

        if not 0 < self.confidence_level < 1:
            raise ValueError("Confidence level must be in (0, 1)")


@dataclass
class ScaleConfigDTO:
    """
    Config for large populations
    """
    max_configuration_size: int = None
    plan_id_limit: int = ScaleDefaults.PLAN_ID_LIMIT

    def __post_init__(self):
        """
        Assign env or defaults to values if not set in config and validate config

        :raises ValueError: If config is invalid
        """
        if self.max_configuration_size is None:
            self.max_configuration_size = os.getenv('DBD_MAX_CONFIGURATION_SIZE', ScaleDefaults.MAX_CONFIGURATION_SIZE)
        self.max_configuration_size = int(self.max_configuration_size)

        if self.max_configuration_size < 1:
            raise ValueError("Configuration size ceiling must be at least 1")

        if self.plan_id_limit < 0:
            raise ValueError("Plan id limit cannot be negative")


@dataclass
class OutputConfigDTO:
    """
    Config for written results
    """
    directory: str = OutputDefaults.DIRECTORY
    include_rows: bool = OutputDefaults.INCLUDE_ROWS


class Config:
    """
    Master config with details of all configs
    """

    def __init__(self, config_file: str = None) -> None:
        """
        Create new config

        :param config_file: Optional config file to read from (Default: None)
        """
        # use env + defaults if no config to use
        if not config_file:
            loggy.debug_info("Using default configuration")
            self._geometry = GeometryConfigDTO()
            self._anneal = AnnealConfigDTO()
            self._evaluation = EvaluationConfigDTO()
            self._scale = ScaleConfigDTO()
            self._output = OutputConfigDTO()
            return

        # load config file if provided
        loggy.info(f"Loading config details from '{config_file}'")
        with open(config_file, 'r', encoding='utf-8') as file:
            config = yaml.safe_load(file) or {}

        # get config overrides lambda
        def __get_params(c: Dict[str, Any] | None, keys: List[str]) -> Dict[str, Any]:
            """
            Load params from a config

            :param c: Config to read from
            :param keys: List of keys to check
            :return: Dict of keys that had values assigned
            """
            c = c or {}
            return {k: c[k] for k in keys if c.get(k) not in (None, '')}

        # load configs
        self._geometry = GeometryConfigDTO(**__get_params(config.get('geometry'), ['cache_threshold']))
        self._anneal = AnnealConfigDTO(**__get_params(config.get('anneal'),
                                                      ['iterations', 'probe_swaps', 'final_temperature_ratio',
                                                       'drift_check_interval', 'drift_tolerance',
                                                       'trajectory_rows']))
        self._evaluation = EvaluationConfigDTO(**__get_params(config.get('evaluation'),
                                                              ['replicates', 'neighbors', 'confidence_level']))
        self._scale = ScaleConfigDTO(**__get_params(config.get('scale'),
                                                    ['max_configuration_size', 'plan_id_limit']))
        self._output = OutputConfigDTO(**__get_params(config.get('output'), ['directory', 'include_rows']))

    @property
    def geometry(self) -> GeometryConfigDTO:
        """
        :return: Geometry config
        """
        return self._geometry

    @property
    def anneal(self) -> AnnealConfigDTO:
        """
        :return: Anneal config
        """
        return self._anneal

    @property
    def evaluation(self) -> EvaluationConfigDTO:
        """
        :return: Evaluation config
        """
        return self._evaluation

    @property
    def scale(self) -> ScaleConfigDTO:
        """
        :return: Scale config
        """
        return self._scale

    @property
    def output(self) -> OutputConfigDTO:
        """
        :return: Output config
        """
        return self._output
