"""
File: metrics_dto.py
Description: DTOs for design evaluation results

@author Derek Garcia
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple


@dataclass(frozen=True)
class SampleMetrics:
    """
    Quality of a single sample and its estimates, weight is the sample's share of the design
    """
    weight: float
    size: int
    energy: float
    sb: float
    lb_variant: float
    bd: float
    # target name -> (Horvitz-Thompson total, variance estimate)
    estimates: Dict[str, Tuple[float, float]] = field(default_factory=dict)


@dataclass(frozen=True)
class MetricSummary:
    """
    Weighted mean and standard deviation of a metric over the samples of a design
    """
    mean: float
    sd: float


@dataclass(frozen=True)
class TargetSummary:
    """
    Accuracy of the Horvitz-Thompson total of one study variable
    """
    name: str
    total: float
    mean_estimate: float
    rmse: float
    rrmse: float | None
    relative: bool
    coverage: float
