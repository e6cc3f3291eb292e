"""
File: report.py

Description: Evaluate a design over its exact support or over Monte Carlo replicates, sharing one weighted
aggregation

@author Derek Garcia
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from typing import Callable, Dict, List, Sequence

import loggy
import numpy as np

from dto.metrics_dto import SampleMetrics, MetricSummary, TargetSummary
from energy.energy import sample_energy
from geometry.distance import DistanceProvider
from geometry.exception import NeighborCountError
from metrics.balance import balance_deviation, spatial_balance, local_balance
from metrics.config import DEFAULT_NEIGHBORS, DEFAULT_CONFIDENCE_LEVEL, METRIC_NAMES
from metrics.estimation import ht_total, local_mean_variance, normal_quantile
from metrics.exception import EmptyDesignError
from population.population import Population
from tactical.configuration import DesignSupport
from util.rng import stream_rng

SUPPORT_MODE = "support"
REPLICATE_MODE = "replicate"


@dataclass
class MetricsReport:
    """
    Per-sample metrics of a design and their weighted aggregates
    """
    design: str
    mode: str
    rows: List[SampleMetrics]
    summary: Dict[str, MetricSummary]
    targets: List[TargetSummary]
    conditional: bool = False
    note: str | None = None
    provenance: Dict[str, object] = field(default_factory=dict)

    @property
    def samples(self) -> int:
        """
        :return: Number of evaluated samples, support size or replicate count
        """
        return len(self.rows)

    def to_dict(self, include_rows: bool = True) -> Dict[str, object]:
        """
        :param include_rows: Include the per-sample rows (Default: True)
        :return: Nested dict ready for json
        """
        data = {
            'design': self.design,
            'mode': self.mode,
            'samples': self.samples,
            'conditional': self.conditional,
            'note': self.note,
            'summary': {k: asdict(v) for k, v in self.summary.items()},
            'targets': [asdict(t) for t in self.targets],
            'provenance': self.provenance
        }
        if include_rows:
            data['rows'] = [asdict(r) for r in self.rows]
        return data


def sample_metrics(sample: Sequence[int],
                   pop: Population,
                   geometry: DistanceProvider,
                   pi: float | Sequence[float],
                   targets: Dict[str, np.ndarray] = None,
                   k: int = DEFAULT_NEIGHBORS,
                   weight: float = 1.0) -> SampleMetrics:
    """
    Measure one sample

    :param sample: Unit indices
    :param pop: Population
    :param geometry: Distances over the population
    :param pi: Inclusion probabilities
    :param targets: Study variables to estimate totals of (Default: None)
    :param k: Local mean variance group size (Default: 2)
    :param weight: Share of the sample in the design (Default: 1)
    :return: Sample metrics
    """
    s = np.asarray(sample, dtype=np.intp)
    estimates = {}
    for name, y in (targets or {}).items():
        try:
            variance = local_mean_variance(s, y, pi, k, geometry)
        except NeighborCountError:
            variance = 0.0
        estimates[name] = (ht_total(s, y, pi), variance)
    return SampleMetrics(weight, int(s.size), sample_energy(s, geometry), spatial_balance(s, pi, geometry),
                         local_balance(s, pop, pi, geometry), balance_deviation(s, pop, pi), estimates)


def aggregate(rows: List[SampleMetrics],
              targets: Dict[str, np.ndarray] = None,
              level: float = DEFAULT_CONFIDENCE_LEVEL) -> tuple[Dict[str, MetricSummary], List[TargetSummary]]:
    """
    Weighted means and standard deviations of every metric, and accuracy of every target estimate

    :param rows: Per-sample metrics, weights summing to 1
    :param targets: Study variables the rows hold estimates for (Default: None)
    :param level: Confidence level of the normal intervals (Default: 0.95)
    :return: Metric summaries and target summaries
    """
    w = np.array([r.weight for r in rows])
    summary = {}
    for name in METRIC_NAMES:
        values = np.array([getattr(r, name) for r in rows])
        mean = float(w @ values)
        summary[name] = MetricSummary(mean, math.sqrt(max(0.0, float(w @ (values - mean) ** 2))))

    z = normal_quantile(level)
    target_summaries = []
    for name, y in (targets or {}).items():
        total = float(np.sum(y))
        estimates = np.array([r.estimates[name][0] for r in rows])
        variances = np.array([r.estimates[name][1] for r in rows])
        error = np.abs(estimates - total)
        rmse = math.sqrt(float(w @ error ** 2))
        relative = total != 0
        if not relative:
            loggy.warn(f"Target '{name}' has total 0, reporting absolute RMSE")
        covered = error <= z * np.sqrt(np.maximum(variances, 0.0))
        target_summaries.append(TargetSummary(name, total, float(w @ estimates), rmse,
                                              rmse / abs(total) if relative else None, relative,
                                              float(w @ covered)))
    return summary, target_summaries


def evaluate_support(design_support: DesignSupport,
                     pop: Population,
                     geometry: DistanceProvider,
                     pi: float | Sequence[float],
                     targets: Dict[str, np.ndarray] = None,
                     level: float = DEFAULT_CONFIDENCE_LEVEL,
                     k: int = DEFAULT_NEIGHBORS,
                     design: str = "",
                     threads: int = 1) -> MetricsReport:
    """
    Evaluate every distinct sample of a design weighted by its probability, no randomness involved

    :param design_support: Distinct samples and multiplicities
    :param pop: Population
    :param geometry: Distances over the population
    :param pi: Inclusion probabilities
    :param targets: Study variables (Default: None)
    :param level: Confidence level (Default: 0.95)
    :param k: Local mean variance group size (Default: 2)
    :param design: Name of the design
    :param threads: Samples evaluated concurrently (Default: 1)
    :raises EmptyDesignError: If the support is empty
    :return: Metrics report
    """
    if not len(design_support):
        raise EmptyDesignError(design)
    weights = design_support.weights.tolist()

    def _measure(i: int) -> SampleMetrics:
        return sample_metrics(design_support.samples[i], pop, geometry, pi, targets, k, weights[i])

    rows = _map_ordered(_measure, len(design_support), threads, f"Evaluating {design or 'design'} support")
    summary, target_summaries = aggregate(rows, targets, level)
    return MetricsReport(design, SUPPORT_MODE, rows, summary, target_summaries)


def evaluate_replicates(draw: Callable[[np.random.Generator], Sequence[int]],
                        replicates: int,
                        seed: int,
                        pop: Population,
                        geometry: DistanceProvider,
                        pi: float | Sequence[float],
                        targets: Dict[str, np.ndarray] = None,
                        level: float = DEFAULT_CONFIDENCE_LEVEL,
                        k: int = DEFAULT_NEIGHBORS,
                        design: str = "",
                        threads: int = 1) -> MetricsReport:
    """
    Evaluate a design by Monte Carlo. Replicate r draws from its own 'replicate-r' stream of the master seed,
    so results do not depend on the thread count

    :param draw: Draws one sample given a generator
    :param replicates: Number of replicates
    :param seed: Master seed
    :param pop: Population
    :param geometry: Distances over the population
    :param pi: Inclusion probabilities
    :param targets: Study variables (Default: None)
    :param level: Confidence level (Default: 0.95)
    :param k: Local mean variance group size (Default: 2)
    :param design: Name of the design
    :param threads: Replicates evaluated concurrently (Default: 1)
    :raises EmptyDesignError: If no replicates are requested
    :return: Metrics report
    """
    if replicates < 1:
        raise EmptyDesignError(design)
    weight = 1.0 / replicates

    def _measure(r: int) -> SampleMetrics:
        sample = draw(stream_rng(seed, f"replicate-{r}"))
        return sample_metrics(sample, pop, geometry, pi, targets, k, weight)

    rows = _map_ordered(_measure, replicates, threads, f"Evaluating {design or 'design'} replicates")
    summary, target_summaries = aggregate(rows, targets, level)
    return MetricsReport(design, REPLICATE_MODE, rows, summary, target_summaries)


def _map_ordered(func: Callable[[int], SampleMetrics], count: int, threads: int, desc: str) -> List[SampleMetrics]:
    """
    Apply func to 0..count-1, results in index order

    :param func: Function of the index
    :param count: Number of indices
    :param threads: Worker threads, 1 runs inline
    :param desc: Progress bar description
    :return: Results in index order
    """
    progress = loggy.manual_data_queue(count, desc, "sample") if count > 1 else None
    results = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for row in pool.map(func, range(count)):
                results.append(row)
                if progress:
                    progress.update(1)
    else:
        for i in range(count):
            results.append(func(i))
            if progress:
                progress.update(1)
    return results
