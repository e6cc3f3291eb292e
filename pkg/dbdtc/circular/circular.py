"""
File: circular.py

Description: Circular baseline design. Units are arranged on a circle and the samples are the N contiguous
windows of n units. The ordering is optimized by simulated annealing over position swaps

@author Derek Garcia
"""

import time
from dataclasses import dataclass
from typing import List, Sequence

import loggy
import numpy as np
from loggy import Timer

from anneal.annealer import accepts
from anneal.config import DEFAULT_DRIFT_CHECK_INTERVAL, DEFAULT_DRIFT_TOLERANCE, DEFAULT_TRAJECTORY_ROWS, \
    PROGRESS_INTERVAL, PROPOSAL_CHUNK, DEFAULT_PROBE_SWAPS, DEFAULT_FINAL_TEMPERATURE_RATIO
from anneal.schedule import AnnealSchedule, cooling_rate, temperature_from_changes
from anneal.trajectory import TrajectoryRecorder
from dto.trajectory_dto import TrajectoryPoint, AnnealCounters
from energy.energy import EnergyLedger, sample_energy, replacement_delta, check_drift
from geometry.distance import DistanceProvider
from tactical.configuration import TacticalConfiguration


def circular_windows(sigma: Sequence[int], n: int) -> List[np.ndarray]:
    """
    The N windows of n consecutive units around the circle

    :param sigma: Circular order of the units
    :param n: Window length
    :raises ValueError: If n is not in 1..N
    :return: Window k holds sigma[k], ..., sigma[k + n - 1] with positions mod N
    """
    order = np.asarray(sigma, dtype=np.intp)
    N = order.size
    if not 1 <= n <= N:
        raise ValueError(f"Window length must satisfy 1 <= n <= N, got n={n}, N={N}")
    positions = (np.arange(N)[:, None] + np.arange(n)[None, :]) % N
    return list(order[positions])


class CircularDesign:
    """
    Circular ordering with the energy of every window
    """

    def __init__(self, sigma: Sequence[int], n: int, geometry: DistanceProvider):
        """
        Create new design

        :param sigma: Circular order, a permutation of 0..N-1
        :param n: Window length
        :param geometry: Distances over the population
        :raises ValueError: If sigma is not a permutation of the population
        """
        order = np.array(sigma, dtype=np.intp)
        if order.size != geometry.size or not np.array_equal(np.sort(order), np.arange(geometry.size)):
            raise ValueError(f"Circular order must be a permutation of {geometry.size} units")
        self._sigma = order
        self._n = n
        self._geometry = geometry
        self.ledger = EnergyLedger([sample_energy(w, geometry) for w in circular_windows(order, n)])

    @property
    def N(self) -> int:
        """
        :return: Number of units and windows
        """
        return self._sigma.size

    @property
    def n(self) -> int:
        """
        :return: Window length
        """
        return self._n

    @property
    def sigma(self) -> np.ndarray:
        """
        :return: Copy of the circular order
        """
        return self._sigma.copy()

    @property
    def expected_energy(self) -> float:
        """
        :return: Mean window energy
        """
        return self.ledger.expected

    def window(self, k: int) -> np.ndarray:
        """
        :param k: Window index
        :return: Units of window k
        """
        return self._sigma[(k + np.arange(self._n)) % self.N]

    def swap_deltas(self, p: int, q: int) -> dict[int, float]:
        """
        Energy change of every window holding exactly one of two positions if their units are swapped.
        Windows holding both keep the same units

        :param p: First position
        :param q: Second position
        :return: Window index to energy change
        """
        N, n = self.N, self._n
        holds_p = {(p - t) % N for t in range(n)}
        holds_q = {(q - t) % N for t in range(n)}
        x, y = int(self._sigma[p]), int(self._sigma[q])
        deltas = {}
        for k in holds_p - holds_q:
            deltas[k] = replacement_delta(self.window(k), x, y, self._geometry)
        for k in holds_q - holds_p:
            deltas[k] = replacement_delta(self.window(k), y, x, self._geometry)
        return deltas

    def apply_swap(self, p: int, q: int, deltas: dict[int, float]) -> None:
        """
        Swap the units at two positions and patch the window energies

        :param p: First position
        :param q: Second position
        :param deltas: Window energy changes from swap_deltas
        """
        self._sigma[p], self._sigma[q] = self._sigma[q], self._sigma[p]
        self.ledger.patch(deltas)

    def as_configuration(self) -> TacticalConfiguration:
        """
        :return: The N windows as a configuration with M = N samples and c = n
        """
        return TacticalConfiguration(self.N, self._n, circular_windows(self._sigma, self._n))


def initial_circular_temperature(design: CircularDesign,
                               rng: np.random.Generator,
                               probes: int = DEFAULT_PROBE_SWAPS) -> float:
    """
    Initial temperature scaled to position swaps: median absolute change of the expected energy over random
    position pairs, divided by ln 2

    :param design: Starting design
    :param rng: Random generator
    :param probes: Number of position swaps to probe (Default: 1000)
    :return: Initial temperature
    """
    N = design.N
    changes = []
    if N >= 2:
        for _ in range(probes):
            p, q = rng.choice(N, size=2, replace=False)
            changes.append(abs(sum(design.swap_deltas(int(p), int(q)).values())) / N)
    return temperature_from_changes(changes)


def default_circular_schedule(design: CircularDesign,
                              iterations: int,
                              rng: np.random.Generator,
                              t0: float = None,
                              alpha: float = None,
                              metropolis: bool = False,
                              probes: int = DEFAULT_PROBE_SWAPS,
                              final_ratio: float = DEFAULT_FINAL_TEMPERATURE_RATIO) -> AnnealSchedule:
    """
    Same recipe as the configuration schedule with the temperature probed on position swaps, any given value
    overrides it

    :param design: Starting design
    :param iterations: Number of iterations R
    :param rng: Random generator used for probing
    :param t0: Initial temperature override
    :param alpha: Cooling rate override
    :param metropolis: Use the classical Metropolis rule (Default: False)
    :param probes: Number of probe swaps (Default: 1000)
    :param final_ratio: Final over initial temperature (Default: 1e-8)
    :return: Schedule
    """
    if t0 is None:
        t0 = initial_circular_temperature(design, rng, probes)
    if alpha is None:
        alpha = cooling_rate(iterations, final_ratio)
    return AnnealSchedule(iterations, t0, alpha, metropolis)


@dataclass
class CircularResult:
    """
    Outcome of optimizing a circular design
    """
    sigma: np.ndarray
    best_energy: float
    initial_energy: float
    trajectory: List[TrajectoryPoint]
    counters: AnnealCounters
    schedule: AnnealSchedule
    wall_time: float

    def design(self, geometry: DistanceProvider, n: int) -> CircularDesign:
        """
        :param geometry: Distances over the population
        :param n: Window length
        :return: Design of the best order
        """
        return CircularDesign(self.sigma, n, geometry)


def circular_anneal(geometry: DistanceProvider,
                    n: int,
                    schedule: AnnealSchedule,
                    seed: int | np.random.Generator = None,
                    sigma0: Sequence[int] = None,
                    drift_interval: int = DEFAULT_DRIFT_CHECK_INTERVAL,
                    drift_tolerance: float = DEFAULT_DRIFT_TOLERANCE,
                    trajectory_rows: int = DEFAULT_TRAJECTORY_ROWS) -> CircularResult:
    """
    Optimize the circular order by simulated annealing over random position swaps, accepting with the same
    rule as the configuration annealer

    :param geometry: Distances over the population
    :param n: Window length
    :param schedule: Iterations, initial temperature and cooling rate
    :param seed: Seed or generator
    :param sigma0: Starting order (Default: random permutation)
    :param drift_interval: Accepted moves between full energy recomputes (Default: 10^6)
    :param drift_tolerance: Allowed relative drift at a recompute (Default: 1e-7)
    :param trajectory_rows: Most trajectory rows to keep (Default: 10^4)
    :raises EnergyDriftError: If the patched energies drift too far
    :return: Best order, its recomputed expected energy and the thinned trajectory
    """
    rng = np.random.default_rng(seed)
    N = geometry.size
    design = CircularDesign(rng.permutation(N) if sigma0 is None else sigma0, n, geometry)
    initial = design.expected_energy
    best_sigma = None
    best_energy = initial
    temperature = schedule.t0
    counters = AnnealCounters()
    R = schedule.iterations
    recorder = TrajectoryRecorder(R, trajectory_rows)
    recorder.offer(TrajectoryPoint(0, initial, best_energy, temperature))

    timer = Timer()
    start = time.perf_counter()
    progress = loggy.manual_data_queue(R, "Annealing circular order", "iteration") if R and N >= 2 else None
    since_drift_check = 0
    iteration = 0
    remaining = R if N >= 2 else 0
    while remaining > 0:
        k = min(PROPOSAL_CHUNK, remaining)
        first = rng.integers(N, size=k)
        second = rng.integers(N - 1, size=k)
        second += second >= first
        for p, q, uniform in zip(first.tolist(), second.tolist(), rng.random(k).tolist()):
            iteration += 1
            counters.proposed += 1
            counters.admissible += 1
            deltas = design.swap_deltas(p, q)
            new = (design.ledger.total + sum(deltas.values())) / N
            keep, is_best = accepts(new, design.expected_energy, best_energy, temperature, uniform,
                                    schedule.metropolis)
            if keep:
                if not is_best and best_sigma is None:
                    best_sigma = design.sigma
                design.apply_swap(p, q, deltas)
                counters.accepted += 1
                since_drift_check += 1
                if is_best:
                    best_sigma = None
                    best_energy = design.expected_energy
                    counters.new_best += 1
                if since_drift_check >= drift_interval:
                    design.ledger = check_drift(design.ledger, design.as_configuration(), geometry, drift_tolerance)
                    since_drift_check = 0
                    if best_sigma is None:
                        best_energy = min(best_energy, design.expected_energy)
            temperature *= schedule.alpha
            if recorder.due(iteration):
                recorder.offer(TrajectoryPoint(iteration, design.expected_energy, best_energy, temperature))
            if progress and iteration % PROGRESS_INTERVAL == 0:
                progress.update(PROGRESS_INTERVAL)
        remaining -= k
    if progress and R % PROGRESS_INTERVAL:
        progress.update(R % PROGRESS_INTERVAL)

    sigma = design.sigma if best_sigma is None else best_sigma
    exact = CircularDesign(sigma, n, geometry).expected_energy
    loggy.info(f"Annealed circular order for {R} iterations in {timer.format_time()}s | "
               f"expected energy {initial:.6g} -> {exact:.6g}")
    return CircularResult(sigma, exact, initial, recorder.points, counters, schedule, time.perf_counter() - start)
