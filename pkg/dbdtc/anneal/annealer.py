"""
File: annealer.py

Description: Simulated annealing over admissible unit swaps between samples of a tactical configuration.
Sequential steps or sweeps of disjoint sample pairs evaluated on a thread pool

@author Derek Garcia
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Tuple

import loggy
import numpy as np
from loggy import Timer

from anneal.config import DEFAULT_DRIFT_CHECK_INTERVAL, DEFAULT_DRIFT_TOLERANCE, DEFAULT_TRAJECTORY_ROWS, \
    PROPOSAL_CHUNK, PROGRESS_INTERVAL
from anneal.exception import WorkerBudgetError
from anneal.schedule import AnnealSchedule
from anneal.trajectory import TrajectoryRecorder
from dto.trajectory_dto import TrajectoryPoint, AnnealCounters
from energy.energy import expected_energy, swap_column_deltas, check_drift
from geometry.distance import DistanceProvider
from tactical.configuration import TacticalConfiguration


class Proposal(NamedTuple):
    """
    Candidate swap of u out of sample a with v out of sample b
    """
    a: int
    b: int
    u: int
    v: int
    admissible: bool


def propose(D: TacticalConfiguration, rng: np.random.Generator) -> Proposal | None:
    """
    Pick two distinct samples and a random unit from each

    :param D: Current configuration
    :param rng: Random generator
    :return: Proposal, None if the configuration has fewer than 2 samples
    """
    if D.M < 2:
        return None
    a = int(rng.integers(D.M))
    b = int(rng.integers(D.M - 1))
    b += b >= a
    u = D.unit_at(a, int(rng.integers(D.column_length(a))))
    v = D.unit_at(b, int(rng.integers(D.column_length(b))))
    return Proposal(a, b, u, v, D.is_admissible(a, b, u, v))


def accepts(new: float, current: float, best: float, temperature: float, uniform: float,
            metropolis: bool = False) -> Tuple[bool, bool]:
    """
    Acceptance rule. A new best is always kept. Otherwise an uphill or level move is undone when
    uniform >= exp(-change / T) and any downhill move is kept. The Metropolis variant keeps level moves too

    :param new: Expected energy after the swap
    :param current: Expected energy before the swap
    :param best: Best expected energy so far
    :param temperature: Current temperature
    :param uniform: Uniform [0,1) draw
    :param metropolis: Use the classical Metropolis rule (Default: False)
    :return: (keep the swap, swap is a new best)
    """
    if new < best:
        return True, True
    change = new - current
    if change < 0 or (metropolis and change == 0):
        return True, False
    probability = math.exp(-change / temperature) if temperature > 0 else 0.0
    return uniform < probability, False


class AnnealState:
    """
    Current configuration with its energy ledger, the best configuration seen, temperature and counters.
    The best configuration is only copied out when the current one stops being the best
    """

    def __init__(self,
                 D: TacticalConfiguration,
                 geometry: DistanceProvider,
                 temperature: float,
                 drift_interval: int = DEFAULT_DRIFT_CHECK_INTERVAL,
                 drift_tolerance: float = DEFAULT_DRIFT_TOLERANCE):
        """
        Create new state, takes ownership of D

        :param D: Starting configuration
        :param geometry: Distances over the population
        :param temperature: Starting temperature
        :param drift_interval: Accepted swaps between full energy recomputes (Default: 10^6)
        :param drift_tolerance: Allowed relative drift at a recompute (Default: 1e-7)
        """
        self.D = D
        self.geometry = geometry
        self.ledger = expected_energy(D, geometry)
        self.snapshot: TacticalConfiguration | None = None
        self.best_energy = self.ledger.expected
        self.temperature = temperature
        self.counters = AnnealCounters()
        self.iteration = 0
        self._drift_interval = drift_interval
        self._drift_tolerance = drift_tolerance
        self._since_drift_check = 0

    @property
    def current_energy(self) -> float:
        """
        :return: Expected energy of the current configuration
        """
        return self.ledger.expected

    @property
    def current_is_best(self) -> bool:
        """
        :return: True if the current configuration is the best seen
        """
        return self.snapshot is None

    def best_configuration(self) -> TacticalConfiguration:
        """
        :return: Copy of the best configuration seen
        """
        return (self.D if self.snapshot is None else self.snapshot).copy()

    def point(self) -> TrajectoryPoint:
        """
        :return: Trajectory row for the current iteration
        """
        return TrajectoryPoint(self.iteration, self.current_energy, self.best_energy, self.temperature)

    def commit(self, a: int, b: int, u: int, v: int, delta_a: float, delta_b: float) -> None:
        """
        Apply an accepted swap and patch the ledger

        :param a: Column holding u
        :param b: Column holding v
        :param u: Unit leaving a
        :param v: Unit leaving b
        :param delta_a: Energy change of sample a
        :param delta_b: Energy change of sample b
        """
        self.D.apply_swap(a, b, u, v)
        self.ledger.patch({a: delta_a, b: delta_b})
        self.counters.accepted += 1
        self._since_drift_check += 1

    def keep_best(self) -> None:
        """
        Copy out the current configuration as the best before it changes
        """
        if self.snapshot is None:
            self.snapshot = self.D.copy()

    def mark_best(self) -> None:
        """
        Record the current configuration as the new best
        """
        self.snapshot = None
        self.best_energy = self.ledger.expected
        self.counters.new_best += 1

    def check_drift(self) -> None:
        """
        Recompute the ledger once enough swaps were accepted since the last check

        :raises EnergyDriftError: If the patched energies drifted too far
        """
        if self._since_drift_check >= self._drift_interval:
            self.ledger = check_drift(self.ledger, self.D, self.geometry, self._drift_tolerance)
            self._since_drift_check = 0
            if self.snapshot is None:
                self.best_energy = min(self.best_energy, self.ledger.expected)
            loggy.debug_info(f"Energy ledger resynced at iteration {self.iteration}")


def step(state: AnnealState, proposal: Proposal | None, uniform: float, schedule: AnnealSchedule) -> AnnealState:
    """
    One annealing iteration. Inadmissible proposals change nothing but still cool the temperature

    :param state: State to update in place
    :param proposal: Proposed swap, None for a no-op
    :param uniform: Uniform [0,1) draw for the acceptance rule
    :param schedule: Cooling schedule
    :return: Updated state
    """
    state.iteration += 1
    state.counters.proposed += 1
    if proposal is not None and proposal.admissible:
        state.counters.admissible += 1
        a, b, u, v, _ = proposal
        delta_a, delta_b = swap_column_deltas(state.D, a, b, u, v, state.geometry)
        new = (state.ledger.total + (delta_a + delta_b)) / state.ledger.M
        keep, is_best = accepts(new, state.current_energy, state.best_energy, state.temperature, uniform,
                                schedule.metropolis)
        if keep:
            if not is_best:
                state.keep_best()
            state.commit(a, b, u, v, delta_a, delta_b)
            if is_best:
                state.mark_best()
            state.check_drift()
    state.temperature *= schedule.alpha
    return state


def parallel_sweep(state: AnnealState,
                   workers: int,
                   rng: np.random.Generator,
                   schedule: AnnealSchedule,
                   pool: ThreadPoolExecutor = None) -> AnnealState:
    """
    Evaluate one proposal in each of W disjoint random sample pairs against the sweep's starting energies and
    temperature, then apply the accepted swaps in pair order. Swaps on disjoint pairs do not interact, so the
    result does not depend on the order workers finish in

    :param state: State to update in place
    :param workers: Number of pairs W
    :param rng: Random generator for the pairing and the per-pair seeds
    :param schedule: Cooling schedule, cools once per sweep
    :param pool: Thread pool to evaluate pairs on (Default: evaluate in this thread)
    :raises WorkerBudgetError: If W is not in 1..M/2
    :return: Updated state
    """
    D = state.D
    M = D.M
    if not 1 <= workers <= M // 2:
        raise WorkerBudgetError(workers, M)
    order = rng.permutation(M)[:2 * workers].tolist()
    seeds = rng.integers(0, np.iinfo(np.int64).max, size=workers).tolist()
    tasks = [(order[2 * k], order[2 * k + 1], seeds[k]) for k in range(workers)]
    total, current, best, temperature = state.ledger.total, state.current_energy, state.best_energy, state.temperature

    def _evaluate(task: Tuple[int, int, int]):
        a, b, seed = task
        pair_rng = np.random.default_rng(seed)
        u = D.unit_at(a, int(pair_rng.integers(D.column_length(a))))
        v = D.unit_at(b, int(pair_rng.integers(D.column_length(b))))
        uniform = pair_rng.random()
        if not D.is_admissible(a, b, u, v):
            return a, b, u, v, False, None
        delta_a, delta_b = swap_column_deltas(D, a, b, u, v, state.geometry)
        keep, _ = accepts((total + (delta_a + delta_b)) / M, current, best, temperature, uniform,
                          schedule.metropolis)
        return a, b, u, v, True, (delta_a, delta_b) if keep else None

    results = list(pool.map(_evaluate, tasks)) if pool else [_evaluate(t) for t in tasks]

    accepted = False
    for a, b, u, v, admissible, deltas in results:
        state.counters.proposed += 1
        state.counters.admissible += admissible
        if deltas is None:
            continue
        state.keep_best()
        state.commit(a, b, u, v, *deltas)
        accepted = True
    state.iteration += workers
    if accepted and state.current_energy < state.best_energy:
        state.mark_best()
    state.check_drift()
    state.temperature *= schedule.alpha
    return state


def _proposal_stream(D: TacticalConfiguration, rng: np.random.Generator,
                     count: int) -> Iterator[Tuple[int, int, int, int, float]]:
    """
    Pre-draw proposals in chunks: sample pair, positions inside both samples and the acceptance draw

    :param D: Configuration, positions are resolved against it when used
    :param rng: Random generator
    :param count: Number of proposals
    :return: Iterator of (a, b, position in a, position in b, uniform)
    """
    while count > 0:
        k = min(PROPOSAL_CHUNK, count)
        a = rng.integers(D.M, size=k)
        b = rng.integers(D.M - 1, size=k)
        b += b >= a
        yield from zip(a.tolist(), b.tolist(), rng.integers(D.n, size=k).tolist(),
                       rng.integers(D.n, size=k).tolist(), rng.random(k).tolist())
        count -= k


@dataclass
class AnnealResult:
    """
    Outcome of an annealing run
    """
    best: TacticalConfiguration
    best_energy: float
    initial_energy: float
    final_energy: float
    trajectory: List[TrajectoryPoint]
    counters: AnnealCounters
    schedule: AnnealSchedule
    workers: int
    wall_time: float


def run(D0: TacticalConfiguration,
        schedule: AnnealSchedule,
        geometry: DistanceProvider,
        seed: int | np.random.Generator = None,
        workers: int = 1,
        drift_interval: int = DEFAULT_DRIFT_CHECK_INTERVAL,
        drift_tolerance: float = DEFAULT_DRIFT_TOLERANCE,
        trajectory_rows: int = DEFAULT_TRAJECTORY_ROWS) -> AnnealResult:
    """
    Optimize a configuration by simulated annealing

    :param D0: Starting configuration, left unchanged
    :param schedule: Iterations, initial temperature and cooling rate
    :param geometry: Distances over the population
    :param seed: Seed or generator
    :param workers: Disjoint pairs per sweep, 1 runs sequential steps (Default: 1)
    :param drift_interval: Accepted swaps between full energy recomputes (Default: 10^6)
    :param drift_tolerance: Allowed relative drift at a recompute (Default: 1e-7)
    :param trajectory_rows: Most trajectory rows to keep (Default: 10^4)
    :raises WorkerBudgetError: If more workers than disjoint pairs are requested
    :raises EnergyDriftError: If the patched energies drift too far
    :return: Best configuration, its recomputed expected energy and the thinned trajectory
    """
    rng = np.random.default_rng(seed)
    R = schedule.iterations
    if workers > 1 and workers > D0.M // 2:
        raise WorkerBudgetError(workers, D0.M)
    state = AnnealState(D0.copy(), geometry, schedule.t0, drift_interval, drift_tolerance)
    initial = state.current_energy
    recorder = TrajectoryRecorder(R, trajectory_rows)
    recorder.offer(state.point())

    timer = Timer()
    start = time.perf_counter()
    if R and D0.M < 2:
        loggy.warn("Configuration has a single sample, nothing to optimize")
        state.iteration = R
        state.counters.proposed = R
        state.temperature = schedule.t0 * schedule.alpha ** R
        recorder.offer(state.point())
    elif R:
        progress = loggy.manual_data_queue(R, "Annealing", "iteration")
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                while state.iteration < R:
                    done = state.iteration
                    parallel_sweep(state, min(workers, R - state.iteration), rng, schedule, pool)
                    recorder.offer(state.point())
                    if progress:
                        progress.update(state.iteration - done)
        else:
            D = state.D
            for a, b, pos_u, pos_v, uniform in _proposal_stream(D, rng, R):
                u = D.unit_at(a, pos_u)
                v = D.unit_at(b, pos_v)
                step(state, Proposal(a, b, u, v, D.is_admissible(a, b, u, v)), uniform, schedule)
                if recorder.due(state.iteration):
                    recorder.offer(state.point())
                if progress and state.iteration % PROGRESS_INTERVAL == 0:
                    progress.update(PROGRESS_INTERVAL)
            if progress and R % PROGRESS_INTERVAL:
                progress.update(R % PROGRESS_INTERVAL)

    best = state.best_configuration()
    best_energy = expected_energy(best, geometry).expected
    counters = state.counters
    loggy.info(f"Annealed {R} iterations in {timer.format_time()}s | expected energy {initial:.6g} -> "
               f"{best_energy:.6g} | accepted {counters.accepted}/{counters.admissible} admissible")
    return AnnealResult(best, best_energy, initial, state.current_energy, recorder.points, counters, schedule,
                        workers, time.perf_counter() - start)
