"""
File: test_anneal.py

Description: Acceptance rule, schedules, trajectory thinning and annealing runs

@author Derek Garcia
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from anneal.annealer import accepts, propose, run, AnnealState, Proposal, step, parallel_sweep
from anneal.exception import WorkerBudgetError
from anneal.schedule import AnnealSchedule, cooling_rate, default_schedule, probe_temperature
from anneal.trajectory import TrajectoryRecorder
from dto.trajectory_dto import TrajectoryPoint
from energy.energy import expected_energy
from geometry.distance import DistanceProvider
from population.population import synth_uniform
from samplers.initialization import init_by_sampling
from samplers.lpm import lpm_generator
from tactical.configuration import cyclic_init, validate, inclusion_probs


def test_accepts_new_best():
    assert accepts(0.4, 1.0, 0.5, 1.0, 0.99) == (True, True)


def test_accepts_downhill():
    assert accepts(0.9, 1.0, 0.5, 1.0, 0.99) == (True, False)


def test_accepts_uphill_by_temperature():
    # exp(-0.2) is about 0.819
    assert accepts(1.2, 1.0, 0.5, 1.0, 0.5) == (True, False)
    assert accepts(1.2, 1.0, 0.5, 1.0, 0.9) == (False, False)


def test_accepts_frozen():
    assert accepts(1.0, 1.0, 0.5, 0.0, 0.0) == (False, False)
    assert accepts(1.0, 1.0, 0.5, 0.0, 0.0, metropolis=True) == (True, False)
    assert accepts(1.1, 1.0, 0.5, 0.0, 0.0) == (False, False)


def test_propose():
    D = cyclic_init(12, 4, seed=1)
    rng = np.random.default_rng(2)
    for _ in range(100):
        p = propose(D, rng)
        assert p.a != p.b
        assert D.contains(p.a, p.u)
        assert D.contains(p.b, p.v)
        assert p.admissible == D.is_admissible(p.a, p.b, p.u, p.v)
    assert propose(cyclic_init(4, 4), rng) is None


def test_cooling_rate():
    assert cooling_rate(100, 1e-8) ** 100 == pytest.approx(1e-8)
    assert cooling_rate(0) == 1.0


@pytest.mark.parametrize("iterations, t0, alpha", [(-1, 1.0, 0.5), (10, 0.0, 0.5), (10, 1.0, 0.0), (10, 1.0, 1.5)])
def test_schedule_rejects(iterations, t0, alpha):
    with pytest.raises(ValueError):
        AnnealSchedule(iterations, t0, alpha)


def test_default_schedule(uniform_geometry):
    D = cyclic_init(40, 16, seed=3)
    schedule = default_schedule(D, uniform_geometry, 1000, np.random.default_rng(3), workers=2)
    assert schedule.t0 > 0
    assert schedule.alpha ** 500 == pytest.approx(1e-8)
    fixed = default_schedule(D, uniform_geometry, 1000, np.random.default_rng(3), t0=2.0, alpha=0.9)
    assert (fixed.t0, fixed.alpha) == (2.0, 0.9)


def test_probe_temperature_on_census_falls_back(uniform_geometry):
    # a single sample has no swaps to probe
    assert probe_temperature(cyclic_init(40, 40), uniform_geometry, np.random.default_rng(4)) > 0


def test_trajectory_recorder_thins():
    recorder = TrajectoryRecorder(1000, rows=12)
    for i in range(1001):
        recorder.offer(TrajectoryPoint(i, 1.0, 1.0, 1.0))
    iterations = [p.iteration for p in recorder.points]
    assert len(iterations) <= 12
    assert iterations[0] == 0
    assert iterations[-1] == 1000
    with pytest.raises(ValueError):
        TrajectoryRecorder(10, rows=2)


def _schedule(R: int) -> AnnealSchedule:
    return AnnealSchedule(R, 1e-3, cooling_rate(R))


def test_run_zero_iterations_keeps_start(uniform_geometry):
    D0 = cyclic_init(40, 16, seed=5)
    result = run(D0, _schedule(0), uniform_geometry, seed=5)
    assert result.best == D0
    assert result.best_energy == pytest.approx(result.initial_energy)
    assert result.counters.proposed == 0
    assert len(result.trajectory) == 1


def test_run_improves_and_keeps_margins(uniform_geometry):
    D0 = cyclic_init(40, 16, seed=6)
    before = D0.copy()
    result = run(D0, _schedule(3000), uniform_geometry, seed=6)
    assert D0 == before
    assert validate(result.best)
    assert inclusion_probs(result.best).counts.tolist() == inclusion_probs(D0).counts.tolist()
    assert result.best_energy <= result.initial_energy + 1e-12
    assert result.best_energy == pytest.approx(expected_energy(result.best, uniform_geometry).expected)
    assert result.counters.proposed == 3000
    best = [p.best_energy for p in result.trajectory]
    assert all(b <= a + 1e-12 for a, b in zip(best, best[1:]))
    assert result.trajectory[-1].iteration == 3000


def test_run_is_deterministic(uniform_geometry):
    D0 = cyclic_init(40, 16, seed=7)
    a = run(D0, _schedule(2000), uniform_geometry, seed=8)
    b = run(D0, _schedule(2000), uniform_geometry, seed=8)
    assert a.best == b.best
    assert a.best_energy == b.best_energy


def test_parallel_run_is_deterministic(uniform_geometry):
    D0 = cyclic_init(40, 16, seed=9)
    a = run(D0, _schedule(2000), uniform_geometry, seed=10, workers=2)
    b = run(D0, _schedule(2000), uniform_geometry, seed=10, workers=2)
    assert a.best == b.best
    assert validate(a.best)
    assert a.best_energy <= a.initial_energy + 1e-12
    assert a.counters.proposed == 2000


def test_run_rejects_too_many_workers(uniform_geometry):
    # 5 samples hold only 2 disjoint pairs
    with pytest.raises(WorkerBudgetError) as e:
        run(cyclic_init(40, 16, seed=11), _schedule(10), uniform_geometry, workers=3)
    assert e.value.M == 5


def test_run_single_sample(uniform_geometry):
    D0 = cyclic_init(40, 40)
    result = run(D0, _schedule(100), uniform_geometry, seed=12)
    assert result.best == D0
    assert result.best_energy == 0.0


def test_run_drift_checks_stay_quiet(uniform_geometry):
    result = run(cyclic_init(40, 16, seed=13), _schedule(2000), uniform_geometry, seed=13, drift_interval=10)
    assert validate(result.best)


@pytest.mark.slow
def test_anneal_beats_its_start_on_uniform_population():
    geometry = DistanceProvider(synth_uniform(1000, 2, seed=1))
    rng = np.random.default_rng(1)
    D0 = init_by_sampling(1000, 50, lpm_generator(geometry), rng)
    schedule = default_schedule(D0, geometry, 10 ** 5, rng)
    result = run(D0, schedule, geometry, rng)
    assert validate(result.best)
    assert result.best_energy < result.initial_energy
    assert math.isfinite(result.best_energy)


def _sweep_state(seed: int, geometry: DistanceProvider) -> AnnealState:
    return AnnealState(cyclic_init(40, 16, seed=seed), geometry, 1e-2)


def test_parallel_sweep_keeps_ledger_exact(uniform_geometry):
    state = _sweep_state(14, uniform_geometry)
    schedule = AnnealSchedule(300, 1e-2, 0.99)
    rng = np.random.default_rng(15)
    with ThreadPoolExecutor(2) as pool:
        for _ in range(300):
            parallel_sweep(state, 2, rng, schedule, pool)
            assert state.current_energy == pytest.approx(expected_energy(state.D, uniform_geometry).expected,
                                                         abs=1e-9)
    assert validate(state.D)
    assert state.iteration == state.counters.proposed == 600
    assert state.counters.accepted > 0
    assert state.temperature == pytest.approx(1e-2 * 0.99 ** 300)


def test_parallel_sweep_best_matches_recompute(uniform_geometry):
    state = _sweep_state(16, uniform_geometry)
    schedule = AnnealSchedule(300, 1e-2, 0.99)
    rng = np.random.default_rng(17)
    for _ in range(300):
        parallel_sweep(state, 2, rng, schedule)
        best = state.best_configuration()
        assert state.best_energy == pytest.approx(expected_energy(best, uniform_geometry).expected, abs=1e-9)
        assert state.best_energy <= state.current_energy + 1e-12
    assert state.counters.new_best > 0


def test_single_worker_sweep_matches_step(uniform_geometry):
    swept = _sweep_state(18, uniform_geometry)
    stepped = _sweep_state(18, uniform_geometry)
    schedule = AnnealSchedule(200, 1e-2, 0.99)
    sweep_rng = np.random.default_rng(19)
    step_rng = np.random.default_rng(19)
    for _ in range(200):
        parallel_sweep(swept, 1, sweep_rng, schedule)
        # same draws a one pair sweep makes
        a, b = step_rng.permutation(stepped.D.M)[:2].tolist()
        pair_rng = np.random.default_rng(step_rng.integers(0, np.iinfo(np.int64).max, size=1).tolist()[0])
        D = stepped.D
        u = D.unit_at(a, int(pair_rng.integers(D.column_length(a))))
        v = D.unit_at(b, int(pair_rng.integers(D.column_length(b))))
        step(stepped, Proposal(a, b, u, v, D.is_admissible(a, b, u, v)), pair_rng.random(), schedule)
        assert swept.D == stepped.D
        assert swept.current_energy == pytest.approx(stepped.current_energy, abs=1e-12)
        assert swept.best_energy == pytest.approx(stepped.best_energy, abs=1e-12)
    assert swept.counters.accepted == stepped.counters.accepted
    assert swept.counters.admissible == stepped.counters.admissible
    assert swept.temperature == stepped.temperature


@pytest.mark.parametrize("workers", [0, 3])
def test_parallel_sweep_rejects_worker_budget(workers, uniform_geometry):
    state = _sweep_state(20, uniform_geometry)
    with pytest.raises(WorkerBudgetError) as e:
        parallel_sweep(state, workers, np.random.default_rng(21), AnnealSchedule(1, 1e-2, 0.99))
    assert e.value.M == 5
    assert state.iteration == 0


def _decay_battery(N: int, p: int, n: int, iterations: int, seeds: range) -> None:
    for seed in seeds:
        geometry = DistanceProvider(synth_uniform(N, p, seed=seed))
        rng = np.random.default_rng(seed)
        D0 = cyclic_init(N, n, seed=rng)
        result = run(D0, default_schedule(D0, geometry, iterations, rng), geometry, rng)
        best = [point.best_energy for point in result.trajectory]
        assert all(b <= a for a, b in zip(best, best[1:]))
        assert result.best_energy < result.initial_energy


def test_best_energy_decays_over_seed_battery():
    _decay_battery(100, 2, 10, 5_000, range(10))


@pytest.mark.slow
def test_best_energy_decays_over_seed_battery_full():
    _decay_battery(1000, 5, 50, 10 ** 6, range(10))
