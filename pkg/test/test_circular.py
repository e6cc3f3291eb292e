"""
File: test_circular.py

Description: Circular window design and its annealer

@author Derek Garcia
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from anneal.config import FALLBACK_TEMPERATURE
from anneal.annealer import run
from anneal.schedule import AnnealSchedule, cooling_rate, default_schedule
from circular.circular import circular_windows, CircularDesign, circular_anneal, initial_circular_temperature, \
    default_circular_schedule
from geometry.distance import DistanceProvider
from population.population import Population, synth_uniform
from samplers.initialization import init_by_sampling
from samplers.lpm import lpm_generator
from tactical.configuration import validate, inclusion_probs


def test_circular_windows_wrap():
    windows = circular_windows([0, 1, 2, 3, 4], 2)
    assert [w.tolist() for w in windows] == [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]
    with pytest.raises(ValueError):
        circular_windows([0, 1], 3)


def test_design_as_configuration(uniform_geometry):
    design = CircularDesign(np.random.default_rng(1).permutation(40), 7, uniform_geometry)
    D = design.as_configuration()
    assert validate(D)
    assert (D.M, D.c) == (40, 7)
    assert inclusion_probs(D).first(3) == Fraction(7, 40)


def test_design_rejects_non_permutation(uniform_geometry):
    with pytest.raises(ValueError):
        CircularDesign([0] * 40, 7, uniform_geometry)


def test_swap_deltas_match_recompute(uniform_geometry):
    rng = np.random.default_rng(2)
    design = CircularDesign(rng.permutation(40), 7, uniform_geometry)
    for _ in range(100):
        p, q = rng.choice(40, size=2, replace=False)
        deltas = design.swap_deltas(int(p), int(q))
        before = design.ledger.energies
        design.apply_swap(int(p), int(q), deltas)
        fresh = CircularDesign(design.sigma, 7, uniform_geometry)
        np.testing.assert_allclose(design.ledger.energies, fresh.ledger.energies, atol=1e-10)
        changed = np.flatnonzero(np.abs(fresh.ledger.energies - before) > 1e-12)
        assert set(changed.tolist()) <= set(deltas)


def test_circular_anneal(uniform_geometry):
    schedule = AnnealSchedule(2000, 1e-3, cooling_rate(2000))
    result = circular_anneal(uniform_geometry, 7, schedule, seed=3)
    assert result.best_energy <= result.initial_energy + 1e-12
    assert result.design(uniform_geometry, 7).expected_energy == pytest.approx(result.best_energy)
    assert sorted(result.sigma.tolist()) == list(range(40))
    again = circular_anneal(uniform_geometry, 7, schedule, seed=3)
    np.testing.assert_array_equal(result.sigma, again.sigma)


def test_circular_anneal_zero_iterations_keeps_start(uniform_geometry):
    sigma0 = np.arange(40)[::-1]
    result = circular_anneal(uniform_geometry, 5, AnnealSchedule(0, 1.0, 1.0), seed=4, sigma0=sigma0)
    np.testing.assert_array_equal(result.sigma, sigma0)
    assert result.best_energy == pytest.approx(result.initial_energy)


def test_circular_temperature_is_median_swap_change(uniform_geometry):
    design = CircularDesign(np.random.default_rng(5).permutation(40), 7, uniform_geometry)
    rng = np.random.default_rng(6)
    changes = []
    for _ in range(200):
        p, q = rng.choice(40, size=2, replace=False)
        changes.append(abs(sum(design.swap_deltas(int(p), int(q)).values())) / 40)
    t0 = initial_circular_temperature(design, np.random.default_rng(6), probes=200)
    assert t0 == pytest.approx(float(np.median(changes)) / math.log(2))
    assert t0 > 0


def test_circular_temperature_scale_differs_from_window_configuration():
    geometry = DistanceProvider(synth_uniform(400, 5, seed=7))
    design = CircularDesign(np.random.default_rng(8).permutation(400), 20, geometry)
    circular_t0 = initial_circular_temperature(design, np.random.default_rng(9))
    window_t0 = default_schedule(design.as_configuration(), geometry, 1000, np.random.default_rng(9)).t0
    # a position swap moves up to 2n windows, a column swap only 2 samples
    assert circular_t0 > 2 * window_t0


def test_circular_temperature_falls_back_without_changes():
    geometry = DistanceProvider(Population(np.zeros((6, 2))))
    design = CircularDesign(np.arange(6), 3, geometry)
    assert initial_circular_temperature(design, np.random.default_rng(10), probes=20) == FALLBACK_TEMPERATURE


def test_default_circular_schedule(uniform_geometry):
    design = CircularDesign(np.random.default_rng(11).permutation(40), 7, uniform_geometry)
    schedule = default_circular_schedule(design, 1000, np.random.default_rng(12), probes=100)
    assert schedule.t0 == pytest.approx(initial_circular_temperature(design, np.random.default_rng(12), probes=100))
    assert schedule.alpha == cooling_rate(1000)
    assert not schedule.metropolis
    fixed = default_circular_schedule(design, 1000, np.random.default_rng(12), t0=2.0, alpha=0.9, metropolis=True)
    assert (fixed.t0, fixed.alpha, fixed.metropolis) == (2.0, 0.9, True)


def _tactical_beats_circular(N: int, p: int, n: int, iterations: int, seeds: range) -> int:
    wins = 0
    for seed in seeds:
        geometry = DistanceProvider(synth_uniform(N, p, seed=seed))
        rng = np.random.default_rng(seed)
        D0 = init_by_sampling(N, n, lpm_generator(geometry), rng)
        tactical = run(D0, default_schedule(D0, geometry, iterations, rng), geometry, rng)
        sigma0 = rng.permutation(N)
        schedule = default_circular_schedule(CircularDesign(sigma0, n, geometry), iterations, rng)
        circular = circular_anneal(geometry, n, schedule, rng, sigma0)
        wins += tactical.best_energy <= circular.best_energy
    return wins


def test_tactical_beats_circular_on_equal_budget():
    assert _tactical_beats_circular(60, 2, 6, 20_000, range(10)) >= 9


@pytest.mark.slow
def test_tactical_beats_circular_on_equal_budget_full():
    assert _tactical_beats_circular(1000, 5, 50, 10 ** 6, range(10)) >= 9
