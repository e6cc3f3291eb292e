"""
File: test_energy.py

Description: Sample energy, expected energy and swap deltas against full recomputes

@author Derek Garcia
"""

import numpy as np
import pytest

from energy.energy import sample_energy, expected_energy, delta_swap, swap_column_deltas, replacement_delta, \
    check_drift, EnergyLedger
from energy.exception import SampleSizeMismatchError, EnergyDriftError
from tactical.configuration import cyclic_init
from tactical.exception import InadmissibleSwapError


def _random_swap(D, rng):
    while True:
        a, b = rng.choice(D.M, size=2, replace=False)
        only_a = D.difference(a, b)
        only_b = D.difference(b, a)
        if only_a and only_b:
            return int(a), int(b), int(rng.choice(only_a)), int(rng.choice(only_b))


def test_sample_energy_single_unit(small_geometry):
    # phi(0) = 19/6 and the population mean of phi is 53/18
    assert sample_energy([0], small_geometry) == pytest.approx(61 / 18)


def test_sample_energy_census_is_zero(small_geometry):
    assert sample_energy(range(6), small_geometry) == 0.0
    assert expected_energy(cyclic_init(6, 6), small_geometry).total == 0.0


def test_sample_energy_is_non_negative(uniform_geometry):
    rng = np.random.default_rng(1)
    for _ in range(200):
        s = rng.choice(40, size=int(rng.integers(1, 40)), replace=False)
        assert sample_energy(s, uniform_geometry) >= -1e-12


def test_sample_energy_size_mismatch(small_geometry):
    with pytest.raises(SampleSizeMismatchError) as e:
        sample_energy([0, 1], small_geometry, n=3)
    assert e.value.found == 2


def test_expected_energy_is_mean_of_columns(uniform_geometry):
    D = cyclic_init(40, 16, seed=2)
    ledger = expected_energy(D, uniform_geometry)
    assert ledger.M == D.M
    manual = [sample_energy(D.column(k), uniform_geometry) for k in range(D.M)]
    assert ledger.expected == pytest.approx(np.mean(manual))
    assert ledger.energy(1) == pytest.approx(manual[1])


def test_delta_swap_matches_recompute(uniform_geometry):
    rng = np.random.default_rng(3)
    D = cyclic_init(40, 16, seed=3)
    for _ in range(200):
        a, b, u, v = _random_swap(D, rng)
        before = expected_energy(D, uniform_geometry)
        delta = delta_swap(D, a, b, u, v, uniform_geometry)
        da, db = swap_column_deltas(D, a, b, u, v, uniform_geometry)
        D.apply_swap(a, b, u, v)
        after = expected_energy(D, uniform_geometry)
        assert delta == pytest.approx(after.total - before.total, abs=1e-10)
        assert da + db == pytest.approx(delta, abs=1e-10)
        assert da == pytest.approx(after.energy(a) - before.energy(a), abs=1e-10)
        assert db == pytest.approx(after.energy(b) - before.energy(b), abs=1e-10)


def test_delta_swap_evaluation_count(uniform_geometry):
    rng = np.random.default_rng(4)
    D = cyclic_init(40, 16, seed=4)
    for _ in range(50):
        a, b, u, v = _random_swap(D, rng)
        uniform_geometry.reset_evaluations()
        delta_swap(D, a, b, u, v, uniform_geometry)
        assert uniform_geometry.evaluations <= 2 * (16 - 1)


def test_delta_swap_inadmissible(uniform_geometry):
    D = cyclic_init(40, 16, seed=5)
    u = D.column(0)[0]
    with pytest.raises(InadmissibleSwapError):
        delta_swap(D, 0, 0, u, u, uniform_geometry)
    shared = [w for w in D.column(0) if w in D.column(1)]
    if shared:
        with pytest.raises(InadmissibleSwapError):
            delta_swap(D, 0, 1, shared[0], shared[0], uniform_geometry)


def test_replacement_delta_matches_recompute(uniform_geometry):
    rng = np.random.default_rng(6)
    for _ in range(100):
        s = rng.choice(40, size=10, replace=False)
        out_unit = int(rng.choice(s))
        in_unit = int(rng.choice(np.setdiff1d(np.arange(40), s)))
        replaced = np.where(s == out_unit, in_unit, s)
        expected = sample_energy(replaced, uniform_geometry) - sample_energy(s, uniform_geometry)
        assert replacement_delta(s, out_unit, in_unit, uniform_geometry) == pytest.approx(expected, abs=1e-10)


def test_ledger_patch():
    ledger = EnergyLedger([1.0, 2.0, 3.0])
    copy = ledger.copy()
    ledger.patch({0: 0.5, 2: -1.0})
    assert ledger.total == pytest.approx(5.5)
    np.testing.assert_allclose(ledger.energies, [1.5, 2.0, 2.0])
    assert copy.total == pytest.approx(6.0)


def test_check_drift(uniform_geometry):
    D = cyclic_init(40, 16, seed=7)
    ledger = expected_energy(D, uniform_geometry)
    fresh = check_drift(ledger, D, uniform_geometry, 1e-9)
    assert fresh.total == pytest.approx(ledger.total)
    ledger.patch({0: 1.0})
    with pytest.raises(EnergyDriftError):
        check_drift(ledger, D, uniform_geometry, 1e-9)
