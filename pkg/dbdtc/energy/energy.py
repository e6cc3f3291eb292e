"""
File: energy.py

Description: Energy distance between a sample and the population, the expected energy of a configuration
and the incremental change of both under unit swaps

@author Derek Garcia
"""

from typing import Sequence

import numpy as np

from energy.config import DRIFT_FLOOR
from energy.exception import SampleSizeMismatchError, EnergyDriftError
from geometry.distance import DistanceProvider
from tactical.configuration import TacticalConfiguration
from tactical.exception import InadmissibleSwapError


def sample_energy(sample: Sequence[int], geometry: DistanceProvider, n: int = None) -> float:
    """
    Energy distance between the empirical distribution of a sample and the population:
    2 * mean phi over the sample - mean phi over the population - mean distance within the sample

    :param sample: Unit indices
    :param geometry: Distances over the population
    :param n: Expected sample size (Default: size of the sample)
    :raises SampleSizeMismatchError: If the sample size differs from n
    :return: Energy distance, non-negative up to rounding
    """
    s = np.asarray(sample, dtype=np.intp)
    if n is not None and s.size != n:
        raise SampleSizeMismatchError(n, s.size)
    # census matches the population exactly
    if s.size == geometry.size and np.unique(s).size == s.size:
        return 0.0
    phi = geometry.phi
    return float(2 * phi[s].mean() - geometry.phi_mean - geometry.block(s, s).mean())


class EnergyLedger:
    """
    Per-sample energies of a configuration and their running total. Single writer
    """

    def __init__(self, energies: Sequence[float]):
        """
        Create new ledger

        :param energies: Energy of every sample
        """
        self._energies = np.array(energies, dtype=float)
        self._total = float(self._energies.sum())

    @property
    def energies(self) -> np.ndarray:
        """
        :return: Copy of the per-sample energies
        """
        return self._energies.copy()

    @property
    def total(self) -> float:
        """
        :return: Sum of the per-sample energies
        """
        return self._total

    @property
    def expected(self) -> float:
        """
        :return: Mean energy over the samples
        """
        return self._total / self._energies.size

    @property
    def M(self) -> int:
        """
        :return: Number of samples
        """
        return self._energies.size

    def energy(self, k: int) -> float:
        """
        :param k: Sample index
        :return: Energy of sample k
        """
        return float(self._energies[k])

    def patch(self, deltas: dict[int, float]) -> None:
        """
        Add energy changes to individual samples

        :param deltas: Sample index to energy change
        """
        for k, d in deltas.items():
            self._energies[k] += d
        # total moves by the summed deltas in a single addition
        self._total += sum(deltas.values())

    def copy(self) -> 'EnergyLedger':
        """
        :return: Independent copy
        """
        ledger = EnergyLedger.__new__(EnergyLedger)
        ledger._energies = self._energies.copy()
        ledger._total = self._total
        return ledger


def expected_energy(D: TacticalConfiguration, geometry: DistanceProvider) -> EnergyLedger:
    """
    Compute the energy of every sample of a configuration

    :param D: Configuration
    :param geometry: Distances over the population
    :return: Ledger with the mean energy as the expected energy of the design
    """
    return EnergyLedger([sample_energy(D.column_array(k), geometry) for k in range(D.M)])


def _swap_sums(D: TacticalConfiguration, a: int, b: int, u: int, v: int,
               geometry: DistanceProvider) -> tuple[float, float, float]:
    """
    Sums of d(i,u) - d(i,v) over the units of a other than u split into those only in a and those shared
    with b, and over the units only in b other than v. Evaluates at most 2(n-1) differences

    :raises InadmissibleSwapError: If the swap is not admissible
    :return: (only in a, shared, only in b)
    """
    if a == b or not D.contains(a, u) or not D.contains(b, v) or not D.is_admissible(a, b, u, v):
        raise InadmissibleSwapError(a, b, u, v)
    col_a = D.column_array(a)
    col_b = D.column_array(b)
    rest_a = col_a[col_a != u]
    shared = np.isin(rest_a, col_b)
    diff_a = geometry.distance_difference(rest_a, u, v)
    only_b = col_b[(col_b != v) & ~np.isin(col_b, col_a)]
    diff_b = geometry.distance_difference(only_b, u, v)
    return float(diff_a[~shared].sum()), float(diff_a[shared].sum()), float(diff_b.sum())


def delta_swap(D: TacticalConfiguration, a: int, b: int, u: int, v: int, geometry: DistanceProvider) -> float:
    """
    Change of the total energy when u moves from a to b and v from b to a. Only units in exactly one of the
    two samples contribute

    :param D: Configuration before the swap
    :param a: Column holding u
    :param b: Column holding v
    :param u: Unit leaving a
    :param v: Unit leaving b
    :param geometry: Distances over the population
    :raises InadmissibleSwapError: If the swap is not admissible
    :return: Change of the total energy, divide by M for the expected energy
    """
    only_a, _, only_b = _swap_sums(D, a, b, u, v, geometry)
    return 2.0 / D.n ** 2 * (only_a - only_b)


def swap_column_deltas(D: TacticalConfiguration, a: int, b: int, u: int, v: int,
                       geometry: DistanceProvider) -> tuple[float, float]:
    """
    Change of the energies of samples a and b under the swap, their sum is delta_swap

    :param D: Configuration before the swap
    :param a: Column holding u
    :param b: Column holding v
    :param u: Unit leaving a
    :param v: Unit leaving b
    :param geometry: Distances over the population
    :raises InadmissibleSwapError: If the swap is not admissible
    :return: (change of sample a, change of sample b)
    """
    only_a, shared, only_b = _swap_sums(D, a, b, u, v, geometry)
    phi = geometry.phi
    n = D.n
    phi_term = 2.0 * (phi[v] - phi[u]) / n
    scale = 2.0 / n ** 2
    return phi_term + scale * (only_a + shared), -phi_term - scale * (only_b + shared)


def replacement_delta(sample: Sequence[int], out_unit: int, in_unit: int, geometry: DistanceProvider) -> float:
    """
    Change of a sample's energy when one unit is replaced by another unit not in the sample

    :param sample: Unit indices, out_unit included
    :param out_unit: Unit leaving the sample
    :param in_unit: Unit entering the sample
    :param geometry: Distances over the population
    :return: Energy change
    """
    s = np.asarray(sample, dtype=np.intp)
    rest = s[s != out_unit]
    n = s.size
    phi = geometry.phi
    return float(2.0 * (phi[in_unit] - phi[out_unit]) / n
                 + 2.0 / n ** 2 * geometry.distance_difference(rest, out_unit, in_unit).sum())


def check_drift(ledger: EnergyLedger, D: TacticalConfiguration, geometry: DistanceProvider,
                tolerance: float) -> EnergyLedger:
    """
    Compare a patched ledger against a full recompute

    :param ledger: Incrementally patched ledger
    :param D: Configuration the ledger describes
    :param geometry: Distances over the population
    :param tolerance: Allowed relative difference of the totals
    :raises EnergyDriftError: If the totals differ by more than the tolerance
    :return: Recomputed ledger
    """
    fresh = expected_energy(D, geometry)
    if abs(ledger.total - fresh.total) > tolerance * max(abs(fresh.total), DRIFT_FLOOR):
        raise EnergyDriftError(ledger.total, fresh.total, tolerance)
    return fresh
