"""
File: test_geometry.py

Description: Distance provider, cached and on demand

@author Derek Garcia
"""

import numpy as np
import pytest

from geometry.distance import DistanceProvider
from geometry.exception import UnitIndexError, NeighborCountError
from population.population import Population, synth_uniform


def test_cached_and_streamed_agree():
    pop = synth_uniform(30, 3, seed=5)
    cached = DistanceProvider(pop)
    streamed = DistanceProvider(pop, cache_threshold=0)
    assert cached.cached
    assert not streamed.cached
    idx = np.arange(30)
    np.testing.assert_allclose(cached.block(idx, idx), streamed.block(idx, idx), atol=1e-12)
    np.testing.assert_allclose(cached.phi, streamed.phi, atol=1e-12)
    assert cached.distance(3, 7) == pytest.approx(streamed.distance(3, 7))


def test_distance_is_symmetric_and_zero_on_diagonal(small_geometry):
    assert small_geometry.distance(0, 4) == pytest.approx(5.0)
    assert small_geometry.distance(4, 0) == pytest.approx(5.0)
    assert small_geometry.distance(2, 2) == 0.0


def test_phi_is_mean_distance(small_geometry):
    # unit 0 at 0 to units at 0,1,2,3,5,8
    assert small_geometry.phi[0] == pytest.approx(19 / 6)
    assert small_geometry.phi_mean == pytest.approx(small_geometry.phi.mean())


def test_out_of_range_index(small_geometry):
    with pytest.raises(UnitIndexError) as e:
        small_geometry.distance(0, 6)
    assert e.value.index == 6
    with pytest.raises(UnitIndexError):
        small_geometry.distances_to([-1], 0)


def test_evaluation_counter(small_geometry):
    small_geometry.reset_evaluations()
    small_geometry.distances_to([0, 1, 2], 5)
    small_geometry.distance_difference(np.array([[0, 1], [2, 3]]), 4, 5)
    assert small_geometry.evaluations == 7
    small_geometry.reset_evaluations()
    assert small_geometry.evaluations == 0


def test_distance_difference(small_geometry):
    diff = small_geometry.distance_difference([0, 3], 4, 1)
    np.testing.assert_allclose(diff, [5.0 - 1.0, 2.0 - 2.0])


def test_nearest_neighbor_ties_to_smallest_index():
    geometry = DistanceProvider(Population(np.array([[0.0], [-1.0], [1.0], [3.0]])))
    assert geometry.nearest_neighbor(0, [3, 2, 1]) == 1
    assert geometry.nearest_neighbor(0, [0, 3]) == 3
    with pytest.raises(ValueError):
        geometry.nearest_neighbor(0, [0])


def test_voronoi_assign(small_geometry):
    assignment = small_geometry.voronoi_assign([1, 4])
    np.testing.assert_array_equal(assignment, [1, 1, 1, 1, 4, 4])


def test_voronoi_assign_census_maps_to_self():
    # coincident units stay with themselves
    geometry = DistanceProvider(Population(np.array([[0.0], [0.0], [1.0]])))
    np.testing.assert_array_equal(geometry.voronoi_assign([0, 1, 2]), [0, 1, 2])


def test_voronoi_assign_empty(small_geometry):
    with pytest.raises(ValueError):
        small_geometry.voronoi_assign([])


def test_nearest_sampled_neighbors(small_geometry):
    np.testing.assert_array_equal(small_geometry.nearest_sampled_neighbors([0, 2, 3, 5], 2, 3), [3, 0])
    # 1 and 3 are both at distance 1 from 2
    np.testing.assert_array_equal(small_geometry.nearest_sampled_neighbors([1, 2, 3], 2, 2), [1])


def test_nearest_sampled_neighbors_errors(small_geometry):
    with pytest.raises(NeighborCountError) as e:
        small_geometry.nearest_sampled_neighbors([0, 1], 0, 3)
    assert e.value.k == 3
    with pytest.raises(ValueError):
        small_geometry.nearest_sampled_neighbors([0, 1], 2, 2)


def test_phi_small_line():
    geometry = DistanceProvider(Population(np.array([[0.0], [1.0], [2.0]])))
    np.testing.assert_allclose(geometry.phi, [1.0, 2 / 3, 1.0])


def test_phi_coincident_units_is_zero():
    geometry = DistanceProvider(Population(np.ones((4, 2))))
    np.testing.assert_array_equal(geometry.phi, np.zeros(4))
