"""
File: test_scale.py

Description: Compression and stratified designs for large populations

@author Derek Garcia
"""

from fractions import Fraction

import numpy as np
import pytest

from geometry.distance import DistanceProvider
from population.exception import MissingStrataError
from population.population import Population, synth_uniform
from scale.compression import compression_parameters, compress_lpm
from scale.exception import CompressionRangeError, StratumAllocationError
from scale.stratified import stratified_run
from tactical.configuration import cyclic_init, draw, validate


def test_compression_parameters_large_population():
    params = compression_parameters(10 ** 6, 51)
    assert params.M_star == 19607
    assert params.N_star == 999957
    assert params.weight == Fraction(999957, 10 ** 6)
    assert params.unconditional_pi == Fraction(51, 10 ** 6)


def test_compression_parameters_ratio():
    assert compression_parameters(10 ** 6, 51, ratio=0.5).M_star == 9803
    assert compression_parameters(100, 10, ratio=0.01).M_star == 1
    with pytest.raises(ValueError):
        compression_parameters(100, 10, ratio=1.5)


@pytest.mark.parametrize("M_star", [0, 12])
def test_compression_parameters_range(M_star):
    with pytest.raises(CompressionRangeError) as e:
        compression_parameters(100, 9, M_star=M_star)
    assert e.value.limit == 11


def test_compress_lpm(uniform_pop, uniform_geometry):
    plan = compress_lpm(uniform_pop, 4, uniform_geometry, seed=1, M_star=3)
    assert plan.N_star == 12
    assert plan.units.size == 12
    assert plan.population.size == 12
    assert plan.conditional
    assert plan.population.ids == tuple(uniform_pop.ids[i] for i in plan.units)
    again = compress_lpm(uniform_pop, 4, uniform_geometry, seed=1, M_star=3)
    np.testing.assert_array_equal(plan.units, again.units)
    np.testing.assert_array_equal(plan.lift([0, 1]), np.sort(plan.units[[0, 1]]))


def test_plan_to_dict(uniform_pop, uniform_geometry):
    plan = compress_lpm(uniform_pop, 4, uniform_geometry, seed=2, M_star=3)
    listed = plan.to_dict(uniform_pop.ids)
    assert listed['units'] == [uniform_pop.ids[i] for i in plan.units]
    assert listed['unconditional_pi'] == "1/10"
    described = plan.to_dict(id_limit=5)
    assert 'units' not in described
    assert described['descriptor'] == {'seed': 2, 'stream': 'compress', 'method': 'lpm'}


def _two_stage_frequencies(reps: int) -> np.ndarray:
    pop = synth_uniform(40, 2, seed=3)
    geometry = DistanceProvider(pop)
    rng = np.random.default_rng(4)
    counts = np.zeros(40)
    for r in range(reps):
        plan = compress_lpm(pop, 4, geometry, seed=r, M_star=3)
        D = cyclic_init(plan.N_star, 4, seed=rng)
        counts[plan.lift(draw(D, rng))] += 1
    return counts / reps


@pytest.mark.slow
def test_two_stage_inclusion_probability():
    reps = 20_000
    freq = _two_stage_frequencies(reps)
    se = np.sqrt(0.1 * 0.9 / reps)
    assert np.all(np.abs(freq - 0.1) < 4 * se)


def _stratified_pop() -> Population:
    aux = np.random.default_rng(5).random((30, 2))
    strata = ["a"] * 10 + ["b"] * 12 + ["c"] * 8
    order = np.random.default_rng(6).permutation(30)
    return Population(aux[order], strata=[strata[i] for i in order])


def _pipeline(sub, n, rng):
    return cyclic_init(sub.size, n, seed=rng)


def test_stratified_run():
    pop = _stratified_pop()
    design = stratified_run(pop, {"a": 3, "b": 4, "c": 2}, _pipeline, seed=7)
    assert design.n == 9
    assert {s.label for s in design.strata} == {"a", "b", "c"}
    for s in design.strata:
        assert validate(s.configuration)
        assert s.configuration.N == s.population.size
    pi = design.inclusion_probabilities(30)
    for i, label in enumerate(pop.strata):
        assert pi[i] == pytest.approx({"a": 0.3, "b": 4 / 12, "c": 0.25}[label])
    sample = design.draw(np.random.default_rng(8))
    assert sample.size == 9
    labels = [pop.strata[i] for i in sample]
    assert (labels.count("a"), labels.count("b"), labels.count("c")) == (3, 4, 2)


def test_stratified_run_does_not_depend_on_threads():
    pop = _stratified_pop()
    one = stratified_run(pop, {"a": 3, "b": 4, "c": 2}, _pipeline, seed=9)
    many = stratified_run(pop, {"a": 3, "b": 4, "c": 2}, _pipeline, seed=9, threads=3)
    assert [s.configuration for s in one.strata] == [s.configuration for s in many.strata]


@pytest.mark.parametrize("allocation", [{"a": 3, "b": 4}, {"a": 3, "b": 4, "c": 2, "d": 1},
                                        {"a": 11, "b": 4, "c": 2}, {"a": 0, "b": 4, "c": 2}])
def test_stratified_run_bad_allocation(allocation):
    with pytest.raises(StratumAllocationError):
        stratified_run(_stratified_pop(), allocation, _pipeline, seed=1)


def test_stratified_run_needs_strata(uniform_pop):
    with pytest.raises(MissingStrataError):
        stratified_run(uniform_pop, {"a": 1}, _pipeline, seed=1)
