"""
File: design_factory.py

Description: Util factory to streamline the creation of populations, samplers and designs from config

@author Derek Garcia
"""

import os
from argparse import Namespace
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Sequence, Tuple

import loggy
import numpy as np

from anneal.annealer import AnnealResult, run
from anneal.schedule import AnnealSchedule, default_schedule
from circular.circular import CircularDesign, circular_anneal, default_circular_schedule
from config.parser import Config
from dto.trajectory_dto import TrajectoryPoint
from geometry.distance import DistanceProvider
from metrics.report import MetricsReport, evaluate_support, evaluate_replicates
from population.population import Population, synth_uniform, load_csv, standardize, subset
from samplers.initialization import init_by_sampling
from samplers.lpm import lpm, lpm_generator
from samplers.sampler import Generator, srs, systematic, systematic_pps
from scale.compression import CompressionPlan, compress_lpm
from scale.stratified import Pipeline, StratumDesign, StratifiedDesign
from tactical.configuration import TacticalConfiguration, DesignSupport, cyclic_init, min_params, support
from tactical.io import read_configuration, digest
from util.rng import stream_rng

CIRCULAR_NOTE = "circular order optimized with random position swaps as its proposal kernel"


@dataclass
class CandidateDesign:
    """
    Design ready to evaluate, either by its exact support or by drawing replicates
    """
    name: str
    pi: float | np.ndarray
    support: DesignSupport | None = None
    draw: Callable[[np.random.Generator], Sequence[int]] | None = None
    conditional: bool = False
    note: str | None = None
    provenance: Dict[str, Any] = field(default_factory=dict)
    trajectory: List[TrajectoryPoint] | None = None


@dataclass
class OptimizedDesign:
    """
    Outcome of the optimize pipeline
    """
    initial: TacticalConfiguration
    result: AnnealResult
    plan: CompressionPlan | None = None


def lift_support(design_support: DesignSupport, units: np.ndarray) -> DesignSupport:
    """
    Map a support over a sub-population back to the full population

    :param design_support: Support over sub-population indices
    :param units: Full population index of every sub-population unit
    :return: Support over full population indices
    """
    samples = tuple(tuple(sorted(int(units[i]) for i in s)) for s in design_support.samples)
    return DesignSupport(samples, design_support.multiplicities)


class DesignFactory:
    """
    Create a new factory to create designs
    """

    def __init__(self, config: Config, seed: int, threads: int = 1):
        """
        Create new factory

        :param config: Object with config details
        :param seed: Master seed of the run
        :param threads: Worker threads (Default: 1)
        """
        self._config = config
        self._seed = seed
        self._threads = threads

    def create_population(self, args: Namespace, dimension: int = None,
                          targets: List[str] = None) -> Tuple[Population, Dict[str, np.ndarray]]:
        """
        Create the population named by the cli args

        :param args: Args with the population source
        :param dimension: Override the dimension of a synthetic population (Default: None)
        :param targets: Study variables to load (Default: None)
        :raises UnknownColumnError: If a synthetic population has no such target column
        :return: Population and study variables
        """
        targets = targets or []
        if args.synthetic:
            pop = synth_uniform(args.synthetic['N'], dimension or args.synthetic['p'], self._seed)
            loggy.info(f"Synthesized population of {pop.size} units with {pop.dimension} auxiliary variables")
            values = {t: pop.column(t) for t in targets}
        else:
            pop, values = load_csv(args.input, args.aux, args.id_column, args.stratum_column, targets)
        if args.standardize:
            pop = standardize(pop)
        return pop, values

    def create_geometry(self, pop: Population) -> DistanceProvider:
        """
        :param pop: Population
        :return: Distance provider with the configured cache threshold
        """
        return DistanceProvider(pop, self._config.geometry.cache_threshold)

    @staticmethod
    def create_generator(init: str, geometry: DistanceProvider) -> Generator:
        """
        :param init: Sampling based initialization method, 'lpm' or 'systematic'
        :param geometry: Distances over the population
        :raises ValueError: If the method has no generator
        :return: Fixed size generator
        """
        match init:
            case 'lpm':
                return lpm_generator(geometry)
            case 'systematic':
                return systematic_pps
        raise ValueError(f"'{init}' is not a sampling based initialization method")

    def initialize(self, pop: Population, n: int, init: str, geometry: DistanceProvider,
                   rng: np.random.Generator) -> TacticalConfiguration:
        """
        Build the starting configuration

        :param pop: Population
        :param n: Sample size
        :param init: 'cyclic', 'lpm' or 'systematic'
        :param geometry: Distances over the population
        :param rng: Random generator
        :return: Minimum tactical configuration
        """
        if init == 'cyclic':
            return cyclic_init(pop.size, n, seed=rng)
        return init_by_sampling(pop.size, n, self.create_generator(init, geometry), rng)

    def create_schedule(self, D: TacticalConfiguration, geometry: DistanceProvider, args: Namespace,
                        rng: np.random.Generator, workers: int = 1) -> AnnealSchedule:
        """
        :param D: Starting configuration
        :param geometry: Distances over the population
        :param args: Args with the annealing overrides
        :param rng: Random generator for probing
        :param workers: Parallel sweep width (Default: 1)
        :return: Annealing schedule
        """
        anneal = self._config.anneal
        iterations = anneal.iterations if args.iters is None else args.iters
        return default_schedule(D, geometry, iterations, rng, workers,
                                t0=args.t0, alpha=args.alpha, metropolis=args.metropolis,
                                probes=anneal.probe_swaps, final_ratio=anneal.final_temperature_ratio)

    def _workers(self, D: TacticalConfiguration) -> int:
        """
        :param D: Configuration to anneal
        :return: Parallel sweep width, at most one pair of samples per worker
        """
        if self._threads <= 1:
            return 1
        workers = min(self._threads, D.M // 2)
        if workers < self._threads:
            loggy.warn(f"Only {D.M} samples, annealing with {max(workers, 1)} parallel swaps per sweep")
        return max(workers, 1)

    def optimize(self, pop: Population, n: int, args: Namespace, init_rng: np.random.Generator,
                 anneal_rng: np.random.Generator, geometry: DistanceProvider = None,
                 parallel: bool = True) -> Tuple[TacticalConfiguration, AnnealResult]:
        """
        Initialize and anneal a configuration

        :param pop: Population
        :param n: Sample size
        :param args: Args with the initialization and annealing settings
        :param init_rng: Random generator for the initialization
        :param anneal_rng: Random generator for probing and annealing
        :param geometry: Distances over the population (Default: created)
        :param parallel: Allow parallel sweeps (Default: True)
        :return: Starting configuration and annealing result
        """
        geometry = geometry or self.create_geometry(pop)
        D0 = self.initialize(pop, n, args.init, geometry, init_rng)
        workers = self._workers(D0) if parallel else 1
        schedule = self.create_schedule(D0, geometry, args, anneal_rng, workers)
        anneal = self._config.anneal
        result = run(D0, schedule, geometry, anneal_rng, workers,
                     drift_interval=anneal.drift_check_interval,
                     drift_tolerance=anneal.drift_tolerance,
                     trajectory_rows=anneal.trajectory_rows)
        return D0, result

    def needs_compression(self, N: int, n: int, requested: bool) -> bool:
        """
        :param N: Population size
        :param n: Sample size
        :param requested: Compression was asked for
        :return: True if the population should be compressed first
        """
        if requested:
            return True
        M = min_params(N, n).M
        ceiling = self._config.scale.max_configuration_size
        if M > ceiling:
            loggy.warn(f"Minimum configuration has {M} samples, more than {ceiling}, compressing the population")
            return True
        return False

    def optimize_design(self, pop: Population, n: int, args: Namespace,
                        geometry: DistanceProvider = None) -> OptimizedDesign:
        """
        Full optimize pipeline on the 'init' and 'anneal' streams, compressing first when requested or needed

        :param pop: Population
        :param n: Sample size
        :param args: Args with the pipeline settings
        :param geometry: Distances over the population (Default: created)
        :return: Optimized design and its compression plan if any
        """
        geometry = geometry or self.create_geometry(pop)
        plan = None
        if self.needs_compression(pop.size, n, getattr(args, 'compress', False)):
            plan = compress_lpm(pop, n, geometry, self._seed,
                                M_star=getattr(args, 'compress_size', None),
                                ratio=getattr(args, 'compress_ratio', None))
            pop = plan.population
            geometry = self.create_geometry(pop)
        D0, result = self.optimize(pop, n, args, stream_rng(self._seed, "init"), stream_rng(self._seed, "anneal"),
                                   geometry)
        return OptimizedDesign(D0, result, plan)

    def create_pipeline(self, args: Namespace) -> Pipeline:
        """
        Pipeline for stratified runs, sequential sweeps since strata already run concurrently

        :param args: Args with the pipeline settings
        :return: Pipeline taking (sub-population, n_h, rng)
        """

        def _pipeline(sub: Population, n: int, rng: np.random.Generator) -> TacticalConfiguration:
            init_rng, anneal_rng = rng.spawn(2)
            _, result = self.optimize(sub, n, args, init_rng, anneal_rng, parallel=False)
            return result.best

        return _pipeline

    def create_candidate(self, name: str, pop: Population, geometry: DistanceProvider, n: int,
                         args: Namespace) -> CandidateDesign:
        """
        Build a benchmark design

        :param name: One of srs, systematic, lpm, circular, dbdtc
        :param pop: Population
        :param geometry: Distances over the population
        :param n: Sample size
        :param args: Args with the design settings
        :raises ValueError: If the design is unknown
        :return: Design ready to evaluate
        """
        N = pop.size
        pi = n / N
        match name:
            case 'srs':
                return CandidateDesign(name, pi, draw=lambda rng: srs(N, n, rng))
            case 'systematic':
                order_key = getattr(args, 'order_key', None)
                return CandidateDesign(name, pi, draw=lambda rng: systematic(pop, order_key, n, rng),
                                       provenance={'order_key': order_key})
            case 'lpm':
                probs = np.full(N, pi)
                return CandidateDesign(name, pi, draw=lambda rng: lpm(probs, geometry, rng))
            case 'circular':
                return self._create_circular(pop, geometry, n, args)
            case 'dbdtc':
                optimized = self.optimize_design(pop, n, args, geometry)
                result = optimized.result
                design_support = support(result.best)
                provenance = {
                    'initial_energy': result.initial_energy,
                    'best_energy': result.best_energy,
                    'M': result.best.M,
                    'digest': digest(result.best)
                }
                if optimized.plan:
                    design_support = lift_support(design_support, optimized.plan.units)
                    provenance['compression'] = optimized.plan.to_dict(pop.ids, self._config.scale.plan_id_limit)
                return CandidateDesign(name, pi, support=design_support, conditional=optimized.plan is not None,
                                       provenance=provenance, trajectory=result.trajectory)
        raise ValueError(f"Unknown design '{name}'")

    def _create_circular(self, pop: Population, geometry: DistanceProvider, n: int,
                         args: Namespace) -> CandidateDesign:
        """
        Optimize the circular baseline with the same iteration budget as the configuration

        :param pop: Population
        :param geometry: Distances over the population
        :param n: Sample size
        :param args: Args with the annealing settings
        :return: Design ready to evaluate
        """
        rng = stream_rng(self._seed, "circular")
        sigma0 = rng.permutation(pop.size)
        anneal = self._config.anneal
        schedule = default_circular_schedule(CircularDesign(sigma0, n, geometry),
                                             anneal.iterations if args.iters is None else args.iters, rng,
                                             t0=args.t0, alpha=args.alpha, metropolis=args.metropolis,
                                             probes=anneal.probe_swaps,
                                             final_ratio=anneal.final_temperature_ratio)
        result = circular_anneal(geometry, n, schedule, rng, sigma0,
                                 drift_interval=anneal.drift_check_interval,
                                 drift_tolerance=anneal.drift_tolerance,
                                 trajectory_rows=anneal.trajectory_rows)
        D = result.design(geometry, n).as_configuration()
        return CandidateDesign('circular', n / pop.size, support=support(D), note=CIRCULAR_NOTE,
                               provenance={'initial_energy': result.initial_energy,
                                           'best_energy': result.best_energy,
                                           't0': schedule.t0,
                                           'digest': digest(D)},
                               trajectory=result.trajectory)

    def evaluate(self, candidate: CandidateDesign, pop: Population, geometry: DistanceProvider,
                 targets: Dict[str, np.ndarray] = None, replicates: int = None) -> MetricsReport:
        """
        Evaluate a design over its support when known, otherwise over Monte Carlo replicates

        :param candidate: Design to evaluate
        :param pop: Population
        :param geometry: Distances over the population
        :param targets: Study variables (Default: None)
        :param replicates: Monte Carlo replicates (Default: config evaluation.replicates)
        :return: Metrics report
        """
        evaluation = self._config.evaluation
        if candidate.support is not None:
            report = evaluate_support(candidate.support, pop, geometry, candidate.pi, targets,
                                      evaluation.confidence_level, evaluation.neighbors, candidate.name,
                                      self._threads)
        else:
            report = evaluate_replicates(candidate.draw, replicates or evaluation.replicates, self._seed, pop,
                                         geometry, candidate.pi, targets, evaluation.confidence_level,
                                         evaluation.neighbors, candidate.name, self._threads)
        report.conditional = candidate.conditional
        report.note = candidate.note
        report.provenance = candidate.provenance
        return report

    @staticmethod
    def configuration_candidate(name: str, D: TacticalConfiguration, units: np.ndarray = None,
                                N: int = None, conditional: bool = False) -> CandidateDesign:
        """
        Wrap a stored configuration as a design

        :param name: Name of the design
        :param D: Configuration
        :param units: Full population index of every configuration unit if compressed (Default: None)
        :param N: Full population size if compressed (Default: D.N)
        :param conditional: Design is conditional on a compression (Default: False)
        :return: Design ready to evaluate over its support
        """
        design_support = support(D)
        if units is not None:
            design_support = lift_support(design_support, units)
        return CandidateDesign(name, D.n / (N or D.N), support=design_support, conditional=conditional,
                               provenance={'digest': digest(D)})

    def plan_units(self, plan: Dict[str, Any], pop: Population) -> np.ndarray:
        """
        Full population index of every unit a compression plan kept. Plans saved as a descriptor are redone
        from their seed

        :param plan: Plan dict written by optimize --compress
        :param pop: Full population the plan was made on
        :raises ValueError: If the plan does not belong to the population
        :return: Unit indices in sub-population order
        """
        if plan['N'] != pop.size:
            raise ValueError(f"Plan was made on {plan['N']} units but the population has {pop.size}")
        if 'units' in plan:
            index = {uid: i for i, uid in enumerate(pop.ids)}
            missing = [u for u in plan['units'] if u not in index]
            if missing:
                raise ValueError(f"Plan has {len(missing)} unit ids not in the population, i.e. '{missing[0]}'")
            return np.array([index[u] for u in plan['units']], dtype=np.intp)
        loggy.info("Plan has no unit list, redoing the compression from its seed")
        return compress_lpm(pop, plan['n'], self.create_geometry(pop), plan['descriptor']['seed'],
                            M_star=plan['M_star']).units

    @staticmethod
    def load_strata(strata: Dict[str, Any], directory: str, pop: Population) -> StratifiedDesign:
        """
        Rebuild a stratified design from its strata file

        :param strata: Strata dict written by optimize --stratum-n
        :param directory: Directory holding the stratum configurations
        :param pop: Full population the strata were made on
        :raises ValueError: If a stratum does not belong to the population
        :return: Stratified design
        """
        index = {uid: i for i, uid in enumerate(pop.ids)}
        designs = []
        for entry in strata['strata']:
            D = read_configuration(os.path.join(directory, entry['configuration']))
            missing = [u for u in entry['units'] if u not in index]
            if missing or D.N != len(entry['units']):
                raise ValueError(f"Stratum '{entry['label']}' does not match the population")
            units = np.array([index[u] for u in entry['units']], dtype=np.intp)
            designs.append(StratumDesign(entry['label'], units, subset(pop, units), entry['n'], D))
        return StratifiedDesign(designs)
