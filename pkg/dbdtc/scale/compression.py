"""
File: compression.py

Description: Shrink a population to M* x n units with the local pivotal method so the minimum configuration
has only M* samples. Every unit keeps inclusion probability n / N over both stages

@author Derek Garcia
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence

import loggy
import numpy as np
from loggy import Timer

from geometry.distance import DistanceProvider
from population.population import Population, subset
from samplers.lpm import lpm
from scale.config import PLAN_ID_LIMIT, COMPRESSION_STREAM
from scale.exception import CompressionRangeError
from tactical.configuration import min_params
from util.rng import stream_rng


@dataclass(frozen=True)
class CompressionParameters:
    """
    Sizes and probabilities of a compression, exact
    """
    N: int
    n: int
    M_star: int
    N_star: int
    weight: Fraction
    unconditional_pi: Fraction


def compression_parameters(N: int, n: int, M_star: int = None, ratio: float = None) -> CompressionParameters:
    """
    Work out a compression without running it

    :param N: Population size
    :param n: Sample size
    :param M_star: Configuration size after compression (Default: floor(N / n))
    :param ratio: Fraction of floor(N / n) to use when M_star is not given (Default: 1)
    :raises ValueError: If n is not in 1..N or ratio is not in (0, 1]
    :raises CompressionRangeError: If M_star is not in 1..floor(N / n)
    :return: M*, N* = M* n, the first stage probability N* / N and the two stage inclusion probability
    """
    min_params(N, n)
    limit = N // n
    if M_star is None:
        if ratio is not None and not 0 < ratio <= 1:
            raise ValueError(f"Compression ratio must be in (0, 1], got {ratio}")
        M_star = max(1, int(limit * ratio)) if ratio is not None else limit
    if not 1 <= M_star <= limit:
        raise CompressionRangeError(M_star, limit)
    N_star = M_star * n
    weight = Fraction(N_star, N)
    return CompressionParameters(N, n, M_star, N_star, weight, weight * Fraction(1, M_star))


@dataclass(frozen=True, eq=False)
class CompressionPlan:
    """
    Result of the compression stage. The design built on the sub-population is conditional on it
    """
    parameters: CompressionParameters
    units: np.ndarray
    population: Population
    seed: int | None = None
    conditional: bool = True

    @property
    def M_star(self) -> int:
        """
        :return: Configuration size after compression
        """
        return self.parameters.M_star

    @property
    def N_star(self) -> int:
        """
        :return: Size of the sub-population
        """
        return self.parameters.N_star

    def lift(self, sample: Sequence[int]) -> np.ndarray:
        """
        :param sample: Unit indices in the sub-population
        :return: Sorted unit indices in the full population
        """
        return np.sort(self.units[np.asarray(sample, dtype=np.intp)])

    def to_dict(self, ids: Sequence[str] = None, id_limit: int = PLAN_ID_LIMIT) -> Dict[str, object]:
        """
        Serialize the plan. Large plans keep only what is needed to redo the compression

        :param ids: Unit ids of the full population (Default: 1-based indices)
        :param id_limit: Most ids to list (Default: 10^6)
        :return: Dict ready for json
        """
        p = self.parameters
        data = {
            'N': p.N,
            'n': p.n,
            'M_star': p.M_star,
            'N_star': p.N_star,
            'weight': str(p.weight),
            'unconditional_pi': str(p.unconditional_pi),
            'conditional': self.conditional
        }
        if p.N_star <= id_limit:
            data['units'] = [ids[i] if ids is not None else str(i + 1) for i in self.units.tolist()]
        else:
            data['descriptor'] = {'seed': self.seed, 'stream': COMPRESSION_STREAM, 'method': 'lpm'}
        return data


def compress_lpm(pop: Population,
                 n: int,
                 geometry: DistanceProvider,
                 seed: int,
                 M_star: int = None,
                 ratio: float = None) -> CompressionPlan:
    """
    Select N* = M* n units with the local pivotal method, equal probabilities N* / N

    :param pop: Population
    :param n: Sample size
    :param geometry: Distances over the population
    :param seed: Master seed, the selection uses its compression stream
    :param M_star: Configuration size after compression (Default: floor(N / n))
    :param ratio: Fraction of floor(N / n) to use when M_star is not given (Default: 1)
    :raises CompressionRangeError: If M_star is not in 1..floor(N / n)
    :return: Compression plan with the induced sub-population
    """
    params = compression_parameters(pop.size, n, M_star, ratio)
    timer = Timer()
    units = lpm(np.full(pop.size, float(params.weight)), geometry, stream_rng(seed, COMPRESSION_STREAM))
    loggy.info(f"Compressed {pop.size} units to {params.N_star} in {timer.format_time()}s | "
               f"M*={params.M_star}, unconditional inclusion {params.unconditional_pi}")
    loggy.warn("Compressed designs are conditional on the selected sub-population")
    return CompressionPlan(params, units, subset(pop, units), seed)
