"""
File: configuration.py

Description: Tactical configurations, the N x M binary designs whose M columns are samples of n units
and whose rows each appear in c samples

@author Derek Garcia
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from tactical.exception import InvalidPatternError, InvalidPermutationError, InadmissibleSwapError


@dataclass(frozen=True)
class MinParams:
    """
    Smallest configuration size for a population of N units and samples of n
    """
    g: int
    M: int
    c: int


def min_params(N: int, n: int) -> MinParams:
    """
    Compute the minimum configuration size and unit multiplicity

    :param N: Population size
    :param n: Sample size
    :raises ValueError: If n is not in 1..N
    :return: g = gcd(N, n), M = N / g, c = n / g
    """
    if not 1 <= n <= N:
        raise ValueError(f"Sample size must satisfy 1 <= n <= N, got n={n}, N={N}")
    g = gcd(N, n)
    return MinParams(g, N // g, n // g)


class TacticalConfiguration:
    """
    Configuration of M samples over N units. Columns are held as unit-index arrays with a set per column for
    constant time membership. Nothing is checked on construction, use validate
    """

    def __init__(self, N: int, n: int, columns: Iterable[Iterable[int]]):
        """
        Create new configuration

        :param N: Population size
        :param n: Sample size
        :param columns: Unit indices (0-based) of every sample
        """
        self._N = N
        self._n = n
        self._columns: List[np.ndarray] = [np.sort(np.asarray(col, dtype=np.intp).ravel()) for col in columns]
        self._sets = [set(col.tolist()) for col in self._columns]

    @classmethod
    def from_membership(cls, membership: np.ndarray, n: int = None) -> 'TacticalConfiguration':
        """
        Build a configuration from an N x M binary matrix

        :param membership: Binary incidence matrix, rows are units and columns samples
        :param n: Nominal sample size (Default: size of the first column)
        :return: Configuration
        """
        mat = np.asarray(membership)
        columns = [np.flatnonzero(mat[:, k]).tolist() for k in range(mat.shape[1])]
        if n is None:
            n = len(columns[0]) if columns else 0
        return cls(mat.shape[0], n, columns)

    @property
    def N(self) -> int:
        """
        :return: Population size
        """
        return self._N

    @property
    def n(self) -> int:
        """
        :return: Sample size
        """
        return self._n

    @property
    def M(self) -> int:
        """
        :return: Number of samples
        """
        return len(self._columns)

    @property
    def c(self) -> int:
        """
        :return: Samples per unit implied by the margins, n * M / N rounded down
        """
        return self._n * self.M // self._N

    @property
    def columns(self) -> List[List[int]]:
        """
        :return: Sorted copy of every sample
        """
        return [sorted(col.tolist()) for col in self._columns]

    def column(self, k: int) -> List[int]:
        """
        :param k: Column index
        :return: Sorted unit indices of sample k
        """
        return sorted(self._columns[k].tolist())

    def column_array(self, k: int) -> np.ndarray:
        """
        :param k: Column index
        :return: Read only view of the unit indices of sample k, in storage order
        """
        view = self._columns[k].view()
        view.setflags(write=False)
        return view

    def unit_at(self, k: int, position: int) -> int:
        """
        :param k: Column index
        :param position: Position inside the column storage
        :return: Unit stored at that position
        """
        return int(self._columns[k][position])

    def column_length(self, k: int) -> int:
        """
        :param k: Column index
        :return: Number of entries stored in column k
        """
        return len(self._columns[k])

    def contains(self, k: int, i: int) -> bool:
        """
        :param k: Column index
        :param i: Unit index
        :return: True if unit i is in sample k
        """
        return i in self._sets[k]

    def difference(self, a: int, b: int) -> List[int]:
        """
        :param a: Column index
        :param b: Column index
        :return: Units in sample a that are not in sample b
        """
        col = self._columns[a]
        return col[~np.isin(col, self._columns[b])].tolist()

    def is_admissible(self, a: int, b: int, u: int, v: int) -> bool:
        """
        Check whether u (in a) and v (in b) can trade places

        :param a: Column holding u
        :param b: Column holding v
        :param u: Unit leaving a
        :param v: Unit leaving b
        :return: True if u is not in b and v is not in a
        """
        return u not in self._sets[b] and v not in self._sets[a]

    def apply_swap(self, a: int, b: int, u: int, v: int) -> None:
        """
        Move u from a to b and v from b to a in place. Row and column sums are unchanged

        :param a: Column holding u
        :param b: Column holding v
        :param u: Unit leaving a
        :param v: Unit leaving b
        :raises InadmissibleSwapError: If the swap is not admissible
        """
        u, v = int(u), int(v)
        if a == b or u not in self._sets[a] or v not in self._sets[b] or not self.is_admissible(a, b, u, v):
            raise InadmissibleSwapError(a, b, u, v)
        col_a, col_b = self._columns[a], self._columns[b]
        col_a[np.flatnonzero(col_a == u)[0]] = v
        col_b[np.flatnonzero(col_b == v)[0]] = u
        self._sets[a].remove(u)
        self._sets[a].add(v)
        self._sets[b].remove(v)
        self._sets[b].add(u)

    def copy(self) -> 'TacticalConfiguration':
        """
        :return: Independent copy of this configuration
        """
        return TacticalConfiguration(self._N, self._n, self._columns)

    def membership_matrix(self) -> np.ndarray:
        """
        :return: N x M binary incidence matrix
        """
        mat = np.zeros((self._N, self.M), dtype=np.int64)
        for k, col in enumerate(self._columns):
            mat[col, k] = 1
        return mat

    def row_sums(self) -> np.ndarray:
        """
        :return: Number of samples every unit appears in
        """
        counts = np.zeros(self._N, dtype=np.int64)
        for col in self._columns:
            np.add.at(counts, col, 1)
        return counts

    def is_minimum(self) -> bool:
        """
        :return: True if M and c attain the smallest possible configuration size
        """
        params = min_params(self._N, self._n)
        return self.M == params.M and self.c == params.c

    def __eq__(self, other) -> bool:
        if not isinstance(other, TacticalConfiguration):
            return NotImplemented
        return self._N == other._N and self._n == other._n and self.columns == other.columns

    def __repr__(self) -> str:
        return f"TacticalConfiguration(N={self._N}, n={self._n}, M={self.M})"


@dataclass(frozen=True)
class ValidationReport:
    """
    Result of validating a configuration. Holds the first violation found, if any
    """
    ok: bool
    kind: str | None = None
    column: int | None = None
    unit: int | None = None
    expected: int | None = None
    found: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    @property
    def message(self) -> str:
        """
        :return: Human readable summary
        """
        if self.ok:
            return "ok"
        match self.kind:
            case "index":
                return f"unit index {self.unit} out of range in column {self.column}"
            case "duplicate":
                return f"unit {self.unit} appears more than once in column {self.column}"
            case "column_sum":
                return f"column {self.column} holds {self.found} units, expected {self.expected}"
            case _:
                return f"unit {self.unit} appears in {self.found} columns, expected {self.expected}"


def validate(D: TacticalConfiguration) -> ValidationReport:
    """
    Check index ranges, duplicates and both margins, in that order

    :param D: Configuration to check
    :return: Report of the first violation, or ok
    """
    for k, col in enumerate(D.columns):
        for i in col:
            if not 0 <= i < D.N:
                return ValidationReport(False, "index", column=k, unit=i)
        for i, j in zip(col, col[1:]):
            if i == j:
                return ValidationReport(False, "duplicate", column=k, unit=i)
    for k, col in enumerate(D.columns):
        if len(col) != D.n:
            return ValidationReport(False, "column_sum", column=k, expected=D.n, found=len(col))
    rows = D.row_sums()
    # margins force n * M = N * c
    expected = Fraction(D.n * D.M, D.N)
    for i, r in enumerate(rows.tolist()):
        if r != expected:
            return ValidationReport(False, "row_sum", unit=i, expected=D.c, found=r)
    return ValidationReport(True)


def cyclic_init(N: int, n: int, v: Sequence[int] = None, seed: int | np.random.Generator = None) -> TacticalConfiguration:
    """
    Build a minimum configuration whose row i is the i-th cyclic shift of a pattern with c ones among M

    :param N: Population size
    :param n: Sample size
    :param v: Binary pattern of length M with c ones (Default: uniformly random c-subset)
    :param seed: Seed or generator used when v is omitted
    :raises InvalidPatternError: If v has the wrong length or number of ones
    :return: Minimum tactical configuration
    """
    params = min_params(N, n)
    if v is None:
        ones = np.sort(np.random.default_rng(seed).choice(params.M, size=params.c, replace=False))
    else:
        pattern = np.asarray(v, dtype=np.int64)
        if pattern.shape != (params.M,) or not np.isin(pattern, (0, 1)).all() or pattern.sum() != params.c:
            raise InvalidPatternError(pattern.size, int((pattern == 1).sum()), params.M, params.c)
        ones = np.flatnonzero(pattern)
    # D[i, k] = v[(k - i) mod M] so column k holds i = k - t (mod M) for every one t, in each of the g blocks
    k = np.arange(params.M)[:, None, None]
    base = (k - ones[None, :, None]) % params.M
    columns = (base + params.M * np.arange(params.g)[None, None, :]).reshape(params.M, -1)
    return TacticalConfiguration(N, n, columns.tolist())


def permute_rows(D: TacticalConfiguration, perm: Sequence[int]) -> TacticalConfiguration:
    """
    Reorder the rows of the membership matrix, new row i is old row perm[i]

    :param D: Configuration to permute
    :param perm: Permutation of 0..N-1
    :raises InvalidPermutationError: If perm is not a bijection on 0..N-1
    :return: Permuted configuration with the same margins
    """
    p = np.asarray(perm, dtype=np.intp)
    if p.shape != (D.N,):
        raise InvalidPermutationError(D.N, f"expected {D.N} entries, got {p.size}")
    if not np.array_equal(np.sort(p), np.arange(D.N)):
        raise InvalidPermutationError(D.N, "entries must be 0..N-1 each exactly once")
    inverse = np.empty_like(p)
    inverse[p] = np.arange(D.N)
    return TacticalConfiguration(D.N, D.n, [inverse[col].tolist() for col in D.columns])


@dataclass(frozen=True)
class DesignSupport:
    """
    Distinct samples of a configuration with their multiplicities, probability of a sample is m(d) / M
    """
    samples: Tuple[Tuple[int, ...], ...]
    multiplicities: Tuple[int, ...]

    @property
    def M(self) -> int:
        """
        :return: Total multiplicity
        """
        return sum(self.multiplicities)

    @property
    def probabilities(self) -> Tuple[Fraction, ...]:
        """
        :return: Exact probability of every distinct sample
        """
        return tuple(Fraction(m, self.M) for m in self.multiplicities)

    @property
    def weights(self) -> np.ndarray:
        """
        :return: Probabilities as floats
        """
        return np.asarray(self.multiplicities, dtype=float) / self.M

    def __len__(self) -> int:
        return len(self.samples)


def support(D: TacticalConfiguration) -> DesignSupport:
    """
    Collapse a configuration into its distinct samples, in order of first appearance

    :param D: Configuration
    :return: Design support
    """
    counts = Counter(tuple(col) for col in D.columns)
    return DesignSupport(tuple(counts.keys()), tuple(counts.values()))


class InclusionProbabilities:
    """
    Exact first and second order inclusion probabilities, stored as integer co-occurrence counts over M
    """

    def __init__(self, counts: np.ndarray, M: int):
        """
        :param counts: N x N matrix of the number of samples holding both units, diagonal is the row sums
        :param M: Number of samples
        """
        self._counts = counts
        self._M = M

    @property
    def counts(self) -> np.ndarray:
        """
        :return: Co-occurrence counts
        """
        return self._counts

    @property
    def M(self) -> int:
        """
        :return: Denominator of every probability
        """
        return self._M

    @property
    def first_order(self) -> Tuple[Fraction, ...]:
        """
        :return: pi_i for every unit
        """
        return tuple(Fraction(int(c), self._M) for c in np.diag(self._counts))

    def first(self, i: int) -> Fraction:
        """
        :param i: Unit index
        :return: pi_i
        """
        return Fraction(int(self._counts[i, i]), self._M)

    def second(self, i: int, j: int) -> Fraction:
        """
        :param i: Unit index
        :param j: Unit index
        :return: pi_ij
        """
        return Fraction(int(self._counts[i, j]), self._M)


def inclusion_probs(D: TacticalConfiguration) -> InclusionProbabilities:
    """
    Compute inclusion probabilities in integer arithmetic. Memory is N x N

    :param D: Valid configuration
    :return: Exact inclusion probabilities
    """
    mat = D.membership_matrix()
    return InclusionProbabilities(mat @ mat.T, D.M)


def draw(D: TacticalConfiguration, rng: np.random.Generator) -> List[int]:
    """
    Draw one sample, every column equally likely

    :param D: Configuration
    :param rng: Random generator
    :return: Sorted unit indices of the drawn sample
    """
    return D.column(int(rng.integers(D.M)))
