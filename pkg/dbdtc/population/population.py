"""
File: population.py

Description: Finite population of units with auxiliary variables

@author Derek Garcia
"""

import csv
from dataclasses import dataclass, field
from os.path import exists
from typing import List, Tuple, Dict, Sequence

import loggy
import numpy as np
import pandas as pd

from population.config import CSV_ENCODING, CSV_SEPARATOR, STANDARDIZE_DDOF, SYNTHETIC_COLUMN_PREFIX, ID_COLUMN, \
    STRATUM_COLUMN
from population.exception import UnknownColumnError, NonNumericValueError, EmptyPopulationError, \
    InvalidPopulationError, MissingStrataError


@dataclass(frozen=True, eq=False)
class Population:
    """
    Immutable population of N units with p auxiliary variables
    """
    aux: np.ndarray
    ids: Tuple[str, ...] = None
    strata: Tuple[str, ...] | None = None
    columns: Tuple[str, ...] = field(default=None, compare=False)

    def __post_init__(self):
        """
        Validate and freeze the population

        :raises InvalidPopulationError: If the population is malformed
        """
        aux = np.array(self.aux, dtype=float)
        if aux.ndim == 1:
            aux = aux.reshape(-1, 1)
        if aux.ndim != 2 or aux.shape[0] < 1 or aux.shape[1] < 1:
            raise InvalidPopulationError(f"auxiliary matrix must be N x p with N, p >= 1, got shape {aux.shape}")
        if not np.all(np.isfinite(aux)):
            raise InvalidPopulationError("auxiliary values must be finite")
        aux.setflags(write=False)
        object.__setattr__(self, 'aux', aux)

        # default ids are 1..N in order
        ids = tuple(str(i) for i in range(1, aux.shape[0] + 1)) if self.ids is None else tuple(str(i) for i in self.ids)
        if len(ids) != aux.shape[0]:
            raise InvalidPopulationError(f"expected {aux.shape[0]} ids, got {len(ids)}")
        if len(set(ids)) != len(ids):
            raise InvalidPopulationError("unit ids must be unique")
        object.__setattr__(self, 'ids', ids)

        if self.strata is not None:
            strata = tuple(str(s) for s in self.strata)
            if len(strata) != aux.shape[0]:
                raise InvalidPopulationError(f"expected {aux.shape[0]} stratum labels, got {len(strata)}")
            object.__setattr__(self, 'strata', strata)

        columns = self.columns or tuple(f"{SYNTHETIC_COLUMN_PREFIX}{k}" for k in range(1, aux.shape[1] + 1))
        if len(columns) != aux.shape[1]:
            raise InvalidPopulationError(f"expected {aux.shape[1]} column names, got {len(columns)}")
        object.__setattr__(self, 'columns', tuple(columns))

    @property
    def size(self) -> int:
        """
        :return: Number of units N
        """
        return self.aux.shape[0]

    @property
    def dimension(self) -> int:
        """
        :return: Number of auxiliary variables p
        """
        return self.aux.shape[1]

    def column(self, name: str) -> np.ndarray:
        """
        Get an auxiliary column by name

        :param name: Column name
        :raises UnknownColumnError: If the column does not exist
        :return: Column values
        """
        if name not in self.columns:
            raise UnknownColumnError(name, list(self.columns))
        return self.aux[:, self.columns.index(name)]


def load_csv(path: str,
             aux_columns: List[str],
             id_column: str = None,
             stratum_column: str = None,
             target_columns: List[str] = None) -> Tuple[Population, Dict[str, np.ndarray]]:
    """
    Load a population from a csv file. Rows with a missing value in any auxiliary or target column are dropped.

    :param path: Path to csv file
    :param aux_columns: Columns to use as auxiliary variables
    :param id_column: Optional column of unit ids (Default: 1..N in file order)
    :param stratum_column: Optional column of stratum labels (Default: None)
    :param target_columns: Optional numeric columns to carry along as study variables (Default: None)
    :raises FileNotFoundError: If the file does not exist
    :raises UnknownColumnError: If a named column is not in the header
    :raises NonNumericValueError: If a cell cannot be parsed as a finite real
    :raises EmptyPopulationError: If no rows are left after filtering
    :return: Population and a dict of target columns
    """
    if not exists(path):
        raise FileNotFoundError(f"Population file '{path}' does not exist")

    df = pd.read_csv(path, sep=CSV_SEPARATOR, encoding=CSV_ENCODING, dtype=str)
    header = list(df.columns)
    target_columns = target_columns or []
    numeric_columns = list(aux_columns) + [t for t in target_columns if t not in aux_columns]
    for c in numeric_columns + [c for c in (id_column, stratum_column) if c]:
        if c not in header:
            raise UnknownColumnError(c, header)

    # parse numeric cells, empty cells are missing values
    values = {}
    for c in numeric_columns:
        raw = df[c]
        parsed = pd.to_numeric(raw, errors='coerce')
        bad = raw.notna() & (parsed.isna() | ~np.isfinite(parsed.fillna(0.0)))
        if bad.any():
            first = int(np.flatnonzero(bad.to_numpy())[0])
            # header is line 1
            raise NonNumericValueError(first + 2, c, str(raw.iloc[first]))
        values[c] = parsed.to_numpy(dtype=float)

    keep = np.ones(len(df), dtype=bool)
    for c in numeric_columns:
        keep &= ~np.isnan(values[c])
    dropped = int((~keep).sum())
    if dropped:
        loggy.warn(f"Dropped {dropped} rows with missing values from '{path}'")
    if not keep.any():
        raise EmptyPopulationError(path, dropped)

    aux = np.column_stack([values[c][keep] for c in aux_columns])
    ids = df[id_column][keep].tolist() if id_column else None
    strata = df[stratum_column][keep].tolist() if stratum_column else None
    targets = {c: values[c][keep] for c in target_columns}
    pop = Population(aux, ids=ids, strata=strata, columns=tuple(aux_columns))
    loggy.info(f"Loaded population of {pop.size} units with {pop.dimension} auxiliary variables from '{path}'")
    return pop, targets


def write_csv(pop: Population, path: str) -> str:
    """
    Write a population to csv so it can be read back with load_csv

    :param pop: Population to write
    :param path: Path to output csv
    :return: Path to output csv
    """
    path = path if path.endswith('.csv') else f"{path}.csv"
    with open(path, 'w', encoding=CSV_ENCODING, newline='') as f:
        writer = csv.writer(f, delimiter=CSV_SEPARATOR)
        header = [ID_COLUMN, *pop.columns]
        if pop.strata is not None:
            header.append(STRATUM_COLUMN)
        writer.writerow(header)
        for i in range(pop.size):
            row = [pop.ids[i], *(repr(float(v)) for v in pop.aux[i])]
            if pop.strata is not None:
                row.append(pop.strata[i])
            writer.writerow(row)
    return path


def synth_uniform(size: int, dimension: int, seed: int) -> Population:
    """
    Synthesize a population with iid uniform [0,1] auxiliary variables

    :param size: Number of units N
    :param dimension: Number of auxiliary variables p
    :param seed: Seed of the random generator
    :raises ValueError: If N or p is less than 1
    :return: Population
    """
    if size < 1 or dimension < 1:
        raise ValueError(f"Population needs N >= 1 and p >= 1, got N={size}, p={dimension}")
    rng = np.random.default_rng(seed)
    return Population(rng.uniform(0.0, 1.0, size=(size, dimension)))


def standardize(pop: Population) -> Population:
    """
    Center every auxiliary column to mean 0 and scale to sample standard deviation 1.
    Constant columns map to all zeros.

    :param pop: Population to standardize
    :return: Standardized population with the same ids and strata
    """
    mean = pop.aux.mean(axis=0)
    # single unit has no spread
    sd = pop.aux.std(axis=0, ddof=STANDARDIZE_DDOF) if pop.size > 1 else np.zeros(pop.dimension)
    centered = pop.aux - mean
    aux = np.zeros_like(centered)
    for k in range(pop.dimension):
        if sd[k] > 0:
            aux[:, k] = centered[:, k] / sd[k]
        else:
            loggy.warn(f"Auxiliary column '{pop.columns[k]}' is constant, standardized to zero")
    return Population(aux, ids=pop.ids, strata=pop.strata, columns=pop.columns)


def subset(pop: Population, indices: Sequence[int]) -> Population:
    """
    Create a sub-population

    :param pop: Population to take units from
    :param indices: Unit indices to keep, in order
    :return: Sub-population keeping ids and strata of the selected units
    """
    idx = np.asarray(indices, dtype=np.intp)
    strata = [pop.strata[i] for i in idx] if pop.strata is not None else None
    return Population(pop.aux[idx], ids=[pop.ids[i] for i in idx], strata=strata, columns=pop.columns)


def partition_by_strata(pop: Population) -> Dict[str, Tuple[np.ndarray, Population]]:
    """
    Split a population by stratum label

    :param pop: Population with strata
    :raises MissingStrataError: If the population has no strata
    :return: Dict of label to (global unit indices, sub-population), labels in order of first appearance
    """
    if pop.strata is None:
        raise MissingStrataError()
    members: Dict[str, List[int]] = {}
    for i, label in enumerate(pop.strata):
        members.setdefault(label, []).append(i)
    return {label: (np.asarray(idx, dtype=np.intp), subset(pop, idx)) for label, idx in members.items()}
