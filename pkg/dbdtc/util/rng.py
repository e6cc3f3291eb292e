"""
File: rng.py

Description: Named random sub-streams derived from a single master seed

@author Derek Garcia
"""

import zlib

import numpy as np


def derive_seed(master_seed: int, stream: str) -> np.random.SeedSequence:
    """
    Derive the seed sequence of a named sub-stream

    :param master_seed: Master seed of the run
    :param stream: Name of the sub-stream, ie 'init', 'anneal', 'draw', 'replicate-3'
    :return: Seed sequence unique to the (master seed, stream) pair
    """
    return np.random.SeedSequence([int(master_seed), zlib.crc32(stream.encode('utf-8'))])


def stream_rng(master_seed: int, stream: str) -> np.random.Generator:
    """
    Create a generator for a named sub-stream

    :param master_seed: Master seed of the run
    :param stream: Name of the sub-stream
    :return: Independent random generator
    """
    return np.random.default_rng(derive_seed(master_seed, stream))
