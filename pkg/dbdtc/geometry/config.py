"""
File: config.py

Description: Defaults for distance computations

@author Derek Garcia
"""

# largest population that gets a full N x N distance matrix
DEFAULT_CACHE_THRESHOLD = 4000

# rows per block when streaming distances without a cache
STREAM_BLOCK_ROWS = 512
