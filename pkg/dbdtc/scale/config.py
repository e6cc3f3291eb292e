"""
File: config.py

Description: Defaults for large population strategies

@author Derek Garcia
"""

# configurations with more samples than this trigger compression
DEFAULT_MAX_CONFIGURATION_SIZE = 10 ** 5

# plans with more units than this are saved as a seed descriptor instead of an id list
PLAN_ID_LIMIT = 10 ** 6

COMPRESSION_STREAM = "compress"
STRATUM_STREAM_PREFIX = "stratum-"
