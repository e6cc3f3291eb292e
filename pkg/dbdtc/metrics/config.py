"""
File: config.py

Description: Defaults for design evaluation

@author Derek Garcia
"""

DEFAULT_NEIGHBORS = 2
DEFAULT_CONFIDENCE_LEVEL = 0.95
DEFAULT_REPLICATES = 10_000

METRIC_NAMES = ("energy", "sb", "lb_variant", "bd")
