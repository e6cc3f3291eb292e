"""
File: config.py

Description: Numerical tolerances for the samplers

@author Derek Garcia
"""

# probabilities within this of 0 or 1 count as decided
DECIDED_EPSILON = 1e-9

# allowed absolute distance of the probability sum from an integer
SIZE_TOLERANCE = 1e-9
