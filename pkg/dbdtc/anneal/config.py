"""
File: config.py

Description: Defaults for simulated annealing

@author Derek Garcia
"""

# admissible swaps probed to scale the initial temperature
DEFAULT_PROBE_SWAPS = 1000
# cap on proposals drawn while probing, as a multiple of the probe count
PROBE_ATTEMPT_FACTOR = 100
# final temperature as a fraction of the initial one
DEFAULT_FINAL_TEMPERATURE_RATIO = 1e-8
# used when probing finds no positive energy change
FALLBACK_TEMPERATURE = 1e-6

DEFAULT_DRIFT_CHECK_INTERVAL = 10 ** 6
DEFAULT_DRIFT_TOLERANCE = 1e-7

DEFAULT_TRAJECTORY_ROWS = 10 ** 4

# proposals drawn from the generator at once
PROPOSAL_CHUNK = 1 << 16
# iterations between progress bar updates
PROGRESS_INTERVAL = 10 ** 4
