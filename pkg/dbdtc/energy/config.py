"""
File: config.py

Description: Constants for energy bookkeeping

@author Derek Garcia
"""

# relative drift denominators never go below this
DRIFT_FLOOR = 1e-12
