"""
File: config.py

Description: Defaults for population ingestion

@author Derek Garcia
"""

CSV_ENCODING = "utf-8"
CSV_SEPARATOR = ","

# optional column names recognised in population files
ID_COLUMN = "id"
STRATUM_COLUMN = "stratum"

# header prefix for synthetic auxiliary columns, ie x1, x2, ...
SYNTHETIC_COLUMN_PREFIX = "x"

# sample standard deviation divisor, N - 1
STANDARDIZE_DDOF = 1
