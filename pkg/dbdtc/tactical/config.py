"""
File: config.py

Description: Constants for the configuration file format

@author Derek Garcia
"""

CONFIGURATION_ENCODING = "utf-8"
CONFIGURATION_EXTENSION = ".tc"
