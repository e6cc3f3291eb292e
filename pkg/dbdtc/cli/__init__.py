"""
File: __init__.py.py
Description: 

@author Derek Garcia
"""
