"""
This file init the experiments module
"""
