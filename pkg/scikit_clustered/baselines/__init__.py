"""
This file init the baselines module
"""
