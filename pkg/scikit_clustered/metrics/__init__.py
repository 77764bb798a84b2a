"""
This file init the metrics module
"""
