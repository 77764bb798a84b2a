"""
This file init the projections module
"""
