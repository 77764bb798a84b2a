"""
This file init the solvers module
"""
