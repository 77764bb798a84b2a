"""
This file is to init the solvers test module.
"""
