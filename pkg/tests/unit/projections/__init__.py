"""
This file is to init the projections test module.
"""
