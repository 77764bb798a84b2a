"""
This file is to init the experiments test module.
"""
