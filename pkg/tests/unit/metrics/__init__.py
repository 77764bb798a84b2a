"""
This file is to init the metrics test module.
"""
