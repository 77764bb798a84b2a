"""
This file is to init the clustering test module.
"""
