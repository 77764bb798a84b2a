"""
This file init the clustering module
"""
