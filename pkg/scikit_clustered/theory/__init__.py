"""
This file init the theory module
"""
