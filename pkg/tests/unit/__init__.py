"""
This file is to init the test unit module.
"""
