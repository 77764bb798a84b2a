"""
This file is to init the theory test module.
"""
