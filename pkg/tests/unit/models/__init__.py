"""
This file is to init the models test module.
"""
