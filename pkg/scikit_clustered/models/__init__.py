"""
This file init the models module
"""
