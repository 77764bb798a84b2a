"""
This file init the losses module
"""
