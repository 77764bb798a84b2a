"""
This file is to init the losses test module.
"""
