"""
This file is to init the baselines test module.
"""
