"""
This file allows running the command line interface with python -m scikit_clustered.
"""
import sys

from .cli import main

sys.exit(main())
