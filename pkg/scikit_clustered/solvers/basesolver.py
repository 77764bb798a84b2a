"""
This file contains the Base Class to be inherent by the solver implementations and the
report they return.
"""
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..models.dataset import Dataset


@dataclass
class SolverReport:
    """
    Trace of a solver run. objective_trace holds the objective of every accepted iterate,
    the starting point included; gap_trace is filled by the conditional gradient only.
    """
    objective_trace: List[float] = field(default_factory=list)
    step_sizes: List[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    stationary: bool = False
    wall_time: float = 0.0
    iterates: List[np.ndarray] = field(default_factory=list)
    gap_trace: List[float] = field(default_factory=list)

    def to_dict(self, timing: bool = False) -> dict:
        """
        :param timing: Include the wall time, which makes the output run dependent.
        :return: A JSON ready dictionary.
        """
        report = {
            "objective_trace": [float(v) for v in self.objective_trace],
            "step_sizes": [float(v) for v in self.step_sizes],
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
            "stationary": bool(self.stationary),
        }
        if self.gap_trace:
            report["gap_trace"] = [float(v) for v in self.gap_trace]
        if timing:
            report["wall_time"] = float(self.wall_time)
        return report


class BaseSolver:
    """
    Solver superclass. To be used for all solver classes.
    """
    logger = logging.getLogger(__name__)

    def __init__(self, dataset: Dataset):
        """
        :param dataset: A Dataset instance with the training data.
        """
        if not isinstance(dataset, Dataset):
            raise TypeError(f"A Dataset instance is expected! {type(dataset).__name__}")
        self.dataset = dataset
        self.environment = {}

    def env(self, environment: dict) -> None:
        """
        This method is to config the solver environment.

        :param environment: A dict with the chosen components and hyperparameters.
        """
        self.environment = environment

    def fit(self):
        """
        This method is the main method to start the training.
        """
        if not self.environment:
            raise SystemError("The configuration need to be set!")
