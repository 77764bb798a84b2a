"""
This file contains the exceptions raised by the Scikit-Clustered components.
"""


class InvalidPartitionError(ValueError):
    """
    A grouping of items that is not a partition: overlapping, missing or empty groups.
    """


class DimensionError(ValueError):
    """
    Shapes of data, predictors or partitions do not agree.
    """


class UnsupportedModeError(ValueError):
    """
    A projection or clustering mode that can not handle the given input.
    """


class DivergenceError(ArithmeticError):
    """
    A solver produced a non-finite objective value.
    """

    def __init__(self, message: str, report=None):
        """
        :param message: The explanation to be shown.
        :param report: The partial SolverReport recorded until the divergence.
        """
        super().__init__(message)
        self.report = report


class IllConditionedError(ArithmeticError):
    """
    A symmetric system that should be positive definite could not be factorized.
    """

    def __init__(self, message: str, condition: float = float("inf")):
        super().__init__(f"{message} (condition number estimate {condition:.3e})")
        self.condition = condition


class CrossValidationError(RuntimeError):
    """
    Every grid point failed on every fold.
    """

    def __init__(self, method: str):
        super().__init__(f"Cross-validation failed for every grid point! {method}")
        self.method = method
