"""
This file contains the call to all solvers.
"""
from .conditional_gradient import ConditionalGradient
from .projected_gradient import ProjectedGradient


def solvers_funcs(name="PGD"):
    """
    Function to decide what solver will be used.

    :param name: PGD (projected gradient) or CG (conditional gradient).
    :return: The solver class, to be built with a Dataset then configured.
    """
    name = str(name).upper()
    if name == "PGD":
        return ProjectedGradient
    elif name == "CG":
        return ConditionalGradient
    else:
        raise NameError(f"Solver not found! {name}")
