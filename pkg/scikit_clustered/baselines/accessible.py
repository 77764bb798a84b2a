"""
This file contains the call to all baselines.
"""
from enum import Enum

from .alternating import fit_alternating_sample
from .iht import fit_iht
from .least_squares import fit_ls, fit_lsk


class BaselineKind(str, Enum):
    LS = "LS"
    LSK = "LSK"
    AM = "AM"
    IHT = "IHT"


def baselines_funcs(name="LS"):
    """
    Function to decide what baseline will be used.

    :param name: LS, LSK, AM or IHT.
    :return: The fitting function.
    """
    name = str(name.value if isinstance(name, BaselineKind) else name).upper()
    if name == BaselineKind.LS:
        return fit_ls
    elif name == BaselineKind.LSK:
        return fit_lsk
    elif name == BaselineKind.AM:
        return fit_alternating_sample
    elif name == BaselineKind.IHT:
        return fit_iht
    else:
        raise NameError(f"Baseline not found! {name}")
