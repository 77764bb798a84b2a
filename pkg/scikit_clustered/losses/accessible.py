"""
This file contains the call to all losses.
"""
from enum import Enum

from . import logistic, squared
from ..exceptions import DimensionError


class LossKind(str, Enum):
    SQUARED = "SQUARED"
    LOGISTIC = "LOGISTIC"
    MULTICLASS_SQUARED = "MULTICLASS_SQUARED"
    MULTICLASS_LOGISTIC = "MULTICLASS_LOGISTIC"


VECTOR_LOSSES = (LossKind.SQUARED, LossKind.LOGISTIC)


def loss_kind(kind) -> LossKind:
    if isinstance(kind, LossKind):
        return kind
    try:
        return LossKind[str(kind).upper().replace("-", "_")]
    except KeyError:
        raise NameError(f"Loss not found! {kind}") from None


def loss_funcs(kind="SQUARED"):
    """
    Function to decide what loss will be used.

    :param kind: A LossKind or its name.
    :return: The pair (loss, derivative with respect to the scores).
    """
    kind = loss_kind(kind)
    if kind in (LossKind.SQUARED, LossKind.MULTICLASS_SQUARED):
        return squared.squared_loss, squared.squared_loss_derivative
    if kind == LossKind.LOGISTIC:
        return logistic.logistic_loss, logistic.logistic_loss_derivative
    return logistic.softmax_cross_entropy, logistic.softmax_cross_entropy_derivative


def default_loss_kind(dataset) -> LossKind:
    """
    Squared losses for regression, logistic losses for classification.
    """
    if dataset.task == "CLASSIFICATION":
        return LossKind.LOGISTIC if dataset.y.ndim == 1 else LossKind.MULTICLASS_LOGISTIC
    return LossKind.SQUARED if dataset.y.ndim == 1 else LossKind.MULTICLASS_SQUARED


def check_loss_kind(kind, y) -> LossKind:
    """
    Squared and Logistic pair with a label vector, the multiclass kinds with a label matrix.
    """
    kind = loss_kind(kind)
    if (kind in VECTOR_LOSSES) != (y.ndim == 1):
        raise DimensionError(f"Loss {kind.value} does not match labels of shape {y.shape}.")
    return kind
