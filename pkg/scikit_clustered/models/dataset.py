"""
This file contains the Dataset model and its CSV input/output.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..exceptions import DimensionError

TASKS = ("REGRESSION", "CLASSIFICATION", "MULTITASK")


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Design matrix X (n samples x d features) with its labels.

    y is a real vector for regression, a {0,1} vector for binary classification, a one-hot
    n x K matrix for multiclass classification and a real n x K matrix for multitask
    regression. Arrays are copied and frozen on construction.
    """
    X: np.ndarray
    y: np.ndarray
    task: str = "REGRESSION"
    feature_names: Tuple[str, ...] = ()

    def __post_init__(self):
        X = np.array(self.X, dtype=float)
        y = np.array(self.y, dtype=float)
        task = str(self.task).upper()

        if task not in TASKS:
            raise NameError(f"Task not found! {self.task}")
        if X.ndim != 2:
            raise DimensionError(f"X must be a 2-D matrix! {X.shape}")
        n, d = X.shape
        if n < 1 or d < 1:
            raise DimensionError(f"X needs at least one sample and one feature! {X.shape}")
        if y.ndim not in (1, 2) or y.shape[0] != n:
            raise DimensionError(f"Labels do not match the {n} samples! {y.shape}")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
            raise ValueError("Dataset entries must be finite.")
        if task == "CLASSIFICATION":
            if not np.all((y == 0) | (y == 1)):
                raise ValueError("Classification labels must be 0 or 1 (one-hot for multiclass).")
            if y.ndim == 2 and not np.all(y.sum(axis=1) == 1):
                raise ValueError("Every one-hot label row must sum to 1.")

        feature_names = tuple(str(name) for name in self.feature_names)
        if not feature_names:
            feature_names = tuple(f"x{j}" for j in range(d))
        if len(feature_names) != d:
            raise DimensionError(f"Expected {d} feature names! {len(feature_names)}")

        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "task", task)
        object.__setattr__(self, "feature_names", feature_names)

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @property
    def n_outputs(self) -> int:
        return 1 if self.y.ndim == 1 else self.y.shape[1]

    def subset(self, indices: Sequence[int]) -> "Dataset":
        """
        :param indices: Sample indices to keep, in order.
        :return: A new Dataset with the selected rows.
        """
        indices = np.asarray(indices, dtype=int)
        return Dataset(X=self.X[indices], y=self.y[indices], task=self.task,
                       feature_names=self.feature_names)

    def to_frame(self, target: Union[str, Sequence[str]] = "y") -> pd.DataFrame:
        frame = pd.DataFrame(self.X, columns=list(self.feature_names))
        if self.y.ndim == 1:
            name = target if isinstance(target, str) else target[0]
            frame[name] = self.y
        else:
            names = [f"{target}_{k}" for k in range(self.n_outputs)] \
                if isinstance(target, str) else list(target)
            for k, name in enumerate(names):
                frame[name] = self.y[:, k]
        return frame


def load_csv(path: str, target: Union[str, Sequence[str]], task: str = "REGRESSION",
             features: Optional[Sequence[str]] = None) -> Dataset:
    """
    Read a dataset from a CSV file with a header row.

    :param path: The CSV file path.
    :param target: The label column name, or a list of names for multitask regression.
    :param task: REGRESSION, CLASSIFICATION or MULTITASK.
    :param features: Feature columns. Defaults to every remaining column.
    :return: A Dataset instance. Classification labels with two classes become a {0,1}
        vector (second class sorted is 1), more classes become a one-hot matrix.
    """
    frame = pd.read_csv(path)
    targets = [target] if isinstance(target, str) else list(target)
    missing = [name for name in targets if name not in frame.columns]
    if missing:
        raise KeyError(f"Target column is missing! {missing}")
    if features is None:
        features = [col for col in frame.columns if col not in targets]

    X = frame[list(features)].to_numpy(dtype=float)
    task = task.upper()
    if task == "CLASSIFICATION":
        onehot = pd.get_dummies(frame[targets[0]].astype(str), dtype=float)
        onehot = onehot[sorted(onehot.columns)]
        y = onehot.to_numpy()
        if y.shape[1] == 2:
            y = y[:, 1]
    elif len(targets) == 1:
        y = frame[targets[0]].to_numpy(dtype=float)
    else:
        y = frame[targets].to_numpy(dtype=float)
    return Dataset(X=X, y=y, task=task, feature_names=tuple(features))


def save_csv(dataset: Dataset, path: str, target: Union[str, Sequence[str]] = "y") -> None:
    """
    Write the dataset as CSV with full float precision, so that reruns are byte-identical.
    """
    dataset.to_frame(target=target).to_csv(path, index=False, float_format="%.17g")
