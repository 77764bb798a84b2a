"""
This file contains the orthonormal bases of the clustered subspaces U_G = {Zv} and of their
sums.
"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..exceptions import DimensionError
from ..models.partition import Partition, partition_to_assignment


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """
    basis: d x dim matrix with orthonormal columns.
    """
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T


def subspace_basis(*partitions: Partition) -> SubspaceBasis:
    """
    Orthonormal basis of U_G1 + ... + U_Gp for one to three partitions of the same d items.
    A single partition gives its group indicators scaled by 1/sqrt(s_q); sums are
    orthogonalized.

    :param partitions: One, two or three Partition.
    :return: The SubspaceBasis.
    """
    if not 1 <= len(partitions) <= 3:
        raise ValueError(f"One to three partitions are expected! {len(partitions)}")
    d = partitions[0].n_items
    if any(partition.n_items != d for partition in partitions):
        raise DimensionError("The partitions must cover the same items.")
    if len(partitions) == 1:
        Z = partition_to_assignment(partitions[0]).Z
        return SubspaceBasis(basis=Z / np.sqrt(Z.sum(axis=0)))
    stacked = np.hstack([partition_to_assignment(partition).Z for partition in partitions])
    return SubspaceBasis(basis=linalg.orth(stacked))
