"""
This file contains the Partition model and its assignment and equivalence matrix views.
"""
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import DimensionError, InvalidPartitionError


@dataclass(frozen=True)
class Partition:
    """
    Grouping of m items (features, samples or tasks) into disjoint nonempty groups.

    Groups are kept in canonical order: members ascending, groups sorted by their smallest
    member. Two partitions with the same grouping therefore compare equal.
    """
    groups: Tuple[Tuple[int, ...], ...]
    n_items: int

    def __post_init__(self):
        n_items = int(self.n_items)
        if n_items < 0:
            raise InvalidPartitionError(f"Negative number of items! {n_items}")

        groups = []
        seen = set()
        for group in self.groups:
            members = tuple(sorted(int(ix) for ix in group))
            if len(members) == 0:
                raise InvalidPartitionError("Every group needs at least one item.")
            for ix in members:
                if ix < 0 or ix >= n_items:
                    raise InvalidPartitionError(f"Item out of range! {ix}")
                if ix in seen:
                    raise InvalidPartitionError(f"Item in more than one group! {ix}")
                seen.add(ix)
            groups.append(members)

        if len(seen) != n_items:
            missing = sorted(set(range(n_items)) - seen)
            raise InvalidPartitionError(f"Items without group! {missing}")

        groups.sort(key=lambda members: members[0])
        object.__setattr__(self, "groups", tuple(groups))
        object.__setattr__(self, "n_items", n_items)

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "Partition":
        """
        Build the partition in which items sharing a label share a group.

        :param labels: One label per item, any hashable values.
        :return: A Partition instance.
        """
        labels = list(labels)
        buckets = {}
        for ix, label in enumerate(labels):
            key = label.item() if isinstance(label, np.generic) else label
            buckets.setdefault(key, []).append(ix)
        return cls(groups=tuple(tuple(b) for b in buckets.values()), n_items=len(labels))

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[int]],
                    n_items: Optional[int] = None) -> "Partition":
        """
        :param groups: Iterable of index collections, 0-based.
        :param n_items: Total item count. Defaults to the number of listed indices.
        :return: A Partition instance.
        """
        groups = tuple(tuple(int(ix) for ix in group) for group in groups)
        if n_items is None:
            n_items = sum(len(group) for group in groups)
        return cls(groups=groups, n_items=n_items)

    @classmethod
    def single(cls, n_items: int) -> "Partition":
        """
        The partition with every item in one group.
        """
        return cls(groups=(tuple(range(n_items)),), n_items=n_items)

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> "Partition":
        return cls.from_groups(data)

    @property
    def n_groups(self) -> int:
        return len(self.groups)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(group) for group in self.groups], dtype=int)

    def labels(self) -> np.ndarray:
        """
        :return: Integer array where item i holds the position of its group.
        """
        labels = np.empty(self.n_items, dtype=int)
        for q, group in enumerate(self.groups):
            labels[list(group)] = q
        return labels

    def to_json(self) -> List[List[int]]:
        return [list(group) for group in self.groups]


@dataclass(frozen=True, eq=False)
class Assignment:
    """
    Binary m x Q matrix Z with exactly one 1 per row.
    """
    Z: np.ndarray

    def __post_init__(self):
        Z = np.array(self.Z, dtype=float)
        if Z.ndim != 2:
            raise DimensionError(f"Assignment matrix must be 2-D! {Z.shape}")
        if not np.all((Z == 0) | (Z == 1)):
            raise InvalidPartitionError("Assignment entries must be 0 or 1.")
        if not np.all(Z.sum(axis=1) == 1):
            raise InvalidPartitionError("Every row of the assignment needs exactly one 1.")
        Z.setflags(write=False)
        object.__setattr__(self, "Z", Z)

    @property
    def n_items(self) -> int:
        return self.Z.shape[0]

    @property
    def sizes(self) -> np.ndarray:
        return self.Z.sum(axis=0).astype(int)


@dataclass(frozen=True, eq=False)
class EquivalenceMatrix:
    """
    Normalized equivalence matrix M = Z (Z^T Z)^{-1} Z^T, the orthogonal projector on the
    vectors that are constant inside each group.
    """
    M: np.ndarray
    partition: Optional[Partition] = None

    def __post_init__(self):
        M = np.array(self.M, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionError(f"Equivalence matrix must be square! {M.shape}")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)


def partition_to_assignment(partition: Union[Partition, Sequence[Sequence[int]]],
                            n_items: Optional[int] = None) -> Assignment:
    """
    Z_{iq} = 1 iff item i is in group q; columns follow the canonical group order.

    :param partition: A Partition or a list of groups of 0-based indices.
    :param n_items: Item count, used only when partition is a plain list of groups.
    :return: The Assignment instance.
    """
    if not isinstance(partition, Partition):
        partition = Partition.from_groups(partition, n_items=n_items)
    Z = np.zeros((partition.n_items, partition.n_groups))
    for q, group in enumerate(partition.groups):
        Z[list(group), q] = 1.0
    return Assignment(Z=Z)


def assignment_to_partition(assignment: Assignment) -> Partition:
    """
    Inverse of partition_to_assignment up to group relabeling; empty columns vanish.
    """
    return Partition.from_labels(np.argmax(assignment.Z, axis=1))


def assignment_to_equivalence(assignment: Assignment) -> EquivalenceMatrix:
    """
    M = Z diag(1/s) Z^T after dropping empty columns of Z.

    :param assignment: An Assignment instance.
    :return: The EquivalenceMatrix instance, carrying the partition it encodes.
    """
    Z = assignment.Z
    sizes = Z.sum(axis=0)
    Z = Z[:, sizes > 0]
    sizes = sizes[sizes > 0]
    # Z^T Z is diagonal: invert it entrywise
    M = (Z / sizes) @ Z.T
    return EquivalenceMatrix(M=M, partition=assignment_to_partition(assignment))


def partition_to_equivalence(partition: Partition) -> EquivalenceMatrix:
    return assignment_to_equivalence(partition_to_assignment(partition))
