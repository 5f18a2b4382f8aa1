# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
dense tensors with labeled axes and the product-sum primitive
"""

from typing import Dict, List, Optional, Sequence, Tuple, Iterable
import logging
import math

import numpy as np

from CodedTN.Classes.field import FieldKind, PrimeField
from CodedTN.constants import RANDOM_LOW, RANDOM_HIGH
from CodedTN.exceptions import (
    UnknownIndex,
    SliceValueOutOfRange,
    ShapeError,
    DimensionMismatch,
    DuplicateIndex,
    FieldMismatch,
)
from CodedTN.types import Label, AxesType, DataType

log = logging.getLogger(__name__)


class Tensor:
    """
    a dense tensor whose axes carry index labels, immutable after construction

    Parameters:
    -----------
    axes: Sequence[Tuple[str, int]]
        (label, dimension) pairs in axis order, an empty list makes a scalar tensor
    data: DataType
        the entries, either flat in row-major order or already shaped
    field: FieldKind
        the scalar field of the entries (PrimeField() when omitted)

    Methods:
    -----------
    fix_index(label: str, value: int):
        it returns the tensor with that axis fixed to a 1-based value
    transpose(labels: Sequence[str]):
        it returns the same tensor with the axes in another order
    astype(field: FieldKind):
        it maps the entries into another field
    """

    __slots__ = "axes", "data", "field"

    def __init__(self, axes: AxesType, data: DataType, field: Optional[FieldKind] = None) -> None:
        field = field if field is not None else PrimeField()
        axes = tuple((str(label), int(dim)) for label, dim in axes)
        labels = [label for label, _ in axes]
        if len(set(labels)) != len(labels):
            raise DuplicateIndex(f"the axis labels {labels} of a tensor are not distinct")
        for label, dim in axes:
            if not label:
                raise ShapeError("an axis label can not be empty")
            if dim < 1:
                raise ShapeError(f"the axis {label!r} has dimension {dim}, it must be positive")

        shape = tuple(dim for _, dim in axes)
        arr = field.asarray(data)
        if arr.size != math.prod(shape):
            raise ShapeError(
                f"the data has {arr.size} entries but the axes {list(axes)} need {math.prod(shape)}"
            )
        arr = np.array(arr.reshape(shape), copy=True)
        arr.flags.writeable = False

        self.axes: Tuple[Tuple[Label, int], ...] = axes
        self.data: np.ndarray = arr
        self.field: FieldKind = field

    @classmethod
    def _trusted(cls, axes: Tuple[Tuple[Label, int], ...], data: np.ndarray, field: FieldKind) -> "Tensor":
        # skips the conversion for arrays that are already in the field
        obj = cls.__new__(cls)
        data = np.array(data, dtype=field.dtype, copy=True).reshape(tuple(d for _, d in axes))
        data.flags.writeable = False
        obj.axes = axes
        obj.data = data
        obj.field = field
        return obj

    @property
    def labels(self) -> Tuple[Label, ...]:
        return tuple(label for label, _ in self.axes)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(dim for _, dim in self.axes)

    @property
    def rank(self) -> int:
        return len(self.axes)

    @property
    def size(self) -> int:
        return int(self.data.size)

    def axis_of(self, label: Label) -> int:
        """
        the position of the axis that carries label
        :param label: str
        :return: int
        """
        for i, (name, _) in enumerate(self.axes):
            if name == label:
                return i
        raise UnknownIndex(f"the tensor with axes {self.labels} has no axis {label!r}")

    def dim(self, label: Label) -> int:
        return self.axes[self.axis_of(label)][1]

    def has(self, label: Label) -> bool:
        return label in self.labels

    def flat(self) -> np.ndarray:
        return self.data.reshape(-1)

    def item(self):
        """
        the entry of a scalar tensor
        """
        if self.rank:
            raise ShapeError(f"the tensor with axes {self.labels} is not a scalar")
        return self.data.reshape(-1)[0]

    def tolist(self):
        return self.data.tolist()

    def fix_index(self, label: Label, value: int) -> "Tensor":
        return fix_index(self, label, value)

    def transpose(self, labels: Sequence[Label]) -> "Tensor":
        labels = list(labels)
        if sorted(labels) != sorted(self.labels):
            raise UnknownIndex(f"{labels} is not a permutation of {list(self.labels)}")
        perm = [self.axis_of(label) for label in labels]
        axes = tuple(self.axes[p] for p in perm)
        return Tensor._trusted(axes, np.transpose(self.data, perm), self.field)

    def astype(self, field: FieldKind) -> "Tensor":
        if field == self.field:
            return self
        return Tensor(self.axes, self.data, field)

    def plus(self, other: "Tensor") -> "Tensor":
        """
        the entrywise sum of two tensors over the same axes (other is aligned to self)
        :param other: Tensor
        :return: Tensor
        """
        if other.field != self.field:
            raise FieldMismatch(f"can not add a {other.field} tensor to a {self.field} tensor")
        if set(other.axes) != set(self.axes):
            raise ShapeError(f"can not add axes {other.axes} to axes {self.axes}")
        other = other.transpose(self.labels)
        return Tensor._trusted(self.axes, self.field.add(self.data, other.data), self.field)

    def equals(self, other: "Tensor") -> bool:
        """
        exact equality of axes, field and entries
        """
        return (
            isinstance(other, Tensor)
            and self.axes == other.axes
            and self.field == other.field
            and bool(np.all(self.data == other.data))
        )

    def __repr__(self) -> str:
        axes = ", ".join(f"{label}:{dim}" for label, dim in self.axes)
        return f"Tensor(<{axes}>, field={self.field})"


def fix_index(t: Tensor, label: Label, value: int) -> Tensor:
    """
    it fixes one axis of a tensor to a 1-based value and drops that axis
    :param t: the tensor
    :param label: the label of the axis
    :param value: a slice value in 1..dimension
    :type t: Tensor
    :type label: str
    :type value: int
    :return: Tensor
    """
    pos = t.axis_of(label)
    dim = t.axes[pos][1]
    if not 1 <= int(value) <= dim:
        raise SliceValueOutOfRange(f"the slice value {value} of {label!r} is outside 1..{dim}")
    data = np.take(t.data, int(value) - 1, axis=pos)
    axes = t.axes[:pos] + t.axes[pos + 1 :]
    return Tensor._trusted(axes, data, t.field)


def _common_field(tensors: Sequence[Tensor]) -> FieldKind:
    field = tensors[0].field
    for t in tensors[1:]:
        if t.field != field:
            raise FieldMismatch(f"can not contract a {t.field} tensor with a {field} tensor")
    return field


def contract_tensors(tensors: Sequence[Tensor], sum_labels: Iterable[Label] = ()) -> Tensor:
    """
    the general product-sum: the tensors are multiplied entrywise over the union of their
    labels (a label carried by several tensors is a single index variable) and the labels
    in sum_labels are summed, the result keeps every other label in order of first appearance
    :param tensors: the tensors of one contraction step
    :param sum_labels: the labels that are summed out
    :type tensors: Sequence[Tensor]
    :type sum_labels: Iterable[str]
    :return: Tensor
    """
    tensors = list(tensors)
    if not tensors:
        raise ShapeError("a contraction needs at least one tensor")
    field = _common_field(tensors)
    summed = set(sum_labels)

    dims: Dict[Label, int] = {}
    output: List[Tuple[Label, int]] = []
    for t in tensors:
        for label, dim in t.axes:
            if label in dims:
                if dims[label] != dim:
                    raise DimensionMismatch(
                        f"the index {label!r} has dimension {dims[label]} and {dim} in the same step"
                    )
                continue
            dims[label] = dim
            if label not in summed:
                output.append((label, dim))
    for label in summed:
        if label not in dims:
            raise UnknownIndex(f"the summed index {label!r} is not carried by any tensor")

    data = field.contract(
        [t.data for t in tensors],
        [t.labels for t in tensors],
        [label for label, _ in output],
    )
    return Tensor._trusted(tuple(output), data, field)


def multiway_contract(tensors: Sequence[Tensor], shared: Label) -> Tensor:
    """
    it sums the product of all the tensors over the index they share,
    for m >= 3 tensors this is the contraction of a hyperedge
    :param tensors: every tensor carries shared, all other labels are distinct
    :param shared: the contracted index
    :type tensors: Sequence[Tensor]
    :type shared: str
    :return: Tensor
    """
    tensors = list(tensors)
    if not tensors:
        raise ShapeError("multiway_contract needs at least one tensor")
    L = tensors[0].dim(shared)
    seen = set()
    for t in tensors:
        if t.dim(shared) != L:
            raise DimensionMismatch(
                f"the shared index {shared!r} has dimension {t.dim(shared)} and {L}"
            )
        for label in t.labels:
            if label == shared:
                continue
            if label in seen:
                raise DuplicateIndex(
                    f"the index {label!r} appears on two tensors of one contraction step"
                )
            seen.add(label)
    return contract_tensors(tensors, [shared])


def outer_product(tensors: Sequence[Tensor]) -> Tensor:
    return contract_tensors(tensors, ())


def random_tensor(
    axes: AxesType,
    field: FieldKind,
    rng: np.random.Generator,
    low: int = RANDOM_LOW,
    high: int = RANDOM_HIGH,
) -> Tensor:
    """
    a tensor with integer entries drawn uniformly from [low, high] and mapped into the field
    :param axes: the (label, dimension) pairs
    :param field: FieldKind
    :param rng: a numpy generator
    :param low: int
    :param high: int
    :return: Tensor
    """
    shape = tuple(int(d) for _, d in axes)
    values = rng.integers(low, high + 1, size=shape)
    return Tensor(axes, values, field)


__all__ = [
    "Tensor",
    "fix_index",
    "contract_tensors",
    "multiway_contract",
    "outer_product",
    "random_tensor",
]
