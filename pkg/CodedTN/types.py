"""
some types that are commonly needed across the package
"""

from typing import Union, List, Tuple, Sequence, Iterable, Any
from pathlib import Path
import os

import numpy as np


# an index label, unique network wide
Label = str
# (label, dimension) pairs in axis order
AxesType = Sequence[Tuple[Label, int]]
# 1-based slice values s_1..s_n
SliceValues = Tuple[int, ...]
# raw tensor data before it is mapped into a field
DataType = Union[np.ndarray, List[Any], Tuple[Any, ...], Iterable[Any]]
ScalarType = Union[int, float, complex]
PathType = Union[str, bytes, "os.PathLike[str]", "os.PathLike[bytes]", Path]
types = [Label, AxesType, SliceValues, DataType, ScalarType, PathType]

__all__ = [
    "Label",
    "AxesType",
    "SliceValues",
    "DataType",
    "ScalarType",
    "PathType",
    "types",
]
