# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
decoding tensor valued polynomials from their evaluations
"""

from typing import Iterable, List, Optional, Sequence, Tuple
from dataclasses import dataclass
from functools import lru_cache
import logging
import math

import numpy as np

from CodedTN.Classes.field import FieldKind, FieldTag
from CodedTN.Classes.tensor import Tensor
from CodedTN.constants import REAL64_MAX_STABLE_DEGREE
from CodedTN.exceptions import (
    DuplicatePoints,
    InsufficientSurvivors,
    CoefficientOutOfRange,
    PointFamilyError,
    ShapeError,
    FieldMismatch,
)
from CodedTN.types import ScalarType

log = logging.getLogger(__name__)

# how far a COMPLEX128 point may be from the unit circle
UNIT_CIRCLE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EvaluationSet:
    """
    the values of one tensor polynomial of degree <= degree at distinct points

    Parameters:
    -----------
    points: Tuple[ScalarType, ...]
        the evaluation points in worker order
    values: Tuple[Tensor, ...]
        one tensor per point, all over the same axes
    degree: int
        the claimed degree d, d + 1 points are needed
    """

    points: Tuple[ScalarType, ...]
    values: Tuple[Tensor, ...]
    degree: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.points) != len(self.values):
            raise ShapeError(f"{len(self.points)} points but {len(self.values)} values")
        if self.degree < 0:
            raise ValueError(f"the degree must be non-negative, got {self.degree}")
        if len(self.points) < self.degree + 1:
            raise InsufficientSurvivors(
                f"a degree {self.degree} polynomial needs {self.degree + 1} points, got {len(self.points)}"
            )
        if len(set(self.points)) != len(self.points):
            raise DuplicatePoints("the evaluation points are not pairwise distinct")
        first = self.values[0]
        for v in self.values[1:]:
            if v.field != first.field:
                raise FieldMismatch(f"values over {v.field} and {first.field} can not be mixed")
            if set(v.axes) != set(first.axes):
                raise ShapeError(f"the values have axes {first.axes} and {v.axes}")

    @property
    def field(self) -> FieldKind:
        return self.values[0].field


@lru_cache(maxsize=64)
def inverse_vandermonde(field: FieldKind, points: Tuple[ScalarType, ...]) -> np.ndarray:
    """
    the matrix that maps values at the points to coefficients, entry [k, i] is the x^k
    coefficient of the i-th Lagrange basis polynomial, built from the barycentric weights
    and the master polynomial prod(x - x_j) by synthetic division
    :param field: FieldKind
    :param points: distinct points
    :return: np.ndarray of shape (len(points), len(points))
    """
    n = len(points)
    if field.tag != FieldTag.PRIME_FIELD:
        # floating point: a backward stable solve beats the expanded master polynomial
        V = np.vander(np.array(points, dtype=field.dtype), n, increasing=True)
        return np.linalg.inv(V)

    p = field.modulus
    xs = [int(x) % p for x in points]
    # master polynomial, master[k] is the x^k coefficient
    master = [1]
    for xj in xs:
        nxt = [0] * (len(master) + 1)
        for k, c in enumerate(master):
            nxt[k + 1] = (nxt[k + 1] + c) % p
            nxt[k] = (nxt[k] - xj * c) % p
        master = nxt

    out = np.empty((n, n), dtype=object)
    for i, xi in enumerate(xs):
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                denom = denom * (xi - xj) % p
        w = field.inverse(denom)
        # master / (x - xi)
        q = [0] * n
        q[n - 1] = master[n]
        for k in range(n - 1, 0, -1):
            q[k - 1] = (master[k] + xi * q[k]) % p
        for k in range(n):
            out[k, i] = q[k] * w % p
    log.debug("built a %dx%d inverse Vandermonde over %s", n, n, field)
    return out


def _check_family(field: FieldKind, points: Sequence[ScalarType]) -> None:
    if field.tag == FieldTag.COMPLEX128:
        for x in points:
            if abs(abs(complex(x)) - 1.0) > UNIT_CIRCLE_TOLERANCE:
                raise PointFamilyError(f"the COMPLEX128 point {x} is not a root of unity")


def interpolate(ev: EvaluationSet) -> List[Tensor]:
    """
    the coefficients c_0..c_d of the unique degree <= d tensor polynomial through the
    first d + 1 points (the later points are ignored), entrywise Lagrange interpolation
    :param ev: EvaluationSet
    :return: List[Tensor]
    """
    field = ev.field
    used = ev.degree + 1
    points = tuple(field.element(x) for x in ev.points[:used])
    _check_family(field, points)
    if field.tag == FieldTag.REAL64 and ev.degree > REAL64_MAX_STABLE_DEGREE:
        log.warning("interpolating degree %d over REAL64, the result may be inaccurate", ev.degree)

    axes = ev.values[0].axes
    labels = [label for label, _ in axes]
    Y = np.stack([v.transpose(labels).flat() for v in ev.values[:used]])
    Y = np.asarray(Y, dtype=field.dtype)
    coeffs = field.dot(inverse_vandermonde(field, points), Y)
    return [Tensor._trusted(axes, row, field) for row in coeffs]


def evaluate(coeffs: Sequence[Tensor], x: ScalarType) -> Tensor:
    """
    the value of a tensor polynomial at x (Horner)
    :param coeffs: c_0..c_d
    :param x: ScalarType
    :return: Tensor
    """
    if not coeffs:
        raise ShapeError("a polynomial needs at least one coefficient")
    field = coeffs[0].field
    labels = coeffs[0].labels
    x = field.element(x)
    acc = coeffs[-1].transpose(labels).data
    for c in reversed(coeffs[:-1]):
        acc = field.add(field.mul(acc, x), c.transpose(labels).data)
    return Tensor._trusted(coeffs[0].axes, acc, field)


def extract_coefficient(coeffs: Sequence[Tensor], k: int) -> Tensor:
    """
    the coefficient of x^k
    :param coeffs: c_0..c_d
    :param k: 0 <= k <= d
    :return: Tensor
    """
    if not 0 <= int(k) < len(coeffs):
        raise CoefficientOutOfRange(f"the exponent {k} is outside 0..{len(coeffs) - 1}")
    return coeffs[int(k)]


def sum_coefficients(coeffs: Sequence[Tensor], ks: Iterable[int]) -> Tensor:
    """
    the entrywise sum of the coefficients of the given exponents
    :param coeffs: c_0..c_d
    :param ks: the exponents
    :return: Tensor
    """
    ks = sorted(set(int(k) for k in ks))
    for k in ks:
        if not 0 <= k < len(coeffs):
            raise CoefficientOutOfRange(f"the exponent {k} is outside 0..{len(coeffs) - 1}")
    if not ks:
        first = coeffs[0]
        return Tensor._trusted(first.axes, first.field.zeros(first.shape), first.field)
    total = coeffs[ks[0]]
    for k in ks[1:]:
        total = total.plus(coeffs[k])
    return total


__all__ = [
    "UNIT_CIRCLE_TOLERANCE",
    "EvaluationSet",
    "inverse_vandermonde",
    "interpolate",
    "evaluate",
    "extract_coefficient",
    "sum_coefficients",
]
