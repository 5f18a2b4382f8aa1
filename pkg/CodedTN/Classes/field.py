# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
the scalar fields that every tensor, encoding and interpolation runs over
"""

from typing import Dict, List, Optional, Sequence, Tuple
import logging
import enum
import math

import numpy as np
from sympy import isprime

from CodedTN.constants import (
    DEFAULT_MODULUS,
    FIELD_REAL64,
    FIELD_COMPLEX128,
    FIELD_PRIME,
)
from CodedTN.exceptions import (
    FieldDivisionByZero,
    EvaluationPointsExhausted,
    InvalidFieldSelector,
    FieldMismatch,
)
from CodedTN.types import Label, ScalarType

log = logging.getLogger(__name__)

# np.einsum only understands single letters
_EINSUM_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


class FieldTag(enum.Enum):
    REAL64 = FIELD_REAL64
    COMPLEX128 = FIELD_COMPLEX128
    PRIME_FIELD = FIELD_PRIME


class FieldKind:
    """
    the interface shared by the three scalar backends, instances are
    immutable values and compare equal when tag and modulus agree

    Methods:
    -----------
    asarray(values):
        it maps numbers into a numpy array of this field
    contract(operands, inputs, output, dims):
        it evaluates a labeled product-sum (einsum semantics)
    inverse(a):
        the multiplicative inverse of a nonzero scalar
    evaluation_points(count):
        count pairwise distinct points for encoding
    """

    tag: FieldTag = FieldTag.REAL64
    dtype = np.float64
    exact: bool = False

    @property
    def modulus(self) -> Optional[int]:
        return None

    @property
    def selector(self) -> str:
        return self.tag.value

    # construction
    def element(self, value: ScalarType) -> ScalarType:
        return self.dtype(value).item()

    def asarray(self, values) -> np.ndarray:
        try:
            return np.array(values, dtype=self.dtype)
        except (TypeError, ValueError) as e:
            raise FieldMismatch(f"values can not be represented in {self}: {e}")

    def zeros(self, shape: Sequence[int]) -> np.ndarray:
        return np.zeros(tuple(shape), dtype=self.dtype)

    def ones(self, shape: Sequence[int]) -> np.ndarray:
        return np.ones(tuple(shape), dtype=self.dtype)

    # arithmetic on arrays, broadcasting like numpy
    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.add(a, b)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.subtract(a, b)

    def mul(self, a: np.ndarray, b) -> np.ndarray:
        return np.multiply(a, b)

    def sum(self, a: np.ndarray, axis=None) -> np.ndarray:
        return np.asarray(np.sum(a, axis=axis), dtype=self.dtype)

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.dot(a, b)

    def contract(
        self,
        operands: Sequence[np.ndarray],
        inputs: Sequence[Sequence[Label]],
        output: Sequence[Label],
    ) -> np.ndarray:
        """
        it multiplies the operands entrywise over the union of their labels and sums
        every label that is not in the output, a label shared by several operands
        is one index variable (hyperedges need no rewiring)
        :param operands: the arrays, axis i of operand t carries inputs[t][i]
        :param inputs: the labels of every operand
        :param output: the labels of the result in the wanted order
        :return: np.ndarray
        """
        letters: Dict[Label, str] = {}
        for labels in list(inputs) + [output]:
            for label in labels:
                if label not in letters:
                    if len(letters) == len(_EINSUM_LETTERS):
                        raise FieldMismatch("too many distinct labels for one contraction step")
                    letters[label] = _EINSUM_LETTERS[len(letters)]
        subscripts = ",".join("".join(letters[l] for l in labels) for labels in inputs)
        subscripts += "->" + "".join(letters[l] for l in output)
        return np.asarray(np.einsum(subscripts, *operands), dtype=self.dtype)

    # scalars
    def power(self, x: ScalarType, e: int) -> ScalarType:
        return x**e

    def inverse(self, a: ScalarType) -> ScalarType:
        if a == 0:
            raise FieldDivisionByZero(f"zero has no inverse in {self}")
        return 1 / a

    def evaluation_points(self, count: int) -> List[ScalarType]:
        # Chebyshev nodes on [-1, 1], an even node count never contains 0
        _check_count(count)
        n = count if count % 2 == 0 else count + 1
        return [math.cos((2 * k + 1) * math.pi / (2 * n)) for k in range(count)]

    def error_metric(
        self, actual: np.ndarray, expected: np.ndarray
    ) -> Tuple[Optional[float], Optional[float], bool]:
        """
        it returns (max absolute error, max relative error, exact equality)
        :param actual: np.ndarray
        :param expected: np.ndarray
        :return: Tuple[Optional[float], Optional[float], bool]
        """
        actual = np.asarray(actual)
        expected = np.asarray(expected)
        exact = actual.shape == expected.shape and bool(np.array_equal(actual, expected))
        if actual.shape != expected.shape:
            return float("inf"), float("inf"), False
        if actual.size == 0:
            return 0.0, 0.0, exact
        diff = float(np.max(np.abs(actual - expected)))
        scale = float(np.max(np.abs(expected)))
        rel = diff / scale if scale > 0 else diff
        return diff, rel, exact

    # value semantics
    def _key(self) -> tuple:
        return self.tag, self.modulus

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldKind) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"

    def __str__(self) -> str:
        return self.selector


class Real64(FieldKind):
    """
    double precision real numbers, the interpolation is only trusted
    up to degree ~20 with Chebyshev points
    """

    tag = FieldTag.REAL64
    dtype = np.float64


class Complex128(FieldKind):
    """
    double precision complex numbers, evaluation points are roots of unity
    so the Vandermonde systems are DFT matrices
    """

    tag = FieldTag.COMPLEX128
    dtype = np.complex128

    def evaluation_points(self, count: int) -> List[ScalarType]:
        _check_count(count)
        # k = 0 gives exactly 1
        return [complex(np.exp(2j * np.pi * k / count)) if k else 1 + 0j for k in range(count)]


class PrimeField(FieldKind):
    """
    the integers modulo a prime, the data are numpy object arrays of python ints
    so the products are exact at any width

    Parameters:
    -----------
    modulus: int
        a prime, by default 2^61 - 1
    """

    tag = FieldTag.PRIME_FIELD
    dtype = object
    exact = True

    __slots__ = ("_modulus",)

    def __init__(self, modulus: int = DEFAULT_MODULUS) -> None:
        modulus = int(modulus)
        if modulus < 2 or not isprime(modulus):
            raise InvalidFieldSelector(f"the modulus {modulus} is not prime")
        self._modulus: int = modulus

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def selector(self) -> str:
        return f"{FIELD_PRIME}:{self._modulus}"

    def _reduce_one(self, value) -> int:
        if isinstance(value, (bool, np.bool_)):
            return int(value)
        if isinstance(value, (int, np.integer)):
            return int(value) % self._modulus
        if isinstance(value, (float, np.floating)) and float(value).is_integer():
            return int(value) % self._modulus
        if isinstance(value, (complex, np.complexfloating)):
            if value.imag == 0 and float(value.real).is_integer():
                return int(value.real) % self._modulus
        raise FieldMismatch(f"{value!r} is not an integer and can not be mapped into {self}")

    def element(self, value: ScalarType) -> int:
        return self._reduce_one(value)

    def asarray(self, values) -> np.ndarray:
        arr = np.asarray(values, dtype=object)
        flat = [self._reduce_one(v) for v in arr.reshape(-1)]
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        return out.reshape(arr.shape)

    def zeros(self, shape: Sequence[int]) -> np.ndarray:
        return np.zeros(tuple(shape), dtype=object)

    def ones(self, shape: Sequence[int]) -> np.ndarray:
        return np.ones(tuple(shape), dtype=object)

    def _wrap(self, value) -> np.ndarray:
        if isinstance(value, np.ndarray):
            return value
        out = np.empty((), dtype=object)
        out[()] = value
        return out

    @staticmethod
    def _obj(value) -> np.ndarray:
        # object dtype keeps Python ints, numpy would cast scalars to int64
        return np.asarray(value, dtype=object)

    def add(self, a, b) -> np.ndarray:
        return self._wrap(np.add(self._obj(a), self._obj(b)) % self._modulus)

    def sub(self, a, b) -> np.ndarray:
        return self._wrap(np.subtract(self._obj(a), self._obj(b)) % self._modulus)

    def mul(self, a, b) -> np.ndarray:
        return self._wrap(np.multiply(self._obj(a), self._obj(b)) % self._modulus)

    def sum(self, a: np.ndarray, axis=None) -> np.ndarray:
        a = np.asarray(a, dtype=object)
        if a.size == 0:
            shape = () if axis is None else np.sum(np.zeros(a.shape), axis=axis).shape
            return np.zeros(shape, dtype=object)
        return self._wrap(np.sum(a, axis=axis) % self._modulus)

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._wrap(np.dot(self._obj(a), self._obj(b)) % self._modulus)

    def contract(
        self,
        operands: Sequence[np.ndarray],
        inputs: Sequence[Sequence[Label]],
        output: Sequence[Label],
    ) -> np.ndarray:
        # broadcast every operand over the union of labels, output labels first
        order: List[Label] = list(output)
        sizes: Dict[Label, int] = {}
        for arr, labels in zip(operands, inputs):
            for label, size in zip(labels, np.shape(arr)):
                sizes[label] = size
                if label not in order:
                    order.append(label)
        position = {label: i for i, label in enumerate(order)}

        acc = None
        for arr, labels in zip(operands, inputs):
            arr = np.asarray(arr, dtype=object)
            perm = sorted(range(len(labels)), key=lambda i: position[labels[i]])
            arr = np.transpose(arr, perm) if perm else arr
            shape = [1] * len(order)
            for i in perm:
                shape[position[labels[i]]] = sizes[labels[i]]
            arr = arr.reshape(shape)
            acc = arr if acc is None else np.multiply(acc, arr) % self._modulus

        if acc is None:
            return self.ones(())
        # an output label that no operand carries can not be produced
        for label in output:
            if label not in sizes:
                raise FieldMismatch(f"output label {label!r} is not carried by any operand")
        acc = np.broadcast_to(acc, tuple(sizes[l] for l in order))
        summed = tuple(range(len(output), len(order)))
        if summed:
            return self.sum(acc, axis=summed)
        return self._wrap(np.array(acc, dtype=object) % self._modulus)

    def power(self, x: int, e: int) -> int:
        return pow(int(x), int(e), self._modulus)

    def inverse(self, a: int) -> int:
        a = int(a) % self._modulus
        if a == 0:
            raise FieldDivisionByZero(f"zero has no inverse in {self}")
        # Fermat's little theorem
        return pow(a, self._modulus - 2, self._modulus)

    def evaluation_points(self, count: int) -> List[int]:
        _check_count(count)
        if count >= self._modulus:
            raise EvaluationPointsExhausted(
                f"{count} distinct nonzero points do not exist in GF({self._modulus})"
            )
        return list(range(1, count + 1))

    def error_metric(
        self, actual: np.ndarray, expected: np.ndarray
    ) -> Tuple[Optional[float], Optional[float], bool]:
        actual = np.asarray(actual, dtype=object)
        expected = np.asarray(expected, dtype=object)
        exact = actual.shape == expected.shape and bool(np.all(actual == expected))
        return None, None, exact

    def __repr__(self) -> str:
        return f"PrimeField({self._modulus})"


def _check_count(count: int) -> None:
    if int(count) < 1:
        raise ValueError(f"the point count must be positive, got {count}")


def parse_field(selector: str) -> FieldKind:
    """
    it builds a field from its selection string: "f64", "c128", "gf" or "gf:<modulus>"
    :param selector: str
    :return: FieldKind
    """
    text = str(selector).strip().lower()
    if text == FIELD_REAL64:
        return Real64()
    if text == FIELD_COMPLEX128:
        return Complex128()
    if text == FIELD_PRIME:
        return PrimeField()
    if text.startswith(FIELD_PRIME + ":"):
        raw = text[len(FIELD_PRIME) + 1 :]
        try:
            modulus = int(raw)
        except ValueError:
            raise InvalidFieldSelector(f"the modulus {raw!r} in {selector!r} is not an integer")
        return PrimeField(modulus)
    raise InvalidFieldSelector(
        f"unknown field {selector!r}, expected one of f64, c128, gf, gf:<modulus>"
    )


def make_evaluation_points(count: int, kind: FieldKind) -> List[ScalarType]:
    """
    it returns count pairwise distinct evaluation points of a field
    REAL64: Chebyshev nodes, COMPLEX128: the count-th roots of unity, PRIME_FIELD: 1..count
    :param count: how many points
    :param kind: the field
    :type count: int
    :type kind: FieldKind
    :return: List[ScalarType]
    """
    return kind.evaluation_points(count)


def field_inverse(a: ScalarType, kind: FieldKind) -> ScalarType:
    """
    the multiplicative inverse of a in the field
    :param a: a nonzero scalar
    :param kind: the field
    :return: ScalarType
    """
    return kind.inverse(a)


__all__ = [
    "FieldTag",
    "FieldKind",
    "Real64",
    "Complex128",
    "PrimeField",
    "parse_field",
    "make_evaluation_points",
    "field_inverse",
]
