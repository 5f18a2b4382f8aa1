# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
checked integer formulas that the coding module is built from
"""

from typing import Iterable

from CodedTN.constants import INT64_MAX
from CodedTN.exceptions import IntegerOverflow


def checked(value: int, what: str = "value") -> int:
    """
    it raises when a value does not fit in a signed 64 bit integer
    :param value: the value to check
    :param what: a name for the error message
    :type value: int
    :type what: str
    :return: int
    """
    if value > INT64_MAX or value < -INT64_MAX - 1:
        raise IntegerOverflow(f"{what} {value} does not fit in 64 bits")
    return value


def checked_mul(a: int, b: int, what: str = "product") -> int:
    return checked(a * b, what)


def checked_add(a: int, b: int, what: str = "sum") -> int:
    return checked(a + b, what)


def checked_prod(values: Iterable[int], what: str = "product") -> int:
    """
    the product of the values, checked after every step (the empty product is 1)
    :param values: Iterable[int]
    :param what: str
    :return: int
    """
    result = 1
    for v in values:
        result = checked_mul(result, v, what)
    return result


def geometric_count(m: int, L: int) -> int:
    """
    it returns (m^L - 1) / (m - 1) = 1 + m + ... + m^(L-1)
    :param m: the node count of the index (m >= 2)
    :param L: the dimension of the index (L >= 1)
    :type m: int
    :type L: int
    :return: int
    """
    if m < 2 or L < 1:
        raise ValueError(f"geometric_count needs m >= 2 and L >= 1, got m={m}, L={L}")
    return checked((m**L - 1) // (m - 1), f"(m^L - 1)/(m - 1) for m={m}, L={L}")


def geometric_offset(m: int, s: int) -> int:
    """
    it returns (m^s - m) / (m - 1) = m + m^2 + ... + m^(s-1), the exponent at which
    m copies of slice s of one hyperedge meet
    :param m: int
    :param s: the 1-based slice value
    :return: int
    """
    if m < 2 or s < 1:
        raise ValueError(f"geometric_offset needs m >= 2 and s >= 1, got m={m}, s={s}")
    return checked((m**s - m) // (m - 1), f"(m^s - m)/(m - 1) for m={m}, s={s}")


__all__ = [
    "checked",
    "checked_mul",
    "checked_add",
    "checked_prod",
    "geometric_count",
    "geometric_offset",
]
