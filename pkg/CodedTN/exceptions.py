# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
exceptions for CodedTN
"""


class CodedTNException(Exception):
    """
    the base exception for the rest of the exception
    that are used for this package
    """

    def __init__(self, message: str):
        self.message = str(message)
        if not self.message.endswith("."):
            self.message += "."
        super().__init__(self.message)

    def __str__(self):
        return str(self.message)

    def __repr__(self):
        return f"{type(self).__name__}({self.message!r})"


# scalar field
class FieldDivisionByZero(CodedTNException, ZeroDivisionError):
    """
    this exception is raised when zero is inverted
    in any of the field backends
    """


class EvaluationPointsExhausted(CodedTNException):
    """
    this exception is raised when more distinct evaluation
    points are requested than the field can provide
    """


class InvalidFieldSelector(CodedTNException):
    """
    this exception is raised when a field selection string
    like "gf:<modulus>" can not be parsed or the modulus is not prime
    """


class FieldMismatch(CodedTNException):
    """
    this exception is raised when values from two different fields meet
    or when data can not be represented in the requested field
    """


class PointFamilyError(CodedTNException):
    """
    this exception is raised when complex evaluation points
    are not taken from the roots of unity
    """


# tensors
class UnknownIndex(CodedTNException, KeyError):
    """
    this exception is raised when an index label is not
    an axis of a tensor or an edge of a network
    """


class SliceValueOutOfRange(CodedTNException, IndexError):
    """
    this exception is raised when a slice value is outside 1..L
    """


class ShapeError(CodedTNException):
    """
    this exception is raised when the data of a tensor
    does not match the dimensions of its axes
    """


class DimensionMismatch(CodedTNException):
    """
    this exception is raised when the same index has
    different dimensions on different tensors
    """


class DuplicateIndex(CodedTNException):
    """
    this exception is raised when a label appears twice where it must be unique
    """


# networks
class InvalidNetwork(CodedTNException):
    """
    this exception is raised when an operation needs a valid network
    and plan, it carries the validation report
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InvalidOrder(CodedTNException):
    """
    this exception is raised when a contraction order omits
    or repeats a closed edge
    """


class CorruptedNetwork(CodedTNException):
    """
    this exception is raised when the internal state of a network
    is inconsistent in the middle of a contraction
    """


# coding
class SchemeNotApplicable(CodedTNException):
    """
    this exception is raised when a code scheme is used on a
    plan that does not satisfy its structural preconditions
    """


class PlanTooLarge(CodedTNException):
    """
    this exception is raised when the degree of a coded plan
    exceeds the supported bound
    """


class IntegerOverflow(CodedTNException, OverflowError):
    """
    this exception is raised when an exponent or worker count
    does not fit in a signed 64 bit integer
    """


class SchemeNotCoded(CodedTNException):
    """
    this exception is raised when a coded-only operation
    is asked about naive replication
    """


# interpolation
class DuplicatePoints(CodedTNException):
    """
    this exception is raised when the evaluation points are not pairwise distinct
    """


class InsufficientSurvivors(CodedTNException):
    """
    this exception is raised when fewer than d+1 evaluations are available
    """


class CoefficientOutOfRange(CodedTNException, IndexError):
    """
    this exception is raised when a coefficient outside 0..d is requested
    """


# simulator and oracle
class ResilienceExceeded(CodedTNException):
    """
    this exception is raised when a group of workers has too few survivors to decode
    """

    def __init__(self, message: str, group=None):
        super().__init__(message)
        self.group = group


class GuardExceeded(CodedTNException):
    """
    this exception is raised when a brute force search
    would be larger than its configured guard
    """


# input
class SpecFormatError(CodedTNException):
    """
    this exception is raised when a network spec file
    is malformed, the message names the offending field
    """


class ConfigError(CodedTNException):
    """
    this exception is raised when an environment setting can not be parsed
    """


__all__ = [
    "CodedTNException",
    "FieldDivisionByZero",
    "EvaluationPointsExhausted",
    "InvalidFieldSelector",
    "FieldMismatch",
    "PointFamilyError",
    "UnknownIndex",
    "SliceValueOutOfRange",
    "ShapeError",
    "DimensionMismatch",
    "DuplicateIndex",
    "InvalidNetwork",
    "InvalidOrder",
    "CorruptedNetwork",
    "SchemeNotApplicable",
    "PlanTooLarge",
    "IntegerOverflow",
    "SchemeNotCoded",
    "DuplicatePoints",
    "InsufficientSurvivors",
    "CoefficientOutOfRange",
    "ResilienceExceeded",
    "GuardExceeded",
    "SpecFormatError",
    "ConfigError",
]
