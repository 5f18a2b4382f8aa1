"""
hot loops of the brute force oracle, jitted with numba when it is installed
"""

import logging

import numpy as np

from CodedTN.utils._numba_utils import USE_NUMBA, njit

log = logging.getLogger(__name__)


@njit
def _offsets_loop(start, stop, dims, strides):
    n = stop - start
    out = np.zeros(n, np.int64)
    k = dims.shape[0]
    for t in range(n):
        g = start + t
        off = 0
        for a in range(k - 1, -1, -1):
            off += (g % dims[a]) * strides[a]
            g //= dims[a]
        out[t] = off
    return out


def _offsets_numpy(start: int, stop: int, dims: np.ndarray, strides: np.ndarray) -> np.ndarray:
    g = np.arange(start, stop, dtype=np.int64)
    out = np.zeros(g.shape, dtype=np.int64)
    for a in range(dims.shape[0] - 1, -1, -1):
        out += (g % dims[a]) * strides[a]
        g //= dims[a]
    return out


def assignment_offsets(start: int, stop: int, dims: np.ndarray, strides: np.ndarray) -> np.ndarray:
    """
    for every joint assignment number g in [start, stop) (row-major over dims, the
    first label is the most significant digit) it returns sum_a digit_a(g) * strides[a],
    which is the flat position inside a tensor whose row-major strides are given
    (0 for the labels the tensor does not carry)
    :param start: the first assignment number
    :param stop: one past the last assignment number
    :param dims: int64 array with the dimension of every label
    :param strides: int64 array with the tensor stride of every label
    :type start: int
    :type stop: int
    :type dims: np.ndarray
    :type strides: np.ndarray
    :return: np.ndarray of int64
    """
    dims = np.ascontiguousarray(dims, dtype=np.int64)
    strides = np.ascontiguousarray(strides, dtype=np.int64)
    if USE_NUMBA:
        return _offsets_loop(np.int64(start), np.int64(stop), dims, strides)
    return _offsets_numpy(start, stop, dims, strides)


def build_numba_kernels(debug: bool = False) -> None:
    """
    it compiles the jitted kernels once so the first real call is not slowed down
    :param debug: log the build
    :return: None
    """
    if not USE_NUMBA:
        if debug:
            log.info("numba is not installed, the kernels run in numpy")
        return
    if debug:
        log.info("building the numba kernels")
    assignment_offsets(0, 4, np.array([2, 2], np.int64), np.array([2, 1], np.int64))
    if debug:
        log.info("finished building the numba kernels")


__all__ = ["assignment_offsets", "build_numba_kernels"]
