"""
numba helpers, everything here degrades to plain python when numba is missing
"""

from typing import Callable, Optional
import logging

log = logging.getLogger(__name__)

USE_NUMBA = False

try:
    # check if the user has numba installed in the current env
    import numba as nb

    USE_NUMBA = True
except ImportError:
    nb = None


def njit(func: Optional[Callable] = None, **kwargs):
    """
    jit a function with numba when it is available, works both as
    ``@njit`` and ``@njit(parallel=True)``
    :param func: the function when it is used without arguments
    :param kwargs: extra options for numba.njit (nogil and fastmath default to True)
    :return: the compiled function or the function itself
    """
    kwargs.setdefault("nogil", True)
    kwargs.setdefault("fastmath", True)

    def decorate(fn: Callable) -> Callable:
        if not USE_NUMBA:
            return fn
        return nb.njit(**kwargs)(fn)

    if func is not None:
        return decorate(func)
    return decorate


__all__ = ["USE_NUMBA", "njit"]
