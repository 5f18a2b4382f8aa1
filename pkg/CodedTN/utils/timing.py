"""
small wall-clock helpers
"""

from typing import Callable, Sequence
import time

import numpy as np


class Timer:
    """
    a context manager that stores the elapsed seconds in .elapsed
    """

    __slots__ = "start", "elapsed"

    def __init__(self) -> None:
        self.start: float = 0.0
        self.elapsed: float = 0.0

    def __enter__(self) -> "Timer":
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed = time.perf_counter() - self.start


def best_of(fn: Callable[[], object], repeats: int = 5) -> float:
    """
    the fastest of several runs, in seconds
    :param fn: the function to time
    :param repeats: how many runs
    :return: float
    """
    best = float("inf")
    for _ in range(max(1, repeats)):
        with Timer() as t:
            fn()
        best = min(best, t.elapsed)
    return best


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """
    the least squares slope of log(ys) against log(xs)
    """
    xs = np.log(np.asarray(xs, dtype=np.float64))
    ys = np.log(np.maximum(np.asarray(ys, dtype=np.float64), 1e-12))
    return float(np.polyfit(xs, ys, 1)[0])


__all__ = ["Timer", "best_of", "loglog_slope"]
