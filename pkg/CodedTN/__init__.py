__author__ = "emc2356"
__version__ = "0.1.0"
__name__ = "CodedTN"  # useful for the ``setup.py``
__copyright__ = "2022, Emc2356"


# import the base classes
from CodedTN.Classes import FieldKind
from CodedTN.Classes import Real64
from CodedTN.Classes import Complex128
from CodedTN.Classes import PrimeField
from CodedTN.Classes import Tensor
from CodedTN.Classes import TensorNetwork
from CodedTN.Classes import SlicingPlan
from CodedTN.Classes import CodeKind
from CodedTN.Classes import CodeScheme
from CodedTN.Classes import FailurePattern
from CodedTN.Classes import SimulationReport


# constants and functions that are useful with CodedTN
from CodedTN.exceptions import CodedTNException as error
from CodedTN.constants import *
from CodedTN.Classes import *
from CodedTN.utils import *
from CodedTN.types import *

import logging

log = logging.getLogger(__name__)


def init(debug: bool = False) -> int:
    """
    it builds the optional numba kernels
    :param debug: log what happens
    :return: int the number of modules that failed to build
    """
    failed = 0

    if debug:
        try:
            import numba

            del numba
        except ImportError:
            log.info("numba was not found so no module will be built")

    try:
        if debug:
            log.info("building the oracle kernels")

        from CodedTN.utils.kernels import build_numba_kernels

        build_numba_kernels(debug)

        if debug:
            log.info("successfully built the oracle kernels")
    except Exception:
        failed += 1
        if debug:
            log.exception("failed to build the oracle kernels")

    return failed
