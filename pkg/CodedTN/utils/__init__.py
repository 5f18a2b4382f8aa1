from CodedTN.utils.formulas import *
from CodedTN.utils.kernels import *
from CodedTN.utils.timing import *
