# the scalar fields
from CodedTN.Classes.field import FieldTag
from CodedTN.Classes.field import FieldKind
from CodedTN.Classes.field import Real64
from CodedTN.Classes.field import Complex128
from CodedTN.Classes.field import PrimeField

# tensors and networks
from CodedTN.Classes.tensor import Tensor
from CodedTN.Classes.network import Edge
from CodedTN.Classes.network import SlicedIndex
from CodedTN.Classes.network import SlicingPlan
from CodedTN.Classes.network import ValidationReport
from CodedTN.Classes.network import TensorNetwork

# codes
from CodedTN.Classes.coding import CodeKind
from CodedTN.Classes.coding import CodeScheme
from CodedTN.Classes.coding import EncodedNetwork
from CodedTN.Classes.interpolation import EvaluationSet

# the master-worker harness
from CodedTN.Classes.simulator import FailureMode
from CodedTN.Classes.simulator import FailurePattern
from CodedTN.Classes.simulator import WorkerJob
from CodedTN.Classes.simulator import SimulationReport

# operations
from CodedTN.Classes.field import *
from CodedTN.Classes.tensor import *
from CodedTN.Classes.network import *
from CodedTN.Classes.coding import *
from CodedTN.Classes.interpolation import *
from CodedTN.Classes.simulator import *
from CodedTN.Classes.oracle import *
from CodedTN.Classes.examples import *
from CodedTN.Classes.benchmarks import *
